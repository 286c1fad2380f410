#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "gridmask/mask.hpp"

namespace gridmask {

// Row-major H x W x C sample block; T is uint8_t for raw images and float for
// normalized ones.
template <typename T>
struct ImageTensor {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<T> samples;

  ImageTensor() = default;
  ImageTensor(int h, int w, int c, T value = T{})
      : height(h), width(w), channels(c),
        samples(static_cast<std::size_t>(h) * w * c, value) {
    validate();
  }

  std::size_t idx(int i, int j, int c) const {
    return (static_cast<std::size_t>(i) * width + j) * channels + c;
  }
  T& at(int i, int j, int c) { return samples[idx(i, j, c)]; }
  const T& at(int i, int j, int c) const { return samples[idx(i, j, c)]; }

  void validate() const {
    if (height < 1 || width < 1 || channels < 1)
      throw std::invalid_argument("ImageTensor: dimensions must be positive");
    if (samples.size() != static_cast<std::size_t>(height) * width * channels)
      throw std::invalid_argument("ImageTensor: sample count does not match dimensions");
  }

  bool operator==(const ImageTensor&) const = default;
};

using ImageU8 = ImageTensor<std::uint8_t>;
using ImageF32 = ImageTensor<float>;

// x~ = x * M with a fill value on dropped cells; fill 0 is the masked-image
// definition on normalized data. Input is left untouched.
template <typename T>
ImageTensor<T> apply_mask(const ImageTensor<T>& image, const Mask& mask,
                          const std::vector<T>& channel_fill) {
  image.validate();
  if (mask.height != image.height || mask.width != image.width)
    throw std::invalid_argument("apply_mask: mask and image dimensions differ");
  if (channel_fill.size() != static_cast<std::size_t>(image.channels))
    throw std::invalid_argument("apply_mask: need one fill value per channel");
  ImageTensor<T> out = image;
  for (int i = 0; i < image.height; ++i)
    for (int j = 0; j < image.width; ++j) {
      if (mask(i, j)) continue;
      for (int c = 0; c < image.channels; ++c) out.at(i, j, c) = channel_fill[c];
    }
  return out;
}

template <typename T>
ImageTensor<T> apply_mask(const ImageTensor<T>& image, const Mask& mask, T fill = T{}) {
  image.validate();
  return apply_mask(image, mask,
                    std::vector<T>(static_cast<std::size_t>(image.channels), fill));
}

// Per-channel sample means, rounded back to T for integral sample types.
template <typename T>
std::vector<T> channel_means(const ImageTensor<T>& image) {
  image.validate();
  std::vector<double> sums(static_cast<std::size_t>(image.channels), 0.0);
  for (int i = 0; i < image.height; ++i)
    for (int j = 0; j < image.width; ++j)
      for (int c = 0; c < image.channels; ++c) sums[c] += static_cast<double>(image.at(i, j, c));
  const double n = static_cast<double>(image.height) * image.width;
  std::vector<T> means(static_cast<std::size_t>(image.channels));
  for (int c = 0; c < image.channels; ++c) {
    const double m = sums[c] / n;
    if constexpr (std::is_integral_v<T>)
      means[c] = static_cast<T>(std::llround(m));
    else
      means[c] = static_cast<T>(m);
  }
  return means;
}

// 8-bit <-> normalized float maps: u8 k maps to k/255; floats map back by
// round(255 * clamp(v, 0, 1)).
inline ImageF32 to_float(const ImageU8& image) {
  image.validate();
  ImageF32 out(image.height, image.width, image.channels);
  for (std::size_t s = 0; s < image.samples.size(); ++s)
    out.samples[s] = static_cast<float>(image.samples[s]) / 255.0f;
  return out;
}

inline ImageU8 to_u8(const ImageF32& image) {
  image.validate();
  ImageU8 out(image.height, image.width, image.channels);
  for (std::size_t s = 0; s < image.samples.size(); ++s) {
    const float v = std::min(1.0f, std::max(0.0f, image.samples[s]));
    out.samples[s] = static_cast<std::uint8_t>(std::lround(255.0f * v));
  }
  return out;
}

}  // namespace gridmask
