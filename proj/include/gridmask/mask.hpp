#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gridmask {

// Binary occlusion field, row-major. 1 = keep the pixel, 0 = drop it.
struct Mask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> cells;

  Mask() = default;

  Mask(int h, int w, std::uint8_t value = 1) : height(h), width(w) {
    if (h < 1 || w < 1) throw std::invalid_argument("Mask: dimensions must be positive");
    cells.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), value);
  }

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(j);
  }

  std::uint8_t operator()(int i, int j) const { return cells[idx(i, j)]; }
  std::uint8_t& operator()(int i, int j) { return cells[idx(i, j)]; }

  std::int64_t size() const { return static_cast<std::int64_t>(height) * width; }

  bool operator==(const Mask&) const = default;
};

inline std::int64_t kept_cells(const Mask& mask) {
  std::int64_t sum = 0;
  for (auto v : mask.cells) sum += v;
  return sum;
}

// Fraction of kept cells.
inline double keep_ratio(const Mask& mask) {
  if (mask.size() <= 0) throw std::invalid_argument("keep_ratio: empty mask");
  return static_cast<double>(kept_cells(mask)) / static_cast<double>(mask.size());
}

// Flip every cell; keep becomes drop and vice versa.
inline Mask reverse_mask(Mask mask) {
  for (auto& v : mask.cells) v = static_cast<std::uint8_t>(1 - v);
  return mask;
}

inline Mask center_crop(const Mask& src, int height, int width) {
  if (height < 1 || width < 1 || height > src.height || width > src.width)
    throw std::invalid_argument("center_crop: crop must fit inside the source");
  const int off_i = (src.height - height) / 2;
  const int off_j = (src.width - width) / 2;
  Mask out(height, width, 0);
  for (int i = 0; i < height; ++i)
    std::copy_n(&src.cells[src.idx(i + off_i, off_j)], width, &out.cells[out.idx(i, 0)]);
  return out;
}

// Nearest-neighbor rotation about the pixel-center of the field. Source
// lookups are clamped to the field; angle 0 is the identity byte-for-byte.
inline Mask rotate_nearest(const Mask& src, double angle_deg) {
  if (angle_deg == 0.0) return src;
  const double rad = angle_deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double ci = (src.height - 1) / 2.0;
  const double cj = (src.width - 1) / 2.0;
  Mask out(src.height, src.width, 0);
  for (int i = 0; i < src.height; ++i) {
    const double di = i - ci;
    for (int j = 0; j < src.width; ++j) {
      const double dj = j - cj;
      const long si = std::lround(ci + (di * c - dj * s));
      const long sj = std::lround(cj + (di * s + dj * c));
      const long ki = std::clamp<long>(si, 0, src.height - 1);
      const long kj = std::clamp<long>(sj, 0, src.width - 1);
      out.cells[out.idx(i, j)] = src.cells[src.idx(static_cast<int>(ki), static_cast<int>(kj))];
    }
  }
  return out;
}

}  // namespace gridmask
