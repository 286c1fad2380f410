#pragma once

#include <png.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridmask/image.hpp"
#include "gridmask/mask.hpp"

namespace gridmask {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct file_not_found : io_error {
  explicit file_not_found(const std::string& path) : io_error("file not found: " + path) {}
};
struct unsupported_format : io_error {
  using io_error::io_error;
};
struct corrupt_data : io_error {
  using io_error::io_error;
};

namespace detail {

inline std::string read_file_bytes(const std::string& path) {
  if (!std::filesystem::exists(path)) throw file_not_found(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("read failed: " + path);
  return data;
}

// Locale-proof integer text; ostream integer output honors the global locale.
template <typename Int>
std::string format_int(Int value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("integer formatting failed");
  return std::string(buf, end);
}

inline bool is_pnm_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Whitespace- and comment-tolerant header tokenizer for binary PNM.
struct PnmCursor {
  const std::string& data;
  std::size_t pos = 0;

  std::string next_token(const std::string& path) {
    for (;;) {
      while (pos < data.size() && is_pnm_space(data[pos])) ++pos;
      if (pos < data.size() && data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < data.size() && !is_pnm_space(data[pos]) && data[pos] != '#') ++pos;
    if (pos == start) throw corrupt_data("truncated header: " + path);
    return data.substr(start, pos - start);
  }

  int next_int(const std::string& path) {
    const std::string token = next_token(path);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size())
      throw corrupt_data("bad header number '" + token + "': " + path);
    return value;
  }
};

inline ImageU8 load_pnm(const std::string& data, const std::string& path) {
  PnmCursor cursor{data};
  const std::string magic = cursor.next_token(path);
  int channels = 0;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else throw unsupported_format("not a binary PGM/PPM: " + path);
  const int width = cursor.next_int(path);
  const int height = cursor.next_int(path);
  const int maxval = cursor.next_int(path);
  if (width < 1 || height < 1) throw corrupt_data("bad dimensions: " + path);
  if (maxval > 255) throw unsupported_format("16-bit PNM not supported: " + path);
  if (maxval < 1) throw corrupt_data("bad maxval: " + path);
  if (cursor.pos >= data.size() || !is_pnm_space(data[cursor.pos]))
    throw corrupt_data("missing raster separator: " + path);
  ++cursor.pos;
  const std::size_t need =
      static_cast<std::size_t>(width) * height * static_cast<std::size_t>(channels);
  if (data.size() - cursor.pos < need) throw corrupt_data("truncated raster: " + path);
  ImageU8 image(height, width, channels);
  std::copy_n(reinterpret_cast<const std::uint8_t*>(data.data()) + cursor.pos, need,
              image.samples.data());
  return image;
}

inline ImageU8 load_png(const std::string& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    const std::string message = png.message;
    png_image_free(&png);
    throw corrupt_data("png read failed: " + path + " (" + message + ")");
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  ImageU8 image(static_cast<int>(png.height), static_cast<int>(png.width), color ? 3 : 1);
  png_color background{0, 0, 0};  // alpha, if any, composites onto black
  if (!png_image_finish_read(&png, &background, image.samples.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw corrupt_data("png decode failed: " + path + " (" + message + ")");
  }
  return image;
}

inline void save_png(const ImageU8& image, const std::string& path) {
  if (image.channels != 1 && image.channels != 3)
    throw unsupported_format("png writer needs 1 or 3 channels");
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.samples.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw io_error("png write failed: " + path + " (" + message + ")");
  }
}

inline void save_pnm(const ImageU8& image, const std::string& path) {
  if (image.channels != 1 && image.channels != 3)
    throw unsupported_format("pnm writer needs 1 or 3 channels");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << (image.channels == 3 ? "P6" : "P5") << '\n'
      << format_int(image.width) << ' ' << format_int(image.height) << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.samples.data()),
            static_cast<std::streamsize>(image.samples.size()));
  if (!out) throw io_error("write failed: " + path);
}

inline std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

}  // namespace detail

// Loads a PNG or binary PGM/PPM as 8-bit samples, sniffing the format from
// the leading bytes. Gray files come back with 1 channel, color with 3.
inline ImageU8 load_image(const std::string& path) {
  const std::string data = detail::read_file_bytes(path);
  static const unsigned char png_sig[8] = {137, 'P', 'N', 'G', '\r', '\n', 26, '\n'};
  if (data.size() >= 8 && std::equal(png_sig, png_sig + 8, data.data(),
                                     [](unsigned char a, char b) {
                                       return a == static_cast<unsigned char>(b);
                                     }))
    return detail::load_png(path);
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '5' || data[1] == '6'))
    return detail::load_pnm(data, path);
  if (data.size() < 2) throw corrupt_data("file too short: " + path);
  throw unsupported_format("unrecognized image format: " + path);
}

// Lossless save; the container is chosen by extension (.png, .pgm for 1
// channel, .ppm for 3).
inline void save_image(const ImageU8& image, const std::string& path) {
  image.validate();
  const std::string ext = detail::lower_extension(path);
  if (ext == ".png") {
    detail::save_png(image, path);
  } else if (ext == ".pgm") {
    if (image.channels != 1) throw unsupported_format(".pgm requires a 1-channel image");
    detail::save_pnm(image, path);
  } else if (ext == ".ppm") {
    if (image.channels != 3) throw unsupported_format(".ppm requires a 3-channel image");
    detail::save_pnm(image, path);
  } else {
    throw unsupported_format("unknown image extension: " + path);
  }
}

// Normalized tensors are mapped to 8 bits by round(255 * clamp(v, 0, 1)).
inline void save_image(const ImageF32& image, const std::string& path) {
  save_image(to_u8(image), path);
}

// Kept cells render gray (128), dropped cells black.
inline ImageU8 render_mask_preview(const Mask& mask) {
  ImageU8 image(mask.height, mask.width, 1);
  for (std::size_t s = 0; s < mask.cells.size(); ++s)
    image.samples[s] = mask.cells[s] ? 128 : 0;
  return image;
}

// A pixel counts as kept when any channel is nonzero; inverse of the preview.
inline Mask image_to_mask(const ImageU8& image) {
  image.validate();
  Mask mask(image.height, image.width, 0);
  for (int i = 0; i < image.height; ++i)
    for (int j = 0; j < image.width; ++j)
      for (int c = 0; c < image.channels; ++c)
        if (image.at(i, j, c) != 0) {
          mask.cells[mask.idx(i, j)] = 1;
          break;
        }
  return mask;
}

struct StatsRow {
  std::string method;
  int x = 0;
  double p_fail = 0.0;
  double p_removed = 0.0;
  double p_reserved = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Locale-independent fixed 6-decimal formatting, byte-stable across runs.
inline std::string format_ratio(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) throw io_error("ratio formatting failed");
  return std::string(buf, end);
}

}  // namespace detail

inline void write_stats_csv(const std::vector<StatsRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << "method,x,p_fail,p_removed,p_reserved,trials,seed\n";
  for (const StatsRow& row : rows) {
    out << row.method << ',' << detail::format_int(row.x) << ','
        << detail::format_ratio(row.p_fail) << ',' << detail::format_ratio(row.p_removed) << ','
        << detail::format_ratio(row.p_reserved) << ',' << detail::format_int(row.trials) << ','
        << detail::format_int(row.seed) << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace gridmask
