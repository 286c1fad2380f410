#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "gridmask/mask.hpp"
#include "gridmask/rng.hpp"

namespace gridmask {

// One sampled mask configuration. The mask tiles the plane with d-by-d units;
// inside a unit the first `kept_band_width(r, d)` rows and columns are kept and
// the remaining square is dropped. (delta_y, delta_x) shift the lattice and
// angle_deg rotates the rendered field.
struct GridSpec {
  double r = 0.5;
  int d = 2;
  int delta_x = 0;
  int delta_y = 0;
  double angle_deg = 0.0;

  void validate() const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("GridSpec: r must be in [0,1]");
    if (d < 1) throw std::invalid_argument("GridSpec: d must be >= 1");
    if (delta_x < 0 || delta_x > d - 1)
      throw std::invalid_argument("GridSpec: delta_x must be in [0, d-1]");
    if (delta_y < 0 || delta_y > d - 1)
      throw std::invalid_argument("GridSpec: delta_y must be in [0, d-1]");
    if (!(angle_deg >= 0.0 && angle_deg < 360.0))
      throw std::invalid_argument("GridSpec: angle_deg must be in [0, 360)");
  }
};

// Sampling ranges for GridSpec.
struct GridConfig {
  double r = 0.6;
  int d_min = 96;
  int d_max = 224;
  bool rotate = false;

  void validate() const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("GridConfig: r must be in [0,1]");
    if (d_min < 1 || d_min > d_max)
      throw std::invalid_argument("GridConfig: need 1 <= d_min <= d_max");
  }
};

// Kept-band width ceil(r*d), clamped to [0, d]. The 1e-9 backoff keeps products
// that are integral in exact arithmetic (0.2 * 5 and friends) from rounding up
// through float dirt.
inline int kept_band_width(double r, int d) {
  const int k = static_cast<int>(std::ceil(r * static_cast<double>(d) - 1e-9));
  return std::clamp(k, 0, d);
}

inline int dropped_square_side(double r, int d) { return d - kept_band_width(r, d); }

namespace detail {

inline int phase(int v, int d) {
  const int m = v % d;
  return m < 0 ? m + d : m;
}

inline int floor_div(int a, int b) {
  const int q = a / b;
  const int rem = a % b;
  return (rem != 0 && ((rem < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace detail

// Draw order is fixed: d, delta_x, delta_y, then angle when rotation is on.
inline GridSpec sample_grid_spec(SeedStream& rng, const GridConfig& config) {
  config.validate();
  GridSpec spec;
  spec.r = config.r;
  spec.d = static_cast<int>(rng.uniform_int(config.d_min, config.d_max));
  spec.delta_x = static_cast<int>(rng.uniform_int(0, spec.d - 1));
  spec.delta_y = static_cast<int>(rng.uniform_int(0, spec.d - 1));
  spec.angle_deg = config.rotate ? rng.uniform_real(0.0, 360.0) : 0.0;
  return spec;
}

// Axis-aligned renderer. Cell (i,j) is kept iff its row phase or its column
// phase lands inside the kept band:
//   ((i - delta_y) mod d) < kept  OR  ((j - delta_x) mod d) < kept.
// Dropped cells form squares of side d - kept tiled with period d.
inline Mask render_grid_mask(const GridSpec& spec, int height, int width) {
  spec.validate();
  if (spec.angle_deg != 0.0)
    throw std::logic_error("render_grid_mask: nonzero angle; use render_rotated_grid_mask");
  Mask mask(height, width, 0);
  const int d = spec.d;
  const int band = kept_band_width(spec.r, d);
  std::vector<std::uint8_t> col_row(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j)
    col_row[j] = detail::phase(j - spec.delta_x, d) < band ? 1 : 0;
  const std::vector<std::uint8_t> ones(static_cast<std::size_t>(width), 1);
  for (int i = 0; i < height; ++i) {
    const bool keep_row = detail::phase(i - spec.delta_y, d) < band;
    std::memcpy(&mask.cells[mask.idx(i, 0)], keep_row ? ones.data() : col_row.data(),
                static_cast<std::size_t>(width));
  }
  return mask;
}

// Side of the square field that covers any rotation of a height-by-width crop.
inline int oversized_side(int height, int width) {
  return static_cast<int>(std::ceil(std::hypot(static_cast<double>(height),
                                               static_cast<double>(width))));
}

// Renders an oversized axis-aligned field, rotates it about its center with
// nearest-neighbor sampling, and center-crops to height-by-width. With
// angle 0 this is exactly the crop of the unrotated oversized field.
inline Mask render_rotated_grid_mask(const GridSpec& spec, int height, int width) {
  spec.validate();
  const int side = oversized_side(height, width);
  GridSpec flat = spec;
  flat.angle_deg = 0.0;
  const Mask big = render_grid_mask(flat, side, side);
  return center_crop(rotate_nearest(big, spec.angle_deg), height, width);
}

// Random-unit variant: every unit of the lattice drops its square independently
// with probability p_u. Units are visited row-major over unit indices (border
// units included), one Bernoulli draw per unit.
inline Mask render_random_grid_mask(const GridSpec& spec, int height, int width, double p_u,
                                    SeedStream& rng) {
  spec.validate();
  if (!(p_u >= 0.0 && p_u <= 1.0))
    throw std::invalid_argument("render_random_grid_mask: p_u must be in [0,1]");
  if (spec.angle_deg != 0.0)
    throw std::logic_error("render_random_grid_mask: nonzero angle is not supported here");
  Mask mask(height, width, 1);
  const int d = spec.d;
  const int band = kept_band_width(spec.r, d);
  const int u_min = detail::floor_div(-spec.delta_y, d);
  const int u_max = detail::floor_div(height - 1 - spec.delta_y, d);
  const int v_min = detail::floor_div(-spec.delta_x, d);
  const int v_max = detail::floor_div(width - 1 - spec.delta_x, d);
  for (int u = u_min; u <= u_max; ++u) {
    const int r0 = std::max(spec.delta_y + u * d + band, 0);
    const int r1 = std::min(spec.delta_y + u * d + d, height);
    for (int v = v_min; v <= v_max; ++v) {
      const bool drop = rng.bernoulli(p_u);
      if (!drop) continue;
      const int c0 = std::max(spec.delta_x + v * d + band, 0);
      const int c1 = std::min(spec.delta_x + v * d + d, width);
      if (c1 <= c0 || r1 <= r0) continue;
      for (int i = r0; i < r1; ++i)
        std::memset(&mask.cells[mask.idx(i, c0)], 0, static_cast<std::size_t>(c1 - c0));
    }
  }
  return mask;
}

}  // namespace gridmask
