#pragma once

// Mask generators for the comparison methods: Cutout (single square),
// multi-region Cutout (squares until a keep target), Hide-and-Seek
// (grid-patch dropping), Random Erasing (one sampled rectangle).

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "gridmask/mask.hpp"
#include "gridmask/rng.hpp"

namespace gridmask {

struct CutoutParams {
  int side = 0;

  void validate() const {
    if (side < 0) throw std::invalid_argument("CutoutParams: side must be >= 0");
  }
};

struct HasParams {
  int cell = 1;
  double p_hide = 0.0;

  void validate() const {
    if (cell < 1) throw std::invalid_argument("HasParams: cell must be >= 1");
    if (!(p_hide >= 0.0 && p_hide <= 1.0))
      throw std::invalid_argument("HasParams: p_hide must be in [0,1]");
  }
};

namespace detail {

// Zeroes the square of edge `side` centered at (row, col), clipped to the
// image. Returns the number of cells that were 1 before the call.
inline long zero_square(Mask& mask, int row, int col, int side) {
  const int top = row - side / 2;
  const int left = col - side / 2;
  const int r0 = std::max(top, 0);
  const int r1 = std::min(top + side, mask.height);
  const int c0 = std::max(left, 0);
  const int c1 = std::min(left + side, mask.width);
  long fresh = 0;
  for (int i = r0; i < r1; ++i) {
    std::uint8_t* cells = &mask.cells[mask.idx(i, c0)];
    for (int j = 0; j < c1 - c0; ++j) {
      fresh += cells[j];
      cells[j] = 0;
    }
  }
  return fresh;
}

}  // namespace detail

// One square of edge params.side, center uniform over the image, clipped at
// the borders. Draw order: row, col.
inline Mask cutout_mask(SeedStream& rng, int height, int width, const CutoutParams& params) {
  params.validate();
  Mask mask(height, width, 1);
  const int row = static_cast<int>(rng.uniform_int(0, height - 1));
  const int col = static_cast<int>(rng.uniform_int(0, width - 1));
  if (params.side > 0) detail::zero_square(mask, row, col, params.side);
  return mask;
}

// Drops squares (edge uniform in [side_min, side_max], center uniform,
// clipped) until keep_ratio <= target_keep. Draw order per round: side, row,
// col. A zero-progress configuration trips the iteration cap.
inline Mask multi_cutout_mask(SeedStream& rng, int height, int width, int side_min, int side_max,
                              double target_keep) {
  if (side_min < 0 || side_min > side_max)
    throw std::invalid_argument("multi_cutout_mask: need 0 <= side_min <= side_max");
  if (!(target_keep > 0.0 && target_keep <= 1.0))
    throw std::invalid_argument("multi_cutout_mask: target_keep must be in (0,1]");
  Mask mask(height, width, 1);
  const double total = static_cast<double>(height) * static_cast<double>(width);
  long kept = static_cast<long>(height) * width;
  const long denom = std::max(1, side_min) * static_cast<long>(std::max(1, side_min));
  const long cap = 10 * ((static_cast<long>(height) * width + denom - 1) / denom);
  long rounds = 0;
  while (static_cast<double>(kept) / total > target_keep) {
    if (rounds++ >= cap)
      throw std::runtime_error("multi_cutout_mask: iteration cap hit before reaching target keep");
    const int side = static_cast<int>(rng.uniform_int(side_min, side_max));
    const int row = static_cast<int>(rng.uniform_int(0, height - 1));
    const int col = static_cast<int>(rng.uniform_int(0, width - 1));
    if (side > 0) kept -= detail::zero_square(mask, row, col, side);
  }
  return mask;
}

// Partitions the image into cell-by-cell patches (border patches smaller) and
// hides each independently with probability p_hide. Patches are visited
// row-major, one Bernoulli draw each.
inline Mask has_mask(SeedStream& rng, int height, int width, const HasParams& params) {
  params.validate();
  Mask mask(height, width, 1);
  for (int r0 = 0; r0 < height; r0 += params.cell) {
    const int r1 = std::min(r0 + params.cell, height);
    for (int c0 = 0; c0 < width; c0 += params.cell) {
      const int c1 = std::min(c0 + params.cell, width);
      if (!rng.bernoulli(params.p_hide)) continue;
      for (int i = r0; i < r1; ++i)
        std::memset(&mask.cells[mask.idx(i, c0)], 0, static_cast<std::size_t>(c1 - c0));
    }
  }
  return mask;
}

// One rectangle with area fraction ~ U[area_lo, area_hi] of the image and
// aspect (height/width) ~ U[aspect_lo, aspect_hi], placed uniformly fully
// inside. If the sampled dimensions do not fit, the (area, aspect) pair is
// resampled up to 10 times; after that the last dimensions are clipped to the
// image and placed. Draw order per attempt: area, aspect, then row, col once
// the rectangle fits.
inline Mask random_erase_mask(SeedStream& rng, int height, int width, double area_lo,
                              double area_hi, double aspect_lo, double aspect_hi) {
  if (!(area_lo > 0.0 && area_lo <= area_hi && area_hi < 1.0))
    throw std::invalid_argument("random_erase_mask: area fractions must be in (0,1), ordered");
  if (!(aspect_lo > 0.0 && aspect_lo <= aspect_hi))
    throw std::invalid_argument("random_erase_mask: aspect bounds must be positive, ordered");
  Mask mask(height, width, 1);
  const double total = static_cast<double>(height) * static_cast<double>(width);
  int rect_h = 1, rect_w = 1;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const double area = rng.uniform_real(area_lo, area_hi) * total;
    const double aspect = rng.uniform_real(aspect_lo, aspect_hi);
    rect_h = std::max(1, static_cast<int>(std::llround(std::sqrt(area * aspect))));
    rect_w = std::max(1, static_cast<int>(std::llround(std::sqrt(area / aspect))));
    if (rect_h <= height && rect_w <= width) break;
    rect_h = std::min(rect_h, height);
    rect_w = std::min(rect_w, width);
  }
  const int top = static_cast<int>(rng.uniform_int(0, height - rect_h));
  const int left = static_cast<int>(rng.uniform_int(0, width - rect_w));
  for (int i = top; i < top + rect_h; ++i)
    std::memset(&mask.cells[mask.idx(i, left)], 0, static_cast<std::size_t>(rect_w));
  return mask;
}

}  // namespace gridmask
