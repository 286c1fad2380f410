#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridmask/grid.hpp"
#include "gridmask/image.hpp"
#include "gridmask/mask.hpp"
#include "gridmask/parallel.hpp"
#include "gridmask/rng.hpp"
#include "gridmask/schedule.hpp"

namespace gridmask {

// Mask flavor applied per image: the plain grid, its complement, or the
// per-unit random variant with drop probability p_u.
struct Variant {
  enum class Kind { standard, reversed, random_units };

  Kind kind = Kind::standard;
  double p_u = 1.0;

  static Variant standard() { return Variant{}; }
  static Variant reversed() { return Variant{Kind::reversed, 1.0}; }
  static Variant random_units(double p_u) {
    Variant v{Kind::random_units, p_u};
    v.validate();
    return v;
  }

  void validate() const {
    if (kind == Kind::random_units && !(p_u >= 0.0 && p_u <= 1.0))
      throw std::invalid_argument("Variant: p_u must be in [0,1]");
  }
};

enum class FillMode { zero, channel_mean };

// Renders the mask for an already-sampled spec under the given variant. The
// random-units variant is axis-aligned by definition, so any sampled angle is
// ignored there; the other variants rotate when the angle is nonzero.
inline Mask make_variant_mask(const GridSpec& spec, int height, int width, const Variant& variant,
                              SeedStream& rng) {
  variant.validate();
  if (variant.kind == Variant::Kind::random_units) {
    GridSpec flat = spec;
    flat.angle_deg = 0.0;
    return render_random_grid_mask(flat, height, width, variant.p_u, rng);
  }
  Mask mask = spec.angle_deg != 0.0 ? render_rotated_grid_mask(spec, height, width)
                                    : render_grid_mask(spec, height, width);
  if (variant.kind == Variant::Kind::reversed) mask = reverse_mask(std::move(mask));
  return mask;
}

// Applies one augmentation decision to one image. Draw order: the apply/skip
// Bernoulli first, then the GridSpec (d, dx, dy, angle), then any per-unit
// draws of the random variant.
template <typename T>
ImageTensor<T> augment_image(SeedStream& rng, const ImageTensor<T>& image,
                             const GridConfig& config, const SchedulePolicy& policy, int epoch,
                             const Variant& variant = Variant::standard(),
                             FillMode fill = FillMode::zero) {
  image.validate();
  config.validate();
  variant.validate();
  const double p = schedule_probability(policy, epoch);
  if (!rng.bernoulli(p)) return image;
  const GridSpec spec = sample_grid_spec(rng, config);
  const Mask mask = make_variant_mask(spec, image.height, image.width, variant, rng);
  if (fill == FillMode::channel_mean) return apply_mask(image, mask, channel_means(image));
  return apply_mask(image, mask, T{});
}

struct BatchError {
  std::size_t index = 0;
  std::string message;
};

template <typename T>
struct BatchResult {
  std::vector<ImageTensor<T>> images;
  std::vector<BatchError> errors;
};

// Batch form: image i is processed with a stream seeded by
// mix_seed(master_seed, i), so outputs are independent of thread count and
// identical to a serial run. Failed images pass through unchanged and are
// reported by index.
template <typename T>
BatchResult<T> augment_batch(std::uint64_t master_seed, const std::vector<ImageTensor<T>>& images,
                             const GridConfig& config, const SchedulePolicy& policy, int epoch,
                             const Variant& variant = Variant::standard(),
                             FillMode fill = FillMode::zero, int jobs = 1) {
  config.validate();
  policy.validate();
  variant.validate();
  BatchResult<T> result;
  result.images = images;
  std::mutex error_mutex;
  parallel_for(images.size(), jobs, [&](std::size_t i) {
    SeedStream rng(mix_seed(master_seed, static_cast<std::uint64_t>(i)));
    try {
      result.images[i] = augment_image(rng, images[i], config, policy, epoch, variant, fill);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      result.errors.push_back({i, e.what()});
    }
  });
  std::sort(result.errors.begin(), result.errors.end(),
            [](const BatchError& a, const BatchError& b) { return a.index < b.index; });
  return result;
}

}  // namespace gridmask
