#pragma once

// Failure-case study: drop a synthetic square object into a 224x224 frame,
// mask it with each method calibrated to the same keep ratio, and measure how
// often the object is almost fully removed or almost fully reserved.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridmask/baselines.hpp"
#include "gridmask/grid.hpp"
#include "gridmask/io.hpp"
#include "gridmask/mask.hpp"
#include "gridmask/parallel.hpp"
#include "gridmask/rng.hpp"

namespace gridmask {

// keep_all / drop_all are degenerate stubs kept for tests; the CLI only
// accepts the first three.
enum class Method { gridmask, has, multi_cutout, keep_all, drop_all };

inline const char* method_name(Method method) {
  switch (method) {
    case Method::gridmask: return "gridmask";
    case Method::has: return "has";
    case Method::multi_cutout: return "multi_cutout";
    case Method::keep_all: return "keep_all";
    case Method::drop_all: return "drop_all";
  }
  throw std::invalid_argument("method_name: unknown method");
}

inline Method parse_method(const std::string& name) {
  if (name == "gridmask") return Method::gridmask;
  if (name == "has") return Method::has;
  if (name == "multi_cutout") return Method::multi_cutout;
  if (name == "keep_all") return Method::keep_all;
  if (name == "drop_all") return Method::drop_all;
  throw std::invalid_argument("unknown method: " + name);
}

struct SimScenario {
  int image_side = 224;
  int object_min = 40;
  int object_max = 160;
  double target_keep = 0.75;
  int square_range_x = 112;  // default x of the removal-square range [x, 2x]
  std::int64_t trials = 100000;
  double failure_threshold = 0.99;

  void validate() const {
    if (image_side < 1) throw std::invalid_argument("SimScenario: image_side must be >= 1");
    if (object_min < 1 || object_min > object_max || object_max > image_side)
      throw std::invalid_argument("SimScenario: need 1 <= object_min <= object_max <= image_side");
    if (!(target_keep > 0.0 && target_keep <= 1.0))
      throw std::invalid_argument("SimScenario: target_keep must be in (0,1]");
    if (square_range_x < 1) throw std::invalid_argument("SimScenario: x must be >= 1");
    if (trials < 1) throw std::invalid_argument("SimScenario: trials must be >= 1");
    if (!(failure_threshold > 0.5 && failure_threshold <= 1.0))
      throw std::invalid_argument("SimScenario: failure_threshold must be in (0.5, 1]");
  }
};

enum class Outcome { ok, removed_failure, reserved_failure };

// A trial fails when the kept fraction of the object is <= 1 - threshold
// (object removed) or >= threshold (object reserved); both ends inclusive.
inline Outcome classify_outcome(std::int64_t kept, std::int64_t total, double threshold) {
  if (total < 1 || kept < 0 || kept > total)
    throw std::invalid_argument("classify_outcome: need 0 <= kept <= total, total >= 1");
  const double ratio = static_cast<double>(kept) / static_cast<double>(total);
  if (ratio <= 1.0 - threshold) return Outcome::removed_failure;
  if (ratio >= threshold) return Outcome::reserved_failure;
  return Outcome::ok;
}

// Per-method parameters pinned so every method's expected keep ratio equals
// target_keep. For gridmask, k = 2r - r^2 gives r = 1 - sqrt(1 - k).
struct Calibration {
  Method method = Method::gridmask;
  double grid_r = 0.5;
  double p_hide = 0.25;
  double target_keep = 0.75;
};

inline Calibration calibrate_method(Method method, const SimScenario& scenario, int x) {
  scenario.validate();
  if (x < 1) throw std::invalid_argument("calibrate_method: x must be >= 1");
  Calibration cal;
  cal.method = method;
  cal.target_keep = scenario.target_keep;
  switch (method) {
    case Method::gridmask:
      cal.grid_r = 1.0 - std::sqrt(1.0 - scenario.target_keep);
      break;
    case Method::has:
      cal.p_hide = 1.0 - scenario.target_keep;
      break;
    case Method::multi_cutout:
    case Method::keep_all:
    case Method::drop_all:
      break;
    default:
      throw std::invalid_argument("calibrate_method: unknown method");
  }
  return cal;
}

// One calibrated mask on the scenario's frame. [x, 2x] sizes each method's
// removal unit: the grid's repeating period d, has's cell, multi_cutout's
// square edge. Sizing the grid by its dropped square instead would push d past
// the frame at large x and degenerate the lattice into one huge cut, which is
// exactly the unstructured behaviour the comparison is about. Draw orders:
// gridmask d, dx, dy; has cell, then patch Bernoullis; multi_cutout per round
// side, row, col.
inline Mask sample_method_mask(SeedStream& rng, const Calibration& cal,
                               const SimScenario& scenario, int x) {
  const int side = scenario.image_side;
  switch (cal.method) {
    case Method::gridmask: {
      if (cal.grid_r >= 1.0) return Mask(side, side, 1);
      const int d = static_cast<int>(rng.uniform_int(x, 2 * x));
      GridSpec spec;
      spec.r = cal.grid_r;
      spec.d = d;
      spec.delta_x = static_cast<int>(rng.uniform_int(0, d - 1));
      spec.delta_y = static_cast<int>(rng.uniform_int(0, d - 1));
      return render_grid_mask(spec, side, side);
    }
    case Method::has: {
      HasParams params;
      params.cell = static_cast<int>(rng.uniform_int(x, 2 * x));
      params.p_hide = cal.p_hide;
      return has_mask(rng, side, side, params);
    }
    case Method::multi_cutout:
      return multi_cutout_mask(rng, side, side, x, 2 * x, cal.target_keep);
    case Method::keep_all:
      return Mask(side, side, 1);
    case Method::drop_all:
      return Mask(side, side, 0);
  }
  throw std::invalid_argument("sample_method_mask: unknown method");
}

struct FailureStats {
  Method method = Method::gridmask;
  int x = 0;
  double p_fail = 0.0;
  double p_removed = 0.0;
  double p_reserved = 0.0;
  std::int64_t trials = 0;
  double mean_keep = 0.0;  // mean full-mask keep ratio, for calibration checks
};

// Runs scenario.trials independent trials. Trial t draws from a stream seeded
// by mix_seed(mix_seed(mix_seed(seed, method_code), x), t), so results do not
// depend on `jobs`. Per trial the object square is drawn first (edge, top,
// left), then the method's mask.
inline FailureStats simulate_point(std::uint64_t seed, const SimScenario& scenario, Method method,
                                   int x, int jobs = 1) {
  scenario.validate();
  const Calibration cal = calibrate_method(method, scenario, x);
  const std::int64_t trials = scenario.trials;
  const std::uint64_t method_code = static_cast<std::uint64_t>(method) + 1;
  const std::uint64_t point_seed = mix_seed(mix_seed(seed, method_code), static_cast<std::uint64_t>(x));
  std::vector<std::uint8_t> outcomes(static_cast<std::size_t>(trials));
  std::vector<double> keeps(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t t) {
    SeedStream rng(mix_seed(point_seed, static_cast<std::uint64_t>(t)));
    const int edge = static_cast<int>(rng.uniform_int(scenario.object_min, scenario.object_max));
    const int top = static_cast<int>(rng.uniform_int(0, scenario.image_side - edge));
    const int left = static_cast<int>(rng.uniform_int(0, scenario.image_side - edge));
    const Mask mask = sample_method_mask(rng, cal, scenario, x);
    std::int64_t kept = 0;
    for (int i = top; i < top + edge; ++i) {
      const std::uint8_t* row = &mask.cells[mask.idx(i, left)];
      for (int j = 0; j < edge; ++j) kept += row[j];
    }
    outcomes[t] = static_cast<std::uint8_t>(
        classify_outcome(kept, static_cast<std::int64_t>(edge) * edge, scenario.failure_threshold));
    keeps[t] = keep_ratio(mask);
  });
  std::int64_t removed = 0, reserved = 0;
  double keep_sum = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (outcomes[t] == static_cast<std::uint8_t>(Outcome::removed_failure)) ++removed;
    if (outcomes[t] == static_cast<std::uint8_t>(Outcome::reserved_failure)) ++reserved;
    keep_sum += keeps[t];
  }
  FailureStats stats;
  stats.method = method;
  stats.x = x;
  stats.trials = trials;
  stats.p_removed = static_cast<double>(removed) / static_cast<double>(trials);
  stats.p_reserved = static_cast<double>(reserved) / static_cast<double>(trials);
  stats.p_fail = stats.p_removed + stats.p_reserved;
  stats.mean_keep = keep_sum / static_cast<double>(trials);
  return stats;
}

// One row per (method, x) pair, methods-major, every point on an independent
// derived stream of the same master seed.
inline std::vector<FailureStats> sweep(std::uint64_t seed, const SimScenario& scenario,
                                       const std::vector<Method>& methods,
                                       const std::vector<int>& xs, int jobs = 1) {
  if (xs.empty()) throw std::invalid_argument("sweep: xs must be non-empty");
  if (methods.empty()) throw std::invalid_argument("sweep: methods must be non-empty");
  std::vector<FailureStats> rows;
  rows.reserve(methods.size() * xs.size());
  for (Method method : methods)
    for (int x : xs) rows.push_back(simulate_point(seed, scenario, method, x, jobs));
  return rows;
}

inline std::vector<StatsRow> to_stats_rows(const std::vector<FailureStats>& stats,
                                           std::uint64_t seed) {
  std::vector<StatsRow> rows;
  rows.reserve(stats.size());
  for (const FailureStats& s : stats)
    rows.push_back({method_name(s.method), s.x, s.p_fail, s.p_removed, s.p_reserved, s.trials, seed});
  return rows;
}

}  // namespace gridmask
