// Acceptance gate: eight checks, one [PASS]/[FAIL] line each, nonzero exit on
// any failure. Criterion 5 shells out to the CLI binary baked in via
// GRIDMASK_CLI_BIN.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gridmask/gridmask.hpp"

using namespace gridmask;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// --- criterion 1: keep-ratio law ------------------------------------------

void criterion_keep_ratio_law() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string worst;
  for (double r : {0.2, 0.4, 0.5, 0.6, 0.8}) {
    for (int d : {8, 16, 32, 56}) {
      const Mask mask = render_grid_mask({r, d, 0, 0, 0.0}, 224, 224);
      const double k = keep_ratio(mask);
      const double bound = 2.0 / d + 0.02;
      if (std::abs(k - (2 * r - r * r)) > bound) {
        pass = false;
        worst = "law broken at r=" + fmt(r) + " d=" + std::to_string(d);
      }
      // 224 is divisible by every tested d: the ratio must be exact.
      const long l_drop = dropped_square_side(r, d);
      const long units = (224 / d) * static_cast<long>(224 / d);
      if (kept_cells(mask) != 224L * 224 - units * l_drop * l_drop) {
        pass = false;
        worst = "exact count broken at r=" + fmt(r) + " d=" + std::to_string(d);
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) pass = false;
  report(1, "keep-ratio law over the r x d grid", pass,
         worst.empty() ? "20 combos exact, " + fmt(elapsed) + "s" : worst);
}

// --- criteria 2 and 3: failure-statistics ordering and trend ---------------

struct SweepOutcome {
  std::map<std::pair<int, int>, FailureStats> points;  // (method, x) -> stats
  double elapsed = 0.0;
};

SweepOutcome run_reference_sweep() {
  SimScenario scenario;
  scenario.trials = 20000;
  const std::vector<Method> methods = {Method::gridmask, Method::has, Method::multi_cutout};
  const std::vector<int> xs = {40, 60, 80, 100, 112};
  const auto start = std::chrono::steady_clock::now();
  const auto rows = sweep(20260819, scenario, methods, xs, 1);
  SweepOutcome outcome;
  outcome.elapsed = seconds_since(start);
  for (const auto& row : rows)
    outcome.points[{static_cast<int>(row.method), row.x}] = row;
  return outcome;
}

void criterion_ordering(const SweepOutcome& sweep_result) {
  bool pass = sweep_result.elapsed < 60.0;
  std::ostringstream detail;
  detail << fmt(sweep_result.elapsed) << "s;";
  const double n = 20000.0;
  for (int x : {40, 60, 80, 100, 112}) {
    const double grid =
        sweep_result.points.at({static_cast<int>(Method::gridmask), x}).p_fail;
    for (Method baseline : {Method::has, Method::multi_cutout}) {
      const double base = sweep_result.points.at({static_cast<int>(baseline), x}).p_fail;
      const double se = std::sqrt(grid * (1 - grid) / n + base * (1 - base) / n);
      if (!(base - grid > 3 * se)) pass = false;
    }
    detail << " x=" << x << " g=" << fmt(grid) << " h="
           << fmt(sweep_result.points.at({static_cast<int>(Method::has), x}).p_fail) << " m="
           << fmt(sweep_result.points.at({static_cast<int>(Method::multi_cutout), x}).p_fail);
  }
  report(2, "gridmask fails least at every x by >3 standard errors", pass, detail.str());
}

void criterion_trend(const SweepOutcome& sweep_result) {
  const auto& pts = sweep_result.points;
  const double grid_rise = pts.at({static_cast<int>(Method::gridmask), 112}).p_fail -
                           pts.at({static_cast<int>(Method::gridmask), 40}).p_fail;
  const double multi_rise = pts.at({static_cast<int>(Method::multi_cutout), 112}).p_fail -
                            pts.at({static_cast<int>(Method::multi_cutout), 40}).p_fail;
  report(3, "gridmask failure rate rises slower than multi-region cutout",
         grid_rise < multi_rise,
         "grid rise " + fmt(grid_rise) + " vs multi rise " + fmt(multi_rise));
}

// --- criterion 4: calibration ----------------------------------------------

void criterion_calibration() {
  SimScenario scenario;
  scenario.trials = 2000;
  bool pass = true;
  std::ostringstream detail;
  detail << "x=16;";
  for (Method m : {Method::gridmask, Method::has, Method::multi_cutout}) {
    const FailureStats stats = simulate_point(424242, scenario, m, 16);
    detail << ' ' << method_name(m) << "=" << fmt(stats.mean_keep);
    if (std::abs(stats.mean_keep - 0.75) > 0.02) pass = false;
  }
  report(4, "mean keep ratio of each calibrated method within 0.02 of 0.75", pass, detail.str());
}

// --- criterion 5: CLI determinism -------------------------------------------

bool run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + GRIDMASK_CLI_BIN + "\" " + args + " > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable:" + path.string() + ">";
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

bool same_tree(const fs::path& a, const fs::path& b, int expected_files) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++count;
    if (slurp(entry.path()) != slurp(b / entry.path().filename())) return false;
  }
  return count == expected_files;
}

void criterion_cli_determinism() {
  const fs::path root = fs::temp_directory_path() /
                        ("gridmask_acceptance_" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(root, ec);
  const fs::path in = root / "in";
  fs::create_directories(in);

  SeedStream rng(2718);
  ImageU8 rgb(48, 48, 3);
  for (auto& s : rgb.samples) s = static_cast<std::uint8_t>(rng.next_below(256));
  ImageU8 gray(40, 56, 1);
  for (auto& s : gray.samples) s = static_cast<std::uint8_t>(rng.next_below(256));
  save_image(rgb, (in / "a.png").string());
  save_image(gray, (in / "b.png").string());
  save_image(rgb, (in / "c.ppm").string());

  const std::string aug_base = "augment --in \"" + in.string() + "\" --seed 7 --p 1.0 --out \"";
  bool pass = run_cli(aug_base + (root / "out1").string() + "\" --jobs 1") &&
              run_cli(aug_base + (root / "out2").string() + "\" --jobs 1") &&
              run_cli(aug_base + (root / "out3").string() + "\" --jobs 8");
  std::string detail = "cli runs ok";
  if (!pass) detail = "augment run failed";
  if (pass && !same_tree(root / "out1", root / "out2", 3)) {
    pass = false;
    detail = "augment rerun differs";
  }
  if (pass && !same_tree(root / "out1", root / "out3", 3)) {
    pass = false;
    detail = "augment --jobs 8 differs";
  }

  const std::string sim_base =
      "simulate --methods gridmask,has,multi_cutout --xs 16,24 --trials 1500 --seed 11 --out \"";
  if (pass) {
    pass = run_cli(sim_base + (root / "s1.csv").string() + "\" --jobs 1") &&
           run_cli(sim_base + (root / "s2.csv").string() + "\" --jobs 1") &&
           run_cli(sim_base + (root / "s3.csv").string() + "\" --jobs 8");
    if (!pass) detail = "simulate run failed";
  }
  if (pass) {
    const std::string s1 = slurp(root / "s1.csv");
    if (s1 != slurp(root / "s2.csv")) {
      pass = false;
      detail = "simulate rerun differs";
    } else if (s1 != slurp(root / "s3.csv")) {
      pass = false;
      detail = "simulate --jobs 8 differs";
    }
  }
  if (pass) detail = "augment and simulate byte-identical across reruns and --jobs 1/8";
  fs::remove_all(root, ec);
  report(5, "CLI outputs are seed-deterministic and jobs-invariant", pass, detail);
}

// --- criterion 6: variant algebra -------------------------------------------

void criterion_variant_algebra() {
  bool pass = true;
  std::string detail = "100 random specs";
  for (int trial = 0; trial < 100 && pass; ++trial) {
    SeedStream rng(mix_seed(606060, static_cast<std::uint64_t>(trial)));
    const int d = static_cast<int>(rng.uniform_int(1, 64));
    GridSpec spec{rng.next_double(), d, static_cast<int>(rng.next_below(d)),
                  static_cast<int>(rng.next_below(d)), 0.0};
    const int h = static_cast<int>(rng.uniform_int(16, 128));
    const int w = static_cast<int>(rng.uniform_int(16, 128));
    const Mask mask = render_grid_mask(spec, h, w);

    if (reverse_mask(reverse_mask(mask)) != mask) {
      pass = false;
      detail = "reverse involution broke at trial " + std::to_string(trial);
    }
    if (std::abs(keep_ratio(reverse_mask(mask)) - (1.0 - keep_ratio(mask))) > 1e-12) {
      pass = false;
      detail = "complement ratio broke at trial " + std::to_string(trial);
    }
    SeedStream unit_rng(trial);
    if (render_random_grid_mask(spec, h, w, 1.0, unit_rng) != mask) {
      pass = false;
      detail = "p_u=1 mismatch at trial " + std::to_string(trial);
    }
    if (kept_cells(render_random_grid_mask(spec, h, w, 0.0, unit_rng)) !=
        static_cast<long>(h) * w) {
      pass = false;
      detail = "p_u=0 not identity at trial " + std::to_string(trial);
    }
  }
  report(6, "variant algebra (reverse involution, complement, p_u edges)", pass, detail);
}

// --- criterion 7: schedule values -------------------------------------------

void criterion_schedule() {
  const SchedulePolicy ramp = SchedulePolicy::linear_ramp(0.8, 240);
  const bool pass = schedule_probability(ramp, 0) == 0.0 &&
                    schedule_probability(ramp, 120) == 0.4 &&
                    schedule_probability(ramp, 240) == 0.8 &&
                    schedule_probability(ramp, 241) == 0.8 &&
                    schedule_probability(ramp, 100000) == 0.8;
  report(7, "ramp schedule hits 0, 0.4, 0.8 exactly", pass,
         "epochs 0/120/240+ evaluated by equality");
}

// --- criterion 8: masked-assignment semantics -------------------------------

void criterion_apply_semantics() {
  bool pass = true;
  std::string detail = "1000 random image/mask pairs";
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    SeedStream rng(mix_seed(808080, static_cast<std::uint64_t>(trial)));
    const int h = static_cast<int>(rng.uniform_int(1, 32));
    const int w = static_cast<int>(rng.uniform_int(1, 32));
    const int c = rng.bernoulli(0.5) ? 3 : 1;
    ImageU8 image(h, w, c);
    for (auto& s : image.samples) s = static_cast<std::uint8_t>(rng.next_below(256));
    Mask mask(h, w, 0);
    for (auto& cell : mask.cells) cell = rng.bernoulli(0.5) ? 1 : 0;
    const std::uint8_t fill = static_cast<std::uint8_t>(rng.next_below(256));

    const ImageU8 out = apply_mask(image, mask, fill);
    for (int i = 0; i < h && pass; ++i)
      for (int j = 0; j < w && pass; ++j)
        for (int ch = 0; ch < c; ++ch) {
          const std::uint8_t want = mask(i, j) ? image.at(i, j, ch) : fill;
          if (out.at(i, j, ch) != want) {
            pass = false;
            detail = "mismatch at trial " + std::to_string(trial);
          }
        }
  }
  report(8, "masked assignment is bit-exact on both cell classes", pass, detail);
}

}  // namespace

int main() {
  criterion_keep_ratio_law();
  const SweepOutcome sweep_result = run_reference_sweep();
  criterion_ordering(sweep_result);
  criterion_trend(sweep_result);
  criterion_calibration();
  criterion_cli_determinism();
  criterion_variant_algebra();
  criterion_schedule();
  criterion_apply_semantics();
  if (g_failures == 0)
    std::printf("all 8 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
