// Command-line front end: batch augmentation, mask previews, keep-ratio
// measurement, and the failure-statistics sweep. Exit codes: 0 success,
// 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include "gridmask/gridmask.hpp"

namespace fs = std::filesystem;
using namespace gridmask;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

int parse_int_text(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::invalid_argument("bad " + what + ": '" + text + "'");
  return value;
}

double parse_double_text(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::invalid_argument("bad " + what + ": '" + text + "'");
  return value;
}

Variant parse_variant(const std::string& text) {
  if (text == "standard") return Variant::standard();
  if (text == "reversed") return Variant::reversed();
  const std::string prefix = "random:";
  if (text.rfind(prefix, 0) == 0)
    return Variant::random_units(parse_double_text(text.substr(prefix.size()), "p_u"));
  throw std::invalid_argument("bad --variant (standard | reversed | random:PU): '" + text + "'");
}

FillMode parse_fill(const std::string& text) {
  if (text == "zero") return FillMode::zero;
  if (text == "mean") return FillMode::channel_mean;
  throw std::invalid_argument("bad --fill (zero | mean): '" + text + "'");
}

struct AugmentArgs {
  std::string in, out;
  std::uint64_t seed = 0;
  double r = 0.6;
  int d_min = 96, d_max = 224;
  bool rotate = true;
  std::string variant = "standard";
  std::string fill = "zero";
  double p = 0.0;
  std::string ramp;
  int epoch = 240;
  int jobs = 1;
  bool p_given = false, ramp_given = false;
};

int run_augment(const AugmentArgs& args) {
  if (args.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  GridConfig config{args.r, args.d_min, args.d_max, args.rotate};
  config.validate();
  const Variant variant = parse_variant(args.variant);
  const FillMode fill = parse_fill(args.fill);
  SchedulePolicy policy = SchedulePolicy::linear_ramp(0.8, 240);
  if (args.p_given) policy = SchedulePolicy::constant(args.p);
  else if (args.ramp_given) {
    const auto parts = split(args.ramp, ',');
    if (parts.size() != 2) throw std::invalid_argument("bad --ramp, expected P,END_EPOCH");
    policy = SchedulePolicy::linear_ramp(parse_double_text(parts[0], "ramp P"),
                                         parse_int_text(parts[1], "ramp end epoch"));
  }
  if (args.epoch < 0) throw std::invalid_argument("--epoch must be >= 0");

  std::vector<fs::path> inputs;
  if (fs::is_regular_file(args.in)) {
    inputs.push_back(args.in);
  } else if (fs::is_directory(args.in)) {
    for (const auto& entry : fs::directory_iterator(args.in)) {
      if (!entry.is_regular_file()) continue;
      std::string ext = entry.path().extension().string();
      for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (ext == ".png" || ext == ".pgm" || ext == ".ppm") inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
  } else {
    throw std::invalid_argument("input path does not exist: " + args.in);
  }
  fs::create_directories(args.out);

  // File i uses the stream seeded by mix_seed(seed, i) over the sorted list,
  // so output bytes are independent of --jobs.
  std::vector<std::string> failures(inputs.size());
  std::mutex failure_mutex;
  std::size_t failed = 0;
  parallel_for(inputs.size(), args.jobs, [&](std::size_t i) {
    SeedStream rng(mix_seed(args.seed, static_cast<std::uint64_t>(i)));
    try {
      const ImageU8 image = load_image(inputs[i].string());
      const ImageU8 augmented =
          augment_image(rng, image, config, policy, args.epoch, variant, fill);
      save_image(augmented, (fs::path(args.out) / inputs[i].filename()).string());
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      failures[i] = e.what();
      ++failed;
    }
  });
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!failures[i].empty())
      std::cerr << "failed: " << inputs[i].string() << ": " << failures[i] << "\n";
  std::cout << "augmented " << (inputs.size() - failed) << " of " << inputs.size()
            << " images into " << args.out << "\n";
  return failed == 0 ? 0 : 1;
}

struct PreviewArgs {
  double r = 0.6;
  int d = 96, dx = 0, dy = 0;
  double angle = 0.0;
  int height = 224, width = 224;
  std::string out;
};

int run_preview(const PreviewArgs& args) {
  GridSpec spec{args.r, args.d, args.dx, args.dy, args.angle};
  spec.validate();
  if (args.height < 1 || args.width < 1)
    throw std::invalid_argument("--h and --w must be >= 1");
  const std::string ext = detail::lower_extension(args.out);
  if (ext != ".png" && ext != ".pgm")
    throw std::invalid_argument("--out must end in .png or .pgm");
  const Mask mask = args.angle != 0.0 ? render_rotated_grid_mask(spec, args.height, args.width)
                                      : render_grid_mask(spec, args.height, args.width);
  try {
    save_image(render_mask_preview(mask), args.out);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote " << args.out << " keep_ratio=" << detail::format_ratio(keep_ratio(mask))
            << "\n";
  return 0;
}

struct SimulateArgs {
  std::string methods, xs, out;
  std::uint64_t seed = 0;
  std::int64_t trials = 100000;
  int image_side = 224;
  std::string object_range = "40,160";
  double keep = 0.75;
  double threshold = 0.99;
  int jobs = 1;
};

int run_simulate(const SimulateArgs& args) {
  if (args.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  std::vector<Method> methods;
  for (const std::string& name : split(args.methods, ',')) {
    if (name != "gridmask" && name != "has" && name != "multi_cutout")
      throw std::invalid_argument("unknown method: '" + name + "'");
    methods.push_back(parse_method(name));
  }
  std::vector<int> xs;
  for (const std::string& part : split(args.xs, ',')) xs.push_back(parse_int_text(part, "x"));
  const auto range = split(args.object_range, ',');
  if (range.size() != 2) throw std::invalid_argument("bad --object-range, expected MIN,MAX");
  SimScenario scenario;
  scenario.image_side = args.image_side;
  scenario.object_min = parse_int_text(range[0], "object min");
  scenario.object_max = parse_int_text(range[1], "object max");
  scenario.target_keep = args.keep;
  scenario.trials = args.trials;
  scenario.failure_threshold = args.threshold;
  scenario.validate();
  for (int x : xs)
    if (x < 1) throw std::invalid_argument("--xs entries must be >= 1");

  const std::vector<FailureStats> stats = sweep(args.seed, scenario, methods, xs, args.jobs);
  for (const FailureStats& s : stats)
    std::cout << method_name(s.method) << " x=" << s.x << " p_fail=" << detail::format_ratio(s.p_fail)
              << " p_removed=" << detail::format_ratio(s.p_removed)
              << " p_reserved=" << detail::format_ratio(s.p_reserved) << "\n";
  try {
    write_stats_csv(to_stats_rows(stats, args.seed), args.out);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote " << stats.size() << " rows to " << args.out << "\n";
  return 0;
}

struct KeepRatioArgs {
  std::string mask_path;
  double r = 0.6;
  int d = 96, dx = 0, dy = 0;
  double angle = 0.0;
  int height = 224, width = 224;
  bool have_mask = false, have_geometry = false;
};

int run_keep_ratio(const KeepRatioArgs& args) {
  Mask mask;
  if (args.have_mask) {
    try {
      mask = image_to_mask(load_image(args.mask_path));
    } catch (const io_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  } else {
    GridSpec spec{args.r, args.d, args.dx, args.dy, args.angle};
    spec.validate();
    if (args.height < 1 || args.width < 1)
      throw std::invalid_argument("--h and --w must be >= 1");
    mask = args.angle != 0.0 ? render_rotated_grid_mask(spec, args.height, args.width)
                             : render_grid_mask(spec, args.height, args.width);
  }
  std::cout << detail::format_ratio(keep_ratio(mask)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GridMask data augmentation toolkit"};
  app.require_subcommand(1);

  AugmentArgs aug;
  CLI::App* aug_cmd = app.add_subcommand("augment", "Augment a directory of images");
  aug_cmd->add_option("--in", aug.in, "Input image file or directory")->required();
  aug_cmd->add_option("--out", aug.out, "Output directory")->required();
  aug_cmd->add_option("--seed", aug.seed, "Master seed (all randomness flows from it)");
  aug_cmd->add_option("--r", aug.r, "Kept-band ratio r");
  aug_cmd->add_option("--d-min", aug.d_min, "Minimum unit period d");
  aug_cmd->add_option("--d-max", aug.d_max, "Maximum unit period d");
  aug_cmd->add_flag("--rotate,!--no-rotate", aug.rotate, "Rotate masks (default on)");
  aug_cmd->add_option("--variant", aug.variant, "standard | reversed | random:PU");
  auto* p_opt = aug_cmd->add_option("--p", aug.p, "Constant application probability");
  auto* ramp_opt =
      aug_cmd->add_option("--ramp", aug.ramp, "Linear ramp 'P,END_EPOCH' (default 0.8,240)");
  p_opt->excludes(ramp_opt);
  ramp_opt->excludes(p_opt);
  aug_cmd->add_option("--epoch", aug.epoch, "Epoch the schedule is evaluated at");
  aug_cmd->add_option("--fill", aug.fill, "Dropped-cell fill: zero | mean");
  aug_cmd->add_option("--jobs", aug.jobs, "Worker threads (never changes outputs)");

  PreviewArgs prev;
  CLI::App* prev_cmd = app.add_subcommand("preview", "Render one mask as an image");
  // --h would collide with the default -h help alias, so this subcommand keeps
  // only the long form.
  prev_cmd->set_help_flag("--help", "Print this help message and exit");
  prev_cmd->add_option("--r", prev.r, "Kept-band ratio r")->required();
  prev_cmd->add_option("--d", prev.d, "Unit period d")->required();
  prev_cmd->add_option("--dx", prev.dx, "Lattice x offset");
  prev_cmd->add_option("--dy", prev.dy, "Lattice y offset");
  prev_cmd->add_option("--angle", prev.angle, "Rotation in degrees [0,360)");
  prev_cmd->add_option("--h", prev.height, "Mask height")->required();
  prev_cmd->add_option("--w", prev.width, "Mask width")->required();
  prev_cmd->add_option("--out", prev.out, "Output image (.png or .pgm)")->required();

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Failure-statistics Monte Carlo sweep");
  sim_cmd->add_option("--methods", sim.methods, "Comma list of gridmask,has,multi_cutout")
      ->required();
  sim_cmd->add_option("--xs", sim.xs, "Comma list of removal-square range starts x")->required();
  sim_cmd->add_option("--trials", sim.trials, "Trials per (method, x) point");
  sim_cmd->add_option("--image-side", sim.image_side, "Simulated frame side");
  sim_cmd->add_option("--object-range", sim.object_range, "Object edge range 'MIN,MAX'");
  sim_cmd->add_option("--keep", sim.keep, "Calibrated keep ratio");
  sim_cmd->add_option("--threshold", sim.threshold, "Failure threshold");
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();
  sim_cmd->add_option("--jobs", sim.jobs, "Worker threads (never changes outputs)");

  KeepRatioArgs ratio;
  CLI::App* ratio_cmd =
      app.add_subcommand("keep-ratio", "Measure the keep ratio of a mask image or geometry");
  ratio_cmd->set_help_flag("--help", "Print this help message and exit");
  auto* mask_opt = ratio_cmd->add_option("--mask", ratio.mask_path, "Mask image to measure");
  auto* r_opt = ratio_cmd->add_option("--r", ratio.r, "Kept-band ratio r");
  auto* d_opt = ratio_cmd->add_option("--d", ratio.d, "Unit period d");
  ratio_cmd->add_option("--dx", ratio.dx, "Lattice x offset");
  ratio_cmd->add_option("--dy", ratio.dy, "Lattice y offset");
  ratio_cmd->add_option("--angle", ratio.angle, "Rotation in degrees");
  auto* h_opt = ratio_cmd->add_option("--h", ratio.height, "Mask height");
  auto* w_opt = ratio_cmd->add_option("--w", ratio.width, "Mask width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*aug_cmd) return run_augment(aug);
    if (*prev_cmd) return run_preview(prev);
    if (*sim_cmd) return run_simulate(sim);
    if (*ratio_cmd) {
      ratio.have_mask = mask_opt->count() > 0;
      ratio.have_geometry = r_opt->count() > 0 || d_opt->count() > 0 || h_opt->count() > 0 ||
                            w_opt->count() > 0;
      if (ratio.have_mask == ratio.have_geometry)
        throw std::invalid_argument("keep-ratio needs --mask or geometry flags, not both");
      if (ratio.have_geometry &&
          (r_opt->count() == 0 || d_opt->count() == 0 || h_opt->count() == 0 ||
           w_opt->count() == 0))
        throw std::invalid_argument("keep-ratio geometry needs --r, --d, --h and --w");
      return run_keep_ratio(ratio);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
