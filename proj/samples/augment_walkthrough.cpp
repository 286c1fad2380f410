// Augments a synthetic gradient image at several points of the ramp schedule
// and writes the results, showing how application probability grows with the
// epoch.

#include <filesystem>
#include <iostream>

#include "gridmask/gridmask.hpp"

using namespace gridmask;

namespace {

ImageU8 gradient_image(int side) {
  ImageU8 image(side, side, 3);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      image.at(i, j, 0) = static_cast<std::uint8_t>(i * 255 / (side - 1));
      image.at(i, j, 1) = static_cast<std::uint8_t>(j * 255 / (side - 1));
      image.at(i, j, 2) = static_cast<std::uint8_t>(((i + j) / 2) * 255 / (side - 1));
    }
  return image;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "augmented";
  std::filesystem::create_directories(out_dir);

  const ImageU8 image = gradient_image(224);
  GridConfig config{0.6, 96, 224, true};
  const SchedulePolicy policy = SchedulePolicy::linear_ramp(0.8, 240);

  for (int epoch : {0, 60, 120, 240}) {
    // One stream per epoch keeps the four outputs independent of each other.
    SeedStream rng(mix_seed(2, static_cast<std::uint64_t>(epoch)));
    const ImageU8 augmented = augment_image(rng, image, config, policy, epoch);
    const auto path = out_dir / ("epoch_" + std::to_string(epoch) + ".png");
    save_image(augmented, path.string());
    std::cout << "epoch " << epoch << ": p=" << schedule_probability(policy, epoch)
              << " changed=" << (augmented == image ? "no" : "yes") << "\n";
  }
  std::cout << "wrote 4 images to " << out_dir.string() << "\n";
  return 0;
}
