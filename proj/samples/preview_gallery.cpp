// Renders one mask per flavor (standard, reversed, random-unit, rotated) and
// writes PNG previews into the given directory (default "previews").

#include <filesystem>
#include <iostream>

#include "gridmask/gridmask.hpp"

using namespace gridmask;

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "previews";
  std::filesystem::create_directories(out_dir);

  SeedStream rng(42);
  GridSpec spec{0.5, 40, 8, 8, 0.0};
  const int side = 224;

  const Mask standard = render_grid_mask(spec, side, side);
  save_image(render_mask_preview(standard), (out_dir / "standard.png").string());

  save_image(render_mask_preview(reverse_mask(standard)), (out_dir / "reversed.png").string());

  const Mask random_units = render_random_grid_mask(spec, side, side, 0.5, rng);
  save_image(render_mask_preview(random_units), (out_dir / "random_units.png").string());

  GridSpec tilted = spec;
  tilted.angle_deg = 30.0;
  const Mask rotated = render_rotated_grid_mask(tilted, side, side);
  save_image(render_mask_preview(rotated), (out_dir / "rotated.png").string());

  std::cout << "standard keep=" << keep_ratio(standard)
            << " reversed keep=" << keep_ratio(reverse_mask(standard))
            << " random keep=" << keep_ratio(random_units)
            << " rotated keep=" << keep_ratio(rotated) << "\n";
  std::cout << "wrote 4 previews to " << out_dir.string() << "\n";
  return 0;
}
