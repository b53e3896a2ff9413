#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dscsim/dynamics.hpp"
#include "dscsim/lattice.hpp"

namespace dscsim::output {

/// Scientific notation with 12 significant digits; -0 prints as 0.
std::string format_number(double value);

void write_timeseries(std::ostream& os, const Trajectory& traj);
void write_intensity_map(std::ostream& os, const Trajectory& traj);

/// 8-bit grayscale raster of P(n,t), max-normalised. Propagation runs left
/// to right (one column per grid point), site 0 is the top row.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};
GrayImage intensity_image(const Trajectory& traj);
/// Binary PGM (P5).
void write_pgm(std::ostream& os, const GrayImage& image);

void write_recipe_table(std::ostream& os, const lattice::LatticeRecipe& recipe);
void write_recipe_json(std::ostream& os, const lattice::LatticeRecipe& recipe);
lattice::LatticeRecipe parse_recipe_table(std::istream& is);

void write_recipe_report(std::ostream& os, const lattice::RecipeReport& report);

}  // namespace dscsim::output
