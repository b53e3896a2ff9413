#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dscsim/lattice.hpp"
#include "dscsim/model.hpp"

namespace dscsim {

enum class OutputProduct { Timeseries, IntensityMap, Recipe };

struct DesignConfig {
  std::size_t guides = kPaperTruncation;
  lattice::CouplingCalibration calibration =
      lattice::CouplingCalibration::standard();
  lattice::OpticalConstants optics;
  lattice::DesignOptions options;
};

struct RunConfig {
  RabiParams model;
  FullState initial;
  std::string initial_label;  // "e0", "g3", ... or "amplitudes"
  double t_max = 60.0;
  double dt = 0.1;
  double sweep_dt = 0.05;
  std::vector<OutputProduct> outputs{OutputProduct::Timeseries,
                                     OutputProduct::IntensityMap};
  std::filesystem::path output_dir = "out";
  bool image = false;
  std::optional<DesignConfig> design{};

  bool wants(OutputProduct product) const;
};

/// Strict sectioned key = value format; see README for the key reference.
/// Errors are Error(Config) with the line (and column for syntax errors),
/// the offending key and the violated bound.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace dscsim
