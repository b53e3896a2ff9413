#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dscsim/config.hpp"
#include "dscsim/dynamics.hpp"
#include "dscsim/lattice.hpp"

namespace dscsim {

/// A signed omega0 read as the alternating detuning of a device that
/// realises the C chain and is excited at site 0. Physically that is a qubit
/// of transition frequency |omega0| starting in |e,0> (omega0 >= 0) or
/// |g,0> (omega0 < 0).
struct DeviceSetup {
  RabiParams params;
  FullState initial;
  Qubit qubit;
};
DeviceSetup device_setup(const RabiParams& base, double signed_omega0);

struct SweepPoint {
  double omega0 = 0.0;
  Qubit qubit = Qubit::Excited;
  double min_revival = 0.0;
  double min_population = 0.0;  // P_e for |e,0> starts, P_g for |g,0>
  double max_mean_photon = 0.0;
  bool truncation_contaminated = false;
};

/// Extrema over the first bounce window [0, 2 pi / omega], sampled every dt.
SweepPoint sweep_point(const RabiParams& base, double signed_omega0, double dt);

/// Points are evaluated on up to `jobs` threads; results keep list order.
std::vector<SweepPoint> run_sweep(const RabiParams& base,
                                  std::span<const double> omega0_list,
                                  double dt, unsigned jobs = 1);

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

CommandOutput cmd_simulate(const RunConfig& cfg,
                           const std::filesystem::path& out_dir, bool image);
CommandOutput cmd_sweep(const RunConfig& cfg,
                        std::span<const double> omega0_list, unsigned jobs,
                        const std::filesystem::path& out_dir);
CommandOutput cmd_design(const RunConfig& cfg,
                         const std::filesystem::path& out_dir);

/// Re-reads a recipe table and checks it against the config's targets.
lattice::RecipeReport verify_recipe_file(const RunConfig& cfg,
                                         const std::filesystem::path& path);

inline constexpr double kSweepPaperList[] = {-0.08, -0.04, 0.0, 0.04, 0.08};

}  // namespace dscsim
