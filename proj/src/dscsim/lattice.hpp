#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dscsim/model.hpp"

namespace dscsim::lattice {

/// Evanescent coupling law kappa(d) = kappa0 exp(-gamma (d - d_ref)).
/// Units: kappa0 mm^-1, gamma um^-1, spacings um.
struct CouplingCalibration {
  double kappa0;
  double gamma;
  double d_ref;
  double d_min;
  double d_max;

  /// Law through (d_far, kappa_far) and (d_near, kappa_near), referenced at
  /// d_far, valid on [d_near, d_far].
  static CouplingCalibration from_endpoints(double d_far, double kappa_far,
                                            double d_near, double kappa_near);

  /// 0.15 mm^-1 at 14 um and 0.15 sqrt(14) mm^-1 at 6.6 um: the weakest and
  /// strongest couplings of the 15-guide g = 0.15 mm^-1 array.
  static CouplingCalibration standard();

  void validate() const;
  double coupling_at(double d_um) const;
  double kappa_min() const { return coupling_at(d_max); }
  double kappa_max() const { return coupling_at(d_min); }
};

struct OpticalConstants {
  double n_eff_base = 1.45;
  double wavelength_nm = 633.0;
  double radius_mm = 650.0;
  double dn_dv = 1.5e-5;  // s/mm
  double v_base = 10.0;   // mm/s

  void validate() const;
  /// Propagation-constant change per unit index change, mm^-1.
  double wavenumber() const;
};

struct SpeedWindow {
  double v_min = 9.5;
  double v_max = 14.5;
};

struct RecipeRow {
  std::size_t guide = 0;
  std::optional<double> spacing_um;  // to the next guide; absent on the last
  double position_um = 0.0;
  double delta_n_eff = 0.0;  // total offset from n_eff_base
  double delta_n_eff_gradient = 0.0;
  double delta_n_eff_detuning = 0.0;
  double writing_speed = 0.0;  // mm/s
  std::optional<double> achieved_kappa;
  std::optional<double> achieved_omega;
  double achieved_detuning = 0.0;
};

struct LatticeRecipe {
  std::vector<RecipeRow> rows;
};

double spacing_for_coupling(const CouplingCalibration& cal, double kappa);

/// omega = 2 pi n_eff d / (R lambda) with d in um, R in mm, lambda in nm.
double gradient_omega(const OpticalConstants& oc, double d_um, double n_eff);

struct DesignOptions {
  SpeedWindow speeds;
  bool compensate = true;
};

/// Waveguide recipe realising the C parity chain of `params` with `guides`
/// sites. Throws Error(Range) for an unreachable coupling and
/// Error(Feasibility) for a writing speed outside the window.
LatticeRecipe design(const RabiParams& params, const CouplingCalibration& cal,
                     const OpticalConstants& oc, std::size_t guides,
                     const DesignOptions& options = {});

struct GuideDeviation {
  std::size_t guide = 0;
  double kappa = 0.0;        // relative
  double omega = 0.0;        // relative
  double detuning = 0.0;     // relative to omega0/2, absolute if omega0 = 0
  double site_energy = 0.0;  // from the writing speed, relative to omega
};

struct RecipeReport {
  std::vector<GuideDeviation> guides;
  double max_kappa_deviation = 0.0;
  double max_omega_deviation = 0.0;
  double max_detuning_deviation = 0.0;
  double max_site_energy_deviation = 0.0;
  std::vector<double> neff_d_product_um;  // effective product per step
  std::vector<double> uncompensated_omega;
  std::vector<double> uncompensated_delta_beta;  // curvature tilt alone
  std::vector<double> target_delta_beta;         // n omega
  std::vector<double> achieved_delta_beta;

  double max_deviation() const;
  bool passes(double tolerance = 1e-6) const {
    return max_deviation() < tolerance;
  }
};

RecipeReport verify_recipe(const LatticeRecipe& recipe,
                           const RabiParams& params,
                           const CouplingCalibration& cal,
                           const OpticalConstants& oc);

}  // namespace dscsim::lattice
