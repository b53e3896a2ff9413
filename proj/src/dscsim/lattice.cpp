#include "dscsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dscsim/error.hpp"

namespace dscsim::lattice {

namespace {

constexpr double kRangeSlack = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, msg);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

CouplingCalibration CouplingCalibration::from_endpoints(double d_far,
                                                        double kappa_far,
                                                        double d_near,
                                                        double kappa_near) {
  if (!(d_near < d_far) || !(kappa_near > kappa_far) || !(kappa_far > 0.0)) {
    invalid("calibration endpoints must satisfy d_near < d_far and "
            "kappa_near > kappa_far > 0");
  }
  const double gamma = std::log(kappa_near / kappa_far) / (d_far - d_near);
  return {kappa_far, gamma, d_far, d_near, d_far};
}

CouplingCalibration CouplingCalibration::standard() {
  return from_endpoints(14.0, 0.15, 6.6, 0.15 * std::sqrt(14.0));
}

void CouplingCalibration::validate() const {
  if (!positive_finite(kappa0)) invalid("kappa0 must be > 0");
  if (!positive_finite(gamma)) invalid("gamma must be > 0");
  if (!std::isfinite(d_ref)) invalid("d_ref must be finite");
  if (!std::isfinite(d_min) || !std::isfinite(d_max) || !(d_min < d_max)) {
    invalid("d_min must be < d_max");
  }
  if (!(d_min > 0.0)) invalid("d_min must be > 0");
}

double CouplingCalibration::coupling_at(double d_um) const {
  return kappa0 * std::exp(-gamma * (d_um - d_ref));
}

void OpticalConstants::validate() const {
  if (!positive_finite(n_eff_base)) invalid("n_eff_base must be > 0");
  if (!positive_finite(wavelength_nm)) invalid("wavelength_nm must be > 0");
  if (wavelength_nm < 400.0 || wavelength_nm > 1600.0) {
    invalid("wavelength_nm must lie in [400, 1600]");
  }
  if (!positive_finite(radius_mm)) invalid("radius_mm must be > 0");
  if (!positive_finite(dn_dv)) invalid("dn_dv must be > 0");
  if (!positive_finite(v_base)) invalid("v_base must be > 0");
}

double OpticalConstants::wavenumber() const {
  return 2.0 * std::numbers::pi / (wavelength_nm * 1e-6);
}

double spacing_for_coupling(const CouplingCalibration& cal, double kappa) {
  cal.validate();
  const double lo = cal.kappa_min();
  const double hi = cal.kappa_max();
  if (!(kappa > 0.0) || kappa < lo * (1.0 - kRangeSlack)) {
    throw Error(ErrorKind::Range,
                "coupling " + num(kappa) +
                    " mm^-1 is below the weakest achievable coupling " +
                    num(lo) + " mm^-1 (d_max = " + num(cal.d_max) + " um)");
  }
  if (kappa > hi * (1.0 + kRangeSlack)) {
    throw Error(ErrorKind::Range,
                "coupling " + num(kappa) +
                    " mm^-1 exceeds the strongest achievable coupling " +
                    num(hi) + " mm^-1 (d_min = " + num(cal.d_min) + " um)");
  }
  const double d = cal.d_ref - std::log(kappa / cal.kappa0) / cal.gamma;
  return std::clamp(d, cal.d_min, cal.d_max);
}

double gradient_omega(const OpticalConstants& oc, double d_um, double n_eff) {
  const double d_mm = d_um * 1e-3;
  const double lambda_mm = oc.wavelength_nm * 1e-6;
  return 2.0 * std::numbers::pi * n_eff * d_mm / (oc.radius_mm * lambda_mm);
}

// Site n sees beta_n = k (dn_n + n_eff_base x_n / R): the curvature tilt plus
// the written index offset. The gradient part of dn_n makes beta_n - beta_0
// = n omega; the detuning part adds (-1)^n omega0 / 2 on top.
LatticeRecipe design(const RabiParams& params, const CouplingCalibration& cal,
                     const OpticalConstants& oc, std::size_t guides,
                     const DesignOptions& options) {
  cal.validate();
  oc.validate();
  if (guides < 2) invalid("a lattice needs at least 2 guides");
  if (!(options.speeds.v_min < options.speeds.v_max)) {
    invalid("v_min must be < v_max");
  }

  std::vector<double> spacing(guides - 1);
  for (std::size_t n = 0; n + 1 < guides; ++n) {
    try {
      spacing[n] = spacing_for_coupling(cal, coupling(n, params.g()));
    } catch (const Error& e) {
      throw Error(e.kind(), "guide " + std::to_string(n) + ": " + e.what());
    }
  }

  std::vector<double> position_um(guides, 0.0);
  for (std::size_t n = 1; n < guides; ++n) {
    position_um[n] = position_um[n - 1] + spacing[n - 1];
  }

  const double k = oc.wavenumber();
  std::vector<double> gradient(guides, 0.0);
  if (options.compensate) {
    for (std::size_t n = 0; n < guides; ++n) {
      const double target = static_cast<double>(n) * params.omega() / k;
      const double tilt = oc.n_eff_base * position_um[n] * 1e-3 / oc.radius_mm;
      gradient[n] = target - tilt;
    }
    // The slowest-written guide sits at the base index.
    const double floor = *std::min_element(gradient.begin(), gradient.end());
    for (double& v : gradient) v -= floor;
  }

  LatticeRecipe recipe;
  recipe.rows.resize(guides);
  for (std::size_t n = 0; n < guides; ++n) {
    RecipeRow& row = recipe.rows[n];
    row.guide = n;
    row.position_um = position_um[n];
    row.delta_n_eff_gradient = gradient[n];
    const double half = 0.5 * params.omega0();
    row.delta_n_eff_detuning = (n % 2 == 0 ? half : -half) / k;
    row.delta_n_eff = row.delta_n_eff_gradient + row.delta_n_eff_detuning;
    row.writing_speed = oc.v_base + row.delta_n_eff / oc.dn_dv;
    row.achieved_detuning = k * row.delta_n_eff_detuning;
    if (n + 1 < guides) {
      row.spacing_um = spacing[n];
      row.achieved_kappa = cal.coupling_at(spacing[n]);
      row.achieved_omega = k * (gradient[n + 1] - gradient[n]) +
                           gradient_omega(oc, spacing[n], oc.n_eff_base);
    }
    if (row.writing_speed < options.speeds.v_min ||
        row.writing_speed > options.speeds.v_max) {
      throw Error(ErrorKind::Feasibility,
                  "guide " + std::to_string(n) + ": writing speed " +
                      num(row.writing_speed) + " mm/s outside [" +
                      num(options.speeds.v_min) + ", " +
                      num(options.speeds.v_max) + "] mm/s");
    }
  }
  return recipe;
}

double RecipeReport::max_deviation() const {
  return std::max({max_kappa_deviation, max_omega_deviation,
                   max_detuning_deviation, max_site_energy_deviation});
}

RecipeReport verify_recipe(const LatticeRecipe& recipe,
                           const RabiParams& params,
                           const CouplingCalibration& cal,
                           const OpticalConstants& oc) {
  const auto& rows = recipe.rows;
  const std::size_t guides = rows.size();
  const double k = oc.wavenumber();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();

  RecipeReport report;
  report.guides.resize(guides);
  if (guides == 0) return report;

  std::vector<double> x_um(guides, 0.0);
  for (std::size_t n = 1; n < guides; ++n) {
    const auto& d = rows[n - 1].spacing_um;
    x_um[n] = x_um[n - 1] + (d ? *d : nan);
  }
  auto tilt = [&](std::size_t n) {
    return oc.n_eff_base * x_um[n] * 1e-3 / oc.radius_mm;
  };
  const double index_from_speed_0 = (rows[0].writing_speed - oc.v_base) * oc.dn_dv;
  const double half = 0.5 * params.omega0();

  auto record = [inf](double& slot, double& max_slot, double value) {
    slot = value;
    max_slot = std::max(max_slot, std::isfinite(value) ? std::abs(value) : inf);
  };

  for (std::size_t n = 0; n < guides; ++n) {
    const RecipeRow& row = rows[n];
    GuideDeviation& dev = report.guides[n];
    dev.guide = n;

    if (n + 1 < guides) {
      const double target_kappa = coupling(n, params.g());
      const double d = row.spacing_um.value_or(nan);
      const double kappa = cal.coupling_at(d);
      record(dev.kappa, report.max_kappa_deviation,
             target_kappa > 0.0 ? kappa / target_kappa - 1.0 : kappa);

      const double step =
          k * (rows[n + 1].delta_n_eff_gradient - row.delta_n_eff_gradient);
      const double omega = step + gradient_omega(oc, d, oc.n_eff_base);
      record(dev.omega, report.max_omega_deviation,
             omega / params.omega() - 1.0);

      report.neff_d_product_um.push_back(omega * oc.radius_mm *
                                         oc.wavelength_nm * 1e-6 /
                                         (2.0 * std::numbers::pi) * 1e3);
      report.uncompensated_omega.push_back(
          gradient_omega(oc, d, oc.n_eff_base));
    }

    const double target_detuning = n % 2 == 0 ? half : -half;
    const double detuning = k * row.delta_n_eff_detuning;
    record(dev.detuning, report.max_detuning_deviation,
           half != 0.0 ? (detuning - target_detuning) / std::abs(half)
                       : detuning);

    const double index_from_speed = (row.writing_speed - oc.v_base) * oc.dn_dv;
    const double beta = k * (index_from_speed - index_from_speed_0 + tilt(n) -
                             tilt(0));
    const double target_beta = static_cast<double>(n) * params.omega() +
                               target_detuning - half;
    record(dev.site_energy, report.max_site_energy_deviation,
           (beta - target_beta) / params.omega());

    report.uncompensated_delta_beta.push_back(k * tilt(n));
    report.target_delta_beta.push_back(static_cast<double>(n) * params.omega());
    report.achieved_delta_beta.push_back(
        k * (row.delta_n_eff_gradient - rows[0].delta_n_eff_gradient +
             tilt(n) - tilt(0)));
  }
  return report;
}

}  // namespace dscsim::lattice
