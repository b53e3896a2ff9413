#pragma once

#include "dscsim/model.hpp"

// Closed forms for the degenerate-qubit case (omega0 = 0), where a
// displacement transformation turns the model into two shifted oscillators,
// and for the weak-coupling resonant limit. All results assume the initial
// state |e,0>.
namespace dscsim::analytic {

struct LangFirsovSolution {
  double beta;    // g / omega
  double period;  // 2 pi / omega, mm
};

/// Throws Error(Domain) unless omega0 == 0.
LangFirsovSolution lang_firsov(const RabiParams& params);

double lf_period(const RabiParams& params);

/// exp(-4 beta^2 sin^2(omega t / 2))
double lf_revival(const RabiParams& params, double t);

/// 4 beta^2 sin^2(omega t / 2)
double lf_mean_photon(const RabiParams& params, double t);

/// Vacuum Rabi oscillation cos^2(g t); only meaningful for g << omega0 = omega.
double jc_population(double g, double t);

}  // namespace dscsim::analytic
