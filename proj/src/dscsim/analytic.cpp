#include "dscsim/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dscsim/error.hpp"

namespace dscsim::analytic {

LangFirsovSolution lang_firsov(const RabiParams& params) {
  if (params.omega0() != 0.0) {
    std::ostringstream os;
    os << "closed form requires omega0 = 0 (got " << params.omega0() << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  return {params.g() / params.omega(),
          2.0 * std::numbers::pi / params.omega()};
}

double lf_period(const RabiParams& params) { return lang_firsov(params).period; }

double lf_revival(const RabiParams& params, double t) {
  return std::exp(-lf_mean_photon(params, t));
}

double lf_mean_photon(const RabiParams& params, double t) {
  const auto lf = lang_firsov(params);
  const double s = std::sin(0.5 * params.omega() * t);
  return 4.0 * lf.beta * lf.beta * s * s;
}

double jc_population(double g, double t) {
  const double c = std::cos(g * t);
  return c * c;
}

}  // namespace dscsim::analytic
