#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dscsim/error.hpp"
#include "dscsim/lattice.hpp"

using namespace dscsim;
using namespace dscsim::lattice;

namespace {
const RabiParams kPaper(0.0, 0.23, 0.15, 15);
const CouplingCalibration kCal = CouplingCalibration::standard();
const OpticalConstants kOptics;
}

TEST_CASE("standard calibration") {
  CHECK(kCal.kappa0 == doctest::Approx(0.15));
  CHECK(kCal.d_ref == 14.0);
  CHECK(kCal.gamma == doctest::Approx(0.1783146844334634).epsilon(1e-12));
  CHECK(kCal.coupling_at(14.0) == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(kCal.coupling_at(6.6) == doctest::Approx(0.15 * std::sqrt(14.0)).epsilon(1e-12));
  CHECK_THROWS_AS(CouplingCalibration::from_endpoints(6.0, 0.1, 8.0, 0.2), Error);
  CHECK_THROWS_AS(CouplingCalibration::from_endpoints(14.0, 0.2, 6.6, 0.1), Error);
}

TEST_CASE("spacing_for_coupling") {
  CHECK(spacing_for_coupling(kCal, 0.15) == doctest::Approx(14.0).epsilon(1e-12));
  CHECK(spacing_for_coupling(kCal, 0.15 * std::sqrt(14.0)) == doctest::Approx(6.6).epsilon(1e-12));
  for (double kappa = 0.16; kappa < 0.56; kappa += 0.027) {
    CHECK(kCal.coupling_at(spacing_for_coupling(kCal, kappa)) ==
          doctest::Approx(kappa).epsilon(1e-12));
  }
  CHECK_THROWS_WITH_AS(spacing_for_coupling(kCal, 0.1), doctest::Contains("d_max"), Error);
  CHECK_THROWS_WITH_AS(spacing_for_coupling(kCal, 0.6), doctest::Contains("d_min"), Error);
  CHECK_THROWS_AS(spacing_for_coupling(kCal, 0.0), Error);
  try {
    (void)spacing_for_coupling(kCal, 0.6);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
  }
}

TEST_CASE("gradient_omega") {
  CHECK(gradient_omega(kOptics, 10.39, 1.45) == doctest::Approx(0.230062773715674).epsilon(1e-12));
  const double a = gradient_omega(kOptics, 5.0, 1.45);
  CHECK(gradient_omega(kOptics, 10.0, 1.45) == doctest::Approx(2 * a).epsilon(1e-14));
  CHECK(gradient_omega(kOptics, 5.0, 2.9) == doctest::Approx(2 * a).epsilon(1e-14));
  OpticalConstants longer = kOptics;
  longer.radius_mm *= 2;
  CHECK(gradient_omega(longer, 5.0, 1.45) == doctest::Approx(a / 2).epsilon(1e-14));
  CHECK(kOptics.wavenumber() == doctest::Approx(2 * std::numbers::pi / 633e-6).epsilon(1e-14));
}

TEST_CASE("fifteen-guide design at omega0 = 0") {
  const auto recipe = design(kPaper, kCal, kOptics, 15);
  REQUIRE(recipe.rows.size() == 15);
  CHECK_FALSE(recipe.rows.back().spacing_um.has_value());
  CHECK_FALSE(recipe.rows.back().achieved_kappa.has_value());

  const double frozen[] = {14.0,    12.0564, 10.9195, 10.1128, 9.4871, 8.9758, 8.5436,
                           8.1692,  7.8389,  7.5435,  7.2762,  7.0322, 6.8078, 6.6};
  for (std::size_t n = 0; n < 14; ++n) {
    const double d = *recipe.rows[n].spacing_um;
    CHECK(d == doctest::Approx(frozen[n]).epsilon(1e-4 / frozen[n]));
    CHECK(d >= 6.6 - 1e-9);
    CHECK(d <= 14.0 + 1e-9);
    if (n > 0) CHECK(d < *recipe.rows[n - 1].spacing_um);
    CHECK(*recipe.rows[n].achieved_kappa == doctest::Approx(coupling(n, 0.15)).epsilon(1e-12));
    CHECK(*recipe.rows[n].achieved_omega == doctest::Approx(0.23).epsilon(1e-10));
  }
  double vmin = 1e9, vmax = -1e9;
  for (const auto& row : recipe.rows) {
    vmin = std::min(vmin, row.writing_speed);
    vmax = std::max(vmax, row.writing_speed);
    CHECK(row.delta_n_eff_detuning == 0.0);
  }
  CHECK(vmin == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(vmax <= 14.0);
  CHECK(recipe.rows[1].position_um == doctest::Approx(14.0));

  const auto report = verify_recipe(recipe, kPaper, kCal, kOptics);
  CHECK(report.max_deviation() < 1e-6);
  CHECK(report.passes());
}

TEST_CASE("detuning layer at omega0 = 0.08") {
  const RabiParams p = kPaper.with_omega0(0.08);
  const auto flat = design(kPaper, kCal, kOptics, 15);
  const auto tuned = design(p, kCal, kOptics, 15);
  for (std::size_t n = 0; n < 15; ++n) {
    const double dv = tuned.rows[n].writing_speed - flat.rows[n].writing_speed;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(dv * sign == doctest::Approx(0.26865354393911933).epsilon(1e-9));
    CHECK(std::abs(dv) <= 0.3);
    CHECK(tuned.rows[n].achieved_detuning == doctest::Approx(sign * 0.04).epsilon(1e-12));
  }
  CHECK(verify_recipe(tuned, p, kCal, kOptics).passes());
}

TEST_CASE("uncompensated lattice follows the spacing") {
  DesignOptions off;
  off.compensate = false;
  const auto recipe = design(kPaper, kCal, kOptics, 15, off);
  std::vector<double> x, y;
  for (std::size_t n = 0; n < 14; ++n) {
    x.push_back(*recipe.rows[n].spacing_um);
    y.push_back(*recipe.rows[n].achieved_omega);
    CHECK(recipe.rows[n].delta_n_eff_gradient == 0.0);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  CHECK(sxy * sxy / (sxx * syy) > 0.999);
  const auto report = verify_recipe(recipe, kPaper, kCal, kOptics);
  CHECK_FALSE(report.passes());
  CHECK(report.max_omega_deviation > 0.1);
}

TEST_CASE("verify flags a hand-edited spacing") {
  auto recipe = design(kPaper, kCal, kOptics, 15);
  *recipe.rows[3].spacing_um += 0.5;
  const auto report = verify_recipe(recipe, kPaper, kCal, kOptics);
  CHECK_FALSE(report.passes());
  CHECK(report.guides[3].kappa == doctest::Approx(-0.08529835893243465).epsilon(1e-9));
  CHECK(std::abs(report.guides[0].kappa) < 1e-12);
}

TEST_CASE("design rejects unreachable and infeasible targets") {
  try {
    (void)design(RabiParams(0.0, 0.23, 10.0, 15), kCal, kOptics, 15);
    FAIL("expected a range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
    CHECK(std::string(e.what()).starts_with("guide 0: "));
  }
  DesignOptions narrow;
  narrow.speeds = {9.9, 10.5};
  try {
    (void)design(kPaper, kCal, kOptics, 15, narrow);
    FAIL("expected a feasibility error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Feasibility);
  }
  CHECK_THROWS_AS(design(kPaper, kCal, kOptics, 1), Error);
}

TEST_CASE("two-guide lattice") {
  const auto recipe = design(kPaper, kCal, kOptics, 2);
  REQUIRE(recipe.rows.size() == 2);
  CHECK(*recipe.rows[0].spacing_um == doctest::Approx(14.0));
  CHECK(verify_recipe(recipe, kPaper, kCal, kOptics).passes());
}
