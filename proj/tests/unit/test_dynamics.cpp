#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dscsim/dynamics.hpp"
#include "dscsim/error.hpp"
#include "test_support.hpp"

using namespace dscsim;

namespace {
const double kPeriod = 2.0 * std::numbers::pi / 0.23;
}

TEST_CASE("build_chain entries") {
  const RabiParams p(0.04, 0.23, 0.15, 15);
  const auto c = build_chain(p, ParityChain::C);
  REQUIRE(c.size() == 15);
  REQUIRE(c.offdiag().size() == 14);
  CHECK(c.diag()[0] == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(c.diag()[1] == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(c.diag()[2] == doctest::Approx(0.48).epsilon(1e-15));
  for (std::size_t n = 0; n < 15; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(c.diag()[n] == doctest::Approx(sign * 0.02 + 0.23 * n).epsilon(1e-14));
  }
  for (std::size_t n = 0; n < 14; ++n) {
    CHECK(c.offdiag()[n] == coupling(n, 0.15));
  }
  const auto f = build_chain(p, ParityChain::F);
  CHECK(f.diag()[0] == doctest::Approx(-0.02).epsilon(1e-15));
  CHECK(f.chain() == ParityChain::F);
}

TEST_CASE("F chain at omega0 equals C chain at -omega0, bit for bit") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const RabiParams p = test::random_params(rng, 24);
    const auto f = build_chain(p, ParityChain::F);
    const auto c = build_chain(p.with_omega0(-p.omega0()), ParityChain::C);
    CHECK(std::ranges::equal(f.diag(), c.diag()));
    CHECK(std::ranges::equal(f.offdiag(), c.offdiag()));
  }
}

TEST_CASE("spectrum of uncoupled and degenerate-qubit chains") {
  SUBCASE("g = 0 gives 0..n-1 exactly") {
    const auto h = build_chain(RabiParams(0.0, 1.0, 0.0, 12), ParityChain::C);
    for (std::size_t k = 0; k < 12; ++k) CHECK(h.eigenvalues()[k] == static_cast<double>(k));
  }
  SUBCASE("omega0 = 0 levels are equally spaced by omega") {
    const auto h = build_chain(RabiParams(0.0, 0.23, 0.15, 64), ParityChain::C);
    for (std::size_t k = 0; k < 20; ++k) {
      CHECK(h.eigenvalues()[k + 1] - h.eigenvalues()[k] ==
            doctest::Approx(0.23).epsilon(1e-6 / 0.23));
    }
    CHECK(std::abs(h.eigenvalues()[0] + 0.15 * 0.15 / 0.23) < 1e-9);
  }
}

TEST_CASE("propagate") {
  const RabiParams paper(0.0, 0.23, 0.15, 32);
  const auto h = build_chain(paper, ParityChain::C);

  SUBCASE("t = 0 is the identity") {
    std::mt19937_64 rng(5);
    const auto [c, f] = decompose(test::random_state(rng, 32));
    const auto out = ChainPropagator(h, c).at(0.0);
    for (std::size_t k = 0; k < 32; ++k) CHECK(out.amp()[k] == c.amp()[k]);
    CHECK(propagate(h, c, 0.0).amp()[3] == c.amp()[3]);
  }
  SUBCASE("g = 0 only accumulates phase") {
    const auto h0 = build_chain(RabiParams(0.1, 0.23, 0.0, 10), ParityChain::C);
    for (double t : {0.5, 13.0, 250.0}) {
      const auto out = propagate(h0, ChainState::site(4, 10, ParityChain::C), t);
      CHECK(std::abs(out.amp()[4]) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(std::arg(out.amp()[4] * std::polar(1.0, h0.diag()[4] * t))) < 1e-9);
    }
  }
  SUBCASE("revival after one period at omega0 = 0") {
    const auto out = propagate(h, ChainState::site(0, 32, ParityChain::C), kPeriod);
    CHECK(std::norm(out.amp()[0]) > 0.99);
  }
  SUBCASE("norm preserved over ten periods") {
    std::mt19937_64 rng(6);
    const auto [c, f] = decompose(test::random_state(rng, 32));
    const ChainPropagator prop(h, c);
    for (int k = 1; k <= 10; ++k) {
      CHECK(std::abs(prop.at(k * kPeriod).weight() - c.weight()) < 1e-10 * c.weight());
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(propagate(h, ChainState::site(0, 16, ParityChain::C), 1.0), Error);
    CHECK_THROWS_AS(propagate(h, ChainState::site(0, 32, ParityChain::C), -1.0), Error);
  }
}

TEST_CASE("observables on fixed states") {
  const auto e0 = FullState::fock(Qubit::Excited, 0, 8);
  const auto g3 = FullState::fock(Qubit::Ground, 3, 8);
  CHECK(population_excited(e0) == 1.0);
  CHECK(mean_photon_number(e0) == 0.0);
  CHECK(mean_photon_number(g3) == 3.0);
  CHECK(revival_probability(e0, e0) == 1.0);
  CHECK(revival_probability(g3, e0) == 0.0);

  ComplexVector a(8), b(8);
  a[0] = b[0] = 1.0 / std::sqrt(2.0);
  const FullState mix(a, b);
  CHECK(population_excited(mix) == doctest::Approx(0.5).epsilon(1e-15));
  const auto o = observe(mix, e0);
  CHECK(o.p_ground == doctest::Approx(0.5));
  CHECK(o.p_revival == doctest::Approx(0.5));
  CHECK(o.photon_distribution[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(revival_probability(e0, FullState::fock(Qubit::Excited, 0, 4)), Error);
}

TEST_CASE("time grid") {
  const auto grid = time_grid(60.0, 0.1);
  CHECK(grid.size() == 601);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(60.0));
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(time_grid(1.0, 0.3).size() == 4);
  CHECK_THROWS_AS(time_grid(1.0, 0.0), Error);
  CHECK_THROWS_AS(time_grid(0.05, 0.1), Error);
}

TEST_CASE("run_trajectory at the paper's degenerate-qubit point") {
  const RabiParams p(0.0, 0.23, 0.15, 64);
  const auto e0 = FullState::fock(Qubit::Excited, 0, 64);
  const auto traj = run_trajectory(p, e0, 60.0, 0.1);
  REQUIRE(traj.size() == 601);

  for (const auto& o : traj.observables) {
    double total = 0.0;
    for (double pn : o.photon_distribution) total += pn;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(o.p_excited >= 0.0);
    CHECK(o.p_excited <= 1.0 + 1e-12);
    CHECK(o.p_revival <= 1.0 + 1e-12);
  }

  // Two full bounces: revival peaks near T and 2T on the 0.1 mm grid.
  auto peak_in = [&](double lo, double hi) {
    double best = -1.0, where = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double t = traj.t_grid[i];
      if (t >= lo && t <= hi && traj.observables[i].p_revival > best) {
        best = traj.observables[i].p_revival;
        where = t;
      }
    }
    return std::pair{where, best};
  };
  const auto [t1, p1] = peak_in(0.5 * kPeriod, 1.5 * kPeriod);
  const auto [t2, p2] = peak_in(1.5 * kPeriod, 2.1 * kPeriod);
  CHECK(t1 == doctest::Approx(kPeriod).epsilon(0.1 / kPeriod));
  CHECK(t2 == doctest::Approx(2 * kPeriod).epsilon(0.1 / kPeriod));
  CHECK(p1 > 0.99);
  CHECK(p2 > 0.99);
  CHECK_FALSE(traj.truncation_contaminated());
}

TEST_CASE("half-period regression values") {
  // Frozen from an independent dense diagonalisation (numpy eigh, 64 levels).
  const RabiParams p(0.0, 0.23, 0.15, 64);
  const auto e0 = FullState::fock(Qubit::Excited, 0, 64);
  const double half[] = {0.5 * kPeriod};
  const auto o = run_trajectory_on(p, e0, half).observables.front();
  CHECK(o.p_excited == doctest::Approx(0.5166425321382624).epsilon(1e-9));
  CHECK(o.p_revival == doctest::Approx(0.18244194768891175).epsilon(1e-9));
  CHECK(o.mean_photon == doctest::Approx(1.7013232514177687).epsilon(1e-9));
}

TEST_CASE("frozen populations without coupling") {
  const RabiParams p(0.3, 0.23, 0.0, 10);
  const auto traj = run_trajectory(p, FullState::fock(Qubit::Ground, 3, 10), 50.0, 1.0);
  for (const auto& o : traj.observables) {
    CHECK(o.photon_distribution[3] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(o.p_ground == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("imperfect bouncing at omega0 = 0.04") {
  const RabiParams p(0.04, 0.23, 0.15, 64);
  const auto traj =
      run_trajectory(p, FullState::fock(Qubit::Excited, 0, 64), 2.6 * kPeriod, 0.01);
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.t_grid[i];
    const double pr = traj.observables[i].p_revival;
    if (t > 0.5 * kPeriod && t < 1.5 * kPeriod) first = std::max(first, pr);
    if (t > 1.5 * kPeriod && t < 2.5 * kPeriod) second = std::max(second, pr);
  }
  CHECK(second < first);
}

TEST_CASE("unitarity and energy conservation on random draws") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const RabiParams p = test::random_params(rng, 32);
    const FullState psi0 = test::random_state(rng, 32);
    const auto traj = run_trajectory(p, psi0, 300.0, 2.5);
    const double e0 = energy(p, psi0);
    for (const auto& s : traj.states) {
      CHECK(std::abs(std::sqrt(s.norm_squared()) - 1.0) < 1e-10);
      CHECK(std::abs(energy(p, s) - e0) < 1e-9 * std::abs(e0));
    }
  }
}

TEST_CASE("truncation sentinel") {
  const RabiParams small(0.0, 0.23, 0.15, 15);
  const auto traj = run_trajectory(small, FullState::fock(Qubit::Excited, 0, 15), 60.0, 0.1);
  CHECK(traj.max_edge_occupation > kEdgeOccupationThreshold);
  CHECK(traj.truncation_contaminated());
}

TEST_CASE("two-chain initial states") {
  ComplexVector a(16), b(16);
  a[0] = 0.6;
  b[0] = Complex(0.0, 0.8);
  const FullState psi0(a, b);
  const RabiParams p(0.1, 0.23, 0.15, 16);
  const auto traj = run_trajectory(p, psi0, 10.0, 5.0);
  CHECK(traj.observables.front().p_excited == doctest::Approx(0.36));
  CHECK(traj.observables.front().p_revival == doctest::Approx(1.0));
}
