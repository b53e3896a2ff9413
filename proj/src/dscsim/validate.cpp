#include "dscsim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "dscsim/analytic.hpp"
#include "dscsim/dynamics.hpp"
#include "dscsim/full_rabi.hpp"
#include "dscsim/lattice.hpp"

namespace dscsim {

namespace {

constexpr double kPaperOmega = 0.23;
constexpr double kPaperG = 0.15;

// Portable uniform draws: std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

FullState random_state(Draws& draws, std::size_t n) {
  ComplexVector e(n), g(n);
  double norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = {draws.uniform(-1, 1), draws.uniform(-1, 1)};
    g[k] = {draws.uniform(-1, 1), draws.uniform(-1, 1)};
    norm += std::norm(e[k]) + std::norm(g[k]);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& z : e) z *= scale;
  for (auto& z : g) z *= scale;
  return {std::move(e), std::move(g)};
}

RabiParams random_params(Draws& draws, std::size_t n) {
  const double omega0 = draws.uniform(-0.3, 0.3);
  const double omega = draws.uniform(0.1, 0.5);
  const double g = draws.uniform(0.0, 0.3);
  return {omega0, omega, g, n};
}

double max_amplitude_difference(const FullState& a, const FullState& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.n_trunc(); ++k) {
    m = std::max(m, std::abs(a.amp_e()[k] - b.amp_e()[k]));
    m = std::max(m, std::abs(a.amp_g()[k] - b.amp_g()[k]));
  }
  return m;
}

PropertyResult below(std::string name, double metric, double bound) {
  return {std::move(name), metric < bound, metric, bound, "<"};
}

PropertyResult above(std::string name, double metric, double bound) {
  return {std::move(name), metric > bound, metric, bound, ">"};
}

RabiParams paper_params(double omega0, std::size_t n) {
  return {omega0, kPaperOmega, kPaperG, n};
}

PropertyResult chain_spectral_residual() {
  Draws draws(11);
  double worst = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const RabiParams p = trial == 0 ? paper_params(0.0, 64)
                                    : random_params(draws, 64);
    for (ParityChain chain : {ParityChain::C, ParityChain::F}) {
      const auto h = build_chain(p, chain);
      const std::size_t n = h.size();
      const double scale = h.max_abs_entry();
      for (std::size_t k = 0; k < n; ++k) {
        ComplexVector v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = h.eigenvector(r, k);
        const auto hv = h.apply(v);
        for (std::size_t r = 0; r < n; ++r) {
          const double res = std::abs(hv[r] - h.eigenvalues()[k] * v[r]);
          worst = std::max(worst, res / scale);
        }
        for (std::size_t j = 0; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t r = 0; r < n; ++r) {
            dot += h.eigenvector(r, k) * h.eigenvector(r, j);
          }
          worst = std::max(worst, std::abs(dot - (j == k ? 1.0 : 0.0)));
        }
      }
    }
  }
  return below("chain_spectral_residual", worst, 1e-10);
}

PropertyResult parity_sign_symmetry() {
  Draws draws(12);
  double mismatches = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RabiParams p = random_params(draws, 32);
    const auto f = build_chain(p, ParityChain::F);
    const auto c = build_chain(p.with_omega0(-p.omega0()), ParityChain::C);
    if (!std::ranges::equal(f.diag(), c.diag()) ||
        !std::ranges::equal(f.offdiag(), c.offdiag())) {
      mismatches += 1.0;
    }
  }
  return below("parity_sign_symmetry_mismatches", mismatches, 0.5);
}

PropertyResult decompose_roundtrip() {
  Draws draws(13);
  double mismatches = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 40);
    const FullState s = random_state(draws, n);
    const auto [c, f] = decompose(s);
    if (!(recompose(c, f) == s)) mismatches += 1.0;
    if (std::abs(c.weight() + f.weight() - 1.0) > 1e-12) mismatches += 1.0;
  }
  return below("decompose_recompose_roundtrip_mismatches", mismatches, 0.5);
}

struct LongRunMetrics {
  double norm_drift = 0.0;
  double energy_drift = 0.0;
};

LongRunMetrics long_runs() {
  Draws draws(14);
  LongRunMetrics m;
  for (int trial = 0; trial < 20; ++trial) {
    const RabiParams p = random_params(draws, 32);
    const FullState psi0 = random_state(draws, 32);
    const Trajectory traj = run_trajectory(p, psi0, 300.0, 1.0);
    const double e0 = energy(p, psi0);
    for (const auto& s : traj.states) {
      m.norm_drift = std::max(m.norm_drift, std::abs(std::sqrt(s.norm_squared()) - 1.0));
      m.energy_drift =
          std::max(m.energy_drift, std::abs(energy(p, s) - e0) / std::abs(e0));
    }
  }
  return m;
}

PropertyResult oracle_equivalence() {
  Draws draws(15);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const RabiParams p = random_params(draws, 32);
    const FullState psi0 = random_state(draws, 32);
    const double t = draws.uniform(0.0, 60.0);
    const double pts[] = {t};
    const auto chain = run_trajectory_on(p, psi0, pts).states.front();
    const auto dense = full_rabi_reference(p, psi0, t);
    worst = std::max(worst, max_amplitude_difference(chain, dense));
  }
  return below("oracle_equivalence_max_amplitude_diff", worst, 1e-8);
}

std::vector<PropertyResult> lang_firsov_checks(const ValidationHooks& hooks) {
  const RabiParams p = paper_params(0.0, 64);
  const double period = 2.0 * std::numbers::pi / p.omega();
  const FullState e0 = FullState::fock(Qubit::Excited, 0, 64);
  const Trajectory traj = run_trajectory(p, e0, 2.0 * period, 0.01);

  double revival_gap = 0.0;
  double photon_gap = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.t_grid[i];
    revival_gap = std::max(
        revival_gap, std::abs(traj.observables[i].p_revival - hooks.lf_revival(p, t)));
    photon_gap = std::max(photon_gap, std::abs(traj.observables[i].mean_photon -
                                               hooks.lf_mean_photon(p, t)));
  }

  // Independent check against the dense model at scattered distances.
  const FullRabiReference reference(p);
  Draws draws(16);
  double dense_gap = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = draws.uniform(0.0, 2.0 * period);
    const FullState s = reference.evolve(e0, t);
    dense_gap = std::max(dense_gap, std::abs(revival_probability(s, e0) -
                                             hooks.lf_revival(p, t)));
    dense_gap = std::max(dense_gap, std::abs(mean_photon_number(s) -
                                             hooks.lf_mean_photon(p, t)));
  }

  const double half[] = {0.5 * period};
  const auto mid = run_trajectory_on(p, e0, half).observables.front();
  const double constants_gap = std::max(std::abs(mid.p_revival - 0.1824),
                                        std::abs(mid.mean_photon - 1.7013));

  return {below("lf_revival_vs_propagation", revival_gap, 1e-6),
          below("lf_mean_photon_vs_propagation", photon_gap, 1e-6),
          below("lf_closed_forms_vs_full_rabi", dense_gap, 1e-6),
          below("lf_half_period_constants", constants_gap, 1e-4)};
}

PropertyResult periodicity() {
  const RabiParams p = paper_params(0.0, 48);
  const double period = 2.0 * std::numbers::pi / p.omega();
  const FullState e0 = FullState::fock(Qubit::Excited, 0, 48);
  const double pts[] = {period, 2 * period, 3 * period};
  const auto traj = run_trajectory_on(p, e0, pts);
  double worst = 1.0;
  for (const auto& o : traj.observables) worst = std::min(worst, o.p_revival);
  return above("periodicity_min_revival_at_kT", worst, 0.99);
}

PropertyResult truncation_convergence() {
  double worst = 0.0;
  for (double omega0 : {0.0, 0.04, 0.08}) {
    const RabiParams small = paper_params(omega0, 32);
    const RabiParams large = paper_params(omega0, 64);
    const double period = 2.0 * std::numbers::pi / small.omega();
    const auto a = run_trajectory(small, FullState::fock(Qubit::Excited, 0, 32),
                                  2.0 * period, 0.05);
    const auto b = run_trajectory(large, FullState::fock(Qubit::Excited, 0, 64),
                                  2.0 * period, 0.05);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& x = a.observables[i];
      const auto& y = b.observables[i];
      worst = std::max({worst, std::abs(x.p_excited - y.p_excited),
                        std::abs(x.p_revival - y.p_revival),
                        std::abs(x.mean_photon - y.mean_photon)});
    }
  }
  return below("truncation_convergence_32_vs_64", worst, 1e-6);
}

PropertyResult jc_limit() {
  const double g = 0.001;
  const RabiParams p(1.0, 1.0, g, 16);
  const FullState e0 = FullState::fock(Qubit::Excited, 0, 16);
  const double span = std::numbers::pi / g;
  const auto traj = run_trajectory(p, e0, span, span / 4000.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    worst = std::max(worst, std::abs(traj.observables[i].p_excited -
                                     analytic::jc_population(g, traj.t_grid[i])));
  }
  return below("jc_limit_sup_deviation", worst, 1e-4);
}

PropertyResult design_consistency() {
  double worst = 0.0;
  const auto cal = lattice::CouplingCalibration::standard();
  const lattice::OpticalConstants oc;
  for (double omega0 : {-0.08, 0.0, 0.04, 0.08}) {
    const RabiParams p = paper_params(omega0, 15);
    const auto recipe = lattice::design(p, cal, oc, 15);
    worst = std::max(worst, lattice::verify_recipe(recipe, p, cal, oc).max_deviation());
  }
  return below("design_verify_self_consistency", worst, 1e-6);
}

}  // namespace

ValidationHooks default_hooks() {
  return {analytic::lf_revival, analytic::lf_mean_photon};
}

bool ValidationReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

const PropertyResult* ValidationReport::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string ValidationReport::to_text() const {
  std::string out;
  char line[160];
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s  %-42s %.3e %s %.1e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.metric,
                  r.comparison.c_str(), r.bound);
    out += line;
    if (!r.passed) ++failed;
  }
  std::snprintf(line, sizeof line, "%zu/%zu properties passed\n",
                results.size() - failed, results.size());
  out += line;
  return out;
}

ValidationReport run_validation(const ValidationHooks& hooks) {
  ValidationReport report;
  auto& r = report.results;
  r.push_back(chain_spectral_residual());
  r.push_back(parity_sign_symmetry());
  r.push_back(decompose_roundtrip());
  const auto runs = long_runs();
  r.push_back(below("unitarity_norm_drift_300mm", runs.norm_drift, 1e-10));
  r.push_back(below("energy_conservation_relative", runs.energy_drift, 1e-9));
  r.push_back(oracle_equivalence());
  for (auto& lf : lang_firsov_checks(hooks)) r.push_back(std::move(lf));
  r.push_back(periodicity());
  r.push_back(truncation_convergence());
  r.push_back(jc_limit());
  r.push_back(design_consistency());
  return report;
}

}  // namespace dscsim
