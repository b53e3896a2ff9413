#include "dscsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "dscsim/error.hpp"

namespace dscsim {

ChainHamiltonian::ChainHamiltonian(std::vector<double> diag,
                                   std::vector<double> offdiag,
                                   ParityChain chain)
    : diag_(std::move(diag)),
      offdiag_(std::move(offdiag)),
      chain_(chain),
      eigen_(solve_symmetric_tridiagonal(diag_, offdiag_)) {}

double ChainHamiltonian::max_abs_entry() const noexcept {
  double m = 0.0;
  for (double v : diag_) m = std::max(m, std::abs(v));
  for (double v : offdiag_) m = std::max(m, std::abs(v));
  return m;
}

ComplexVector ChainHamiltonian::apply(std::span<const Complex> x) const {
  const std::size_t n = size();
  if (x.size() != n) {
    throw Error(ErrorKind::Dimension, "vector length " +
                                          std::to_string(x.size()) +
                                          " does not match chain size " +
                                          std::to_string(n));
  }
  ComplexVector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = diag_[k] * x[k];
    if (k + 1 < n) acc += offdiag_[k] * x[k + 1];
    if (k > 0) acc += offdiag_[k - 1] * x[k - 1];
    y[k] = acc;
  }
  return y;
}

ChainHamiltonian build_chain(const RabiParams& params, ParityChain chain) {
  const std::size_t n = params.n_trunc();
  const double sign = chain == ParityChain::C ? 1.0 : -1.0;
  const double half_split = 0.5 * params.omega0();
  std::vector<double> diag(n), offdiag(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double alternating = k % 2 == 0 ? half_split : -half_split;
    diag[k] = sign * alternating + static_cast<double>(k) * params.omega();
  }
  for (std::size_t k = 0; k + 1 < n; ++k) offdiag[k] = coupling(k, params.g());
  return {std::move(diag), std::move(offdiag), chain};
}

ChainPropagator::ChainPropagator(const ChainHamiltonian& hamiltonian,
                                 const ChainState& psi0)
    : hamiltonian_(&hamiltonian),
      chain_(psi0.chain()),
      initial_(psi0.amp().begin(), psi0.amp().end()) {
  const std::size_t n = hamiltonian.size();
  if (psi0.n_trunc() != n) {
    throw Error(ErrorKind::Dimension,
                "chain state has " + std::to_string(psi0.n_trunc()) +
                    " sites but the Hamiltonian has " + std::to_string(n));
  }
  const auto amp = psi0.amp();
  coefficients_.assign(n, Complex{});
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t row = 0; row < n; ++row) {
      acc += hamiltonian.eigenvector(row, k) * amp[row];
    }
    coefficients_[k] = acc;
  }
}

ComplexVector ChainPropagator::amplitudes_at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::InvalidArgument,
                "propagation distance must be finite and >= 0");
  }
  if (t == 0.0) return initial_;
  const std::size_t n = hamiltonian_->size();
  const auto lambda = hamiltonian_->eigenvalues();
  std::vector<Complex> phased(n);
  for (std::size_t k = 0; k < n; ++k) {
    phased[k] = std::polar(1.0, -lambda[k] * t) * coefficients_[k];
  }
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (phased[k] == Complex{}) continue;
    for (std::size_t row = 0; row < n; ++row) {
      out[row] += hamiltonian_->eigenvector(row, k) * phased[k];
    }
  }
  return out;
}

ChainState ChainPropagator::at(double t) const {
  return {amplitudes_at(t), chain_};
}

ChainState propagate(const ChainHamiltonian& hamiltonian,
                     const ChainState& psi0, double t) {
  if (t == 0.0 && psi0.n_trunc() == hamiltonian.size()) return psi0;
  return ChainPropagator(hamiltonian, psi0).at(t);
}

std::vector<double> photon_distribution(const FullState& state) {
  const auto a = state.amp_e();
  const auto b = state.amp_g();
  std::vector<double> p(state.n_trunc());
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::norm(a[k]) + std::norm(b[k]);
  }
  return p;
}

double population_excited(const FullState& state) {
  double p = 0.0;
  for (Complex z : state.amp_e()) p += std::norm(z);
  return p;
}

double revival_probability(const FullState& state, const FullState& initial) {
  if (state.n_trunc() != initial.n_trunc()) {
    throw Error(ErrorKind::Dimension,
                "revival overlap between states of different truncation");
  }
  Complex overlap{};
  for (std::size_t k = 0; k < state.n_trunc(); ++k) {
    overlap += std::conj(initial.amp_e()[k]) * state.amp_e()[k];
    overlap += std::conj(initial.amp_g()[k]) * state.amp_g()[k];
  }
  return std::norm(overlap);
}

double mean_photon_number(const FullState& state) {
  const auto p = photon_distribution(state);
  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    mean += static_cast<double>(k) * p[k];
  }
  return mean;
}

Observables observe(const FullState& state, const FullState& initial) {
  Observables o;
  o.photon_distribution = photon_distribution(state);
  o.p_excited = population_excited(state);
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < o.photon_distribution.size(); ++k) {
    total += o.photon_distribution[k];
    mean += static_cast<double>(k) * o.photon_distribution[k];
  }
  o.p_ground = total - o.p_excited;
  o.mean_photon = mean;
  o.p_revival = revival_probability(state, initial);
  return o;
}

double edge_occupation(const FullState& state) {
  const std::size_t n = state.n_trunc();
  double occ = 0.0;
  for (std::size_t k = n - 2; k < n; ++k) {
    occ += std::norm(state.amp_e()[k]) + std::norm(state.amp_g()[k]);
  }
  return occ;
}

double energy(const RabiParams& params, const FullState& state) {
  if (state.n_trunc() != params.n_trunc()) {
    throw Error(ErrorKind::Dimension, "state truncation does not match params");
  }
  const auto [c, f] = decompose(state);
  double e = 0.0;
  for (const ChainState* chain : {&c, &f}) {
    const auto h = build_chain(params, chain->chain());
    const auto hx = h.apply(chain->amp());
    Complex acc{};
    for (std::size_t k = 0; k < hx.size(); ++k) {
      acc += std::conj(chain->amp()[k]) * hx[k];
    }
    e += acc.real();
  }
  return e;
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  }
  if (!(t_max >= dt) || !std::isfinite(t_max)) {
    throw Error(ErrorKind::InvalidArgument, "t_max must be >= dt");
  }
  // Relative slack absorbs t_max/dt landing just below an integer.
  const auto steps =
      static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12)));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = static_cast<double>(k) * dt;
  }
  return grid;
}

Trajectory run_trajectory_on(const RabiParams& params, const FullState& initial,
                             std::span<const double> t_points) {
  if (initial.n_trunc() != params.n_trunc()) {
    throw Error(ErrorKind::Dimension,
                "initial state has " + std::to_string(initial.n_trunc()) +
                    " Fock levels but n_trunc is " +
                    std::to_string(params.n_trunc()));
  }
  const auto [c0, f0] = decompose(initial);

  // An empty chain stays empty, so it is neither built nor propagated.
  std::optional<ChainHamiltonian> hc, hf;
  std::optional<ChainPropagator> pc, pf;
  if (c0.weight() > 0.0) {
    hc.emplace(build_chain(params, ParityChain::C));
    pc.emplace(*hc, c0);
  }
  if (f0.weight() > 0.0) {
    hf.emplace(build_chain(params, ParityChain::F));
    pf.emplace(*hf, f0);
  }

  Trajectory traj;
  traj.t_grid.assign(t_points.begin(), t_points.end());
  traj.states.reserve(t_points.size());
  traj.observables.reserve(t_points.size());
  const ComplexVector zeros(params.n_trunc());
  for (double t : t_points) {
    ChainState c = pc ? pc->at(t) : ChainState(zeros, ParityChain::C);
    ChainState f = pf ? pf->at(t) : ChainState(zeros, ParityChain::F);
    FullState state = recompose(c, f);
    traj.max_edge_occupation =
        std::max(traj.max_edge_occupation, edge_occupation(state));
    traj.observables.push_back(observe(state, initial));
    traj.states.push_back(std::move(state));
  }
  return traj;
}

Trajectory run_trajectory(const RabiParams& params, const FullState& initial,
                          double t_max, double dt) {
  const auto grid = time_grid(t_max, dt);
  return run_trajectory_on(params, initial, grid);
}

}  // namespace dscsim
