#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dscsim/model.hpp"
#include "dscsim/tridiagonal.hpp"

namespace dscsim {

/// Occupation of the two outermost sites above which a trajectory is
/// reported as feeling the truncation wall.
inline constexpr double kEdgeOccupationThreshold = 1e-8;

/// Tight-binding Hamiltonian of one parity chain, with its spectral
/// decomposition computed once at construction.
class ChainHamiltonian {
 public:
  ChainHamiltonian(std::vector<double> diag, std::vector<double> offdiag,
                   ParityChain chain);

  std::size_t size() const noexcept { return diag_.size(); }
  ParityChain chain() const noexcept { return chain_; }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> offdiag() const noexcept { return offdiag_; }
  std::span<const double> eigenvalues() const noexcept { return eigen_.values; }
  double eigenvector(std::size_t row, std::size_t k) const {
    return eigen_.vector(row, k);
  }
  const TridiagonalEigen& spectrum() const noexcept { return eigen_; }

  double max_abs_entry() const noexcept;

  /// Direct tridiagonal matrix-vector product (does not use the spectrum).
  ComplexVector apply(std::span<const Complex> x) const;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
  ParityChain chain_;
  TridiagonalEigen eigen_;
};

// diag_n = +-(-1)^n omega0/2 + n omega (+ on C, - on F), offdiag_n = g sqrt(n+1).
ChainHamiltonian build_chain(const RabiParams& params, ParityChain chain);

/// Evolves one initial chain state to arbitrary distances. The projection
/// onto the eigenbasis is done once, so each evaluation costs O(n^2).
class ChainPropagator {
 public:
  ChainPropagator(const ChainHamiltonian& hamiltonian, const ChainState& psi0);

  ComplexVector amplitudes_at(double t) const;
  ChainState at(double t) const;

 private:
  const ChainHamiltonian* hamiltonian_;
  ParityChain chain_;
  ComplexVector initial_;
  std::vector<Complex> coefficients_;
};

ChainState propagate(const ChainHamiltonian& hamiltonian,
                     const ChainState& psi0, double t);

struct Observables {
  std::vector<double> photon_distribution;  // P(n,t)
  double p_excited = 0.0;
  double p_ground = 0.0;
  double p_revival = 0.0;
  double mean_photon = 0.0;
};

std::vector<double> photon_distribution(const FullState& state);
double population_excited(const FullState& state);
double revival_probability(const FullState& state, const FullState& initial);
double mean_photon_number(const FullState& state);
Observables observe(const FullState& state, const FullState& initial);

/// Occupation of the two highest Fock levels, both qubit branches.
double edge_occupation(const FullState& state);

/// <psi|H|psi> of the full Rabi Hamiltonian, evaluated through both chains.
double energy(const RabiParams& params, const FullState& state);

/// Sampling grid {0, dt, 2dt, ...} up to and including t_max.
std::vector<double> time_grid(double t_max, double dt);

struct Trajectory {
  std::vector<double> t_grid;
  std::vector<FullState> states;
  std::vector<Observables> observables;
  double max_edge_occupation = 0.0;

  std::size_t size() const noexcept { return t_grid.size(); }
  bool truncation_contaminated() const noexcept {
    return max_edge_occupation > kEdgeOccupationThreshold;
  }
};

Trajectory run_trajectory(const RabiParams& params, const FullState& initial,
                          double t_max, double dt);

/// Same propagation on an explicit set of sample points (non-decreasing, >= 0).
Trajectory run_trajectory_on(const RabiParams& params, const FullState& initial,
                             std::span<const double> t_points);

}  // namespace dscsim
