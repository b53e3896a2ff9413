#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dscsim {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr std::size_t kDefaultTruncation = 64;
inline constexpr std::size_t kPaperTruncation = 15;

/// Quantum Rabi model parameters in propagation-distance units (mm^-1),
/// plus the number of Fock levels kept per qubit branch.
class RabiParams {
 public:
  RabiParams(double omega0, double omega, double g,
             std::size_t n_trunc = kDefaultTruncation);

  double omega0() const noexcept { return omega0_; }
  double omega() const noexcept { return omega_; }
  double g() const noexcept { return g_; }
  std::size_t n_trunc() const noexcept { return n_trunc_; }

  RabiParams with_omega0(double omega0) const;
  RabiParams with_truncation(std::size_t n_trunc) const;

  friend bool operator==(const RabiParams&, const RabiParams&) = default;

 private:
  double omega0_;
  double omega_;
  double g_;
  std::size_t n_trunc_;
};

enum class ParityChain { C, F };
enum class Qubit { Excited, Ground };

const char* to_string(ParityChain chain) noexcept;

/// Nearest-neighbour coupling between sites n and n+1 of either chain.
double coupling(std::size_t n, double g);

/// State in the product basis: a_n on |e,n>, b_n on |g,n>.
class FullState {
 public:
  FullState(ComplexVector amp_e, ComplexVector amp_g,
            double norm_tolerance = kNormTolerance);

  static FullState fock(Qubit qubit, std::size_t photons, std::size_t n_trunc);

  std::span<const Complex> amp_e() const noexcept { return amp_e_; }
  std::span<const Complex> amp_g() const noexcept { return amp_g_; }
  std::size_t n_trunc() const noexcept { return amp_e_.size(); }
  double norm_squared() const noexcept;

  friend bool operator==(const FullState&, const FullState&) = default;

 private:
  ComplexVector amp_e_;
  ComplexVector amp_g_;
};

/// Amplitudes along one parity chain. The weight is the squared norm of the
/// amplitudes, i.e. the share of the total state carried by this chain.
class ChainState {
 public:
  ChainState(ComplexVector amp, ParityChain chain);

  static ChainState site(std::size_t index, std::size_t n_trunc,
                         ParityChain chain);

  std::span<const Complex> amp() const noexcept { return amp_; }
  ParityChain chain() const noexcept { return chain_; }
  double weight() const noexcept { return weight_; }
  std::size_t n_trunc() const noexcept { return amp_.size(); }

 private:
  ComplexVector amp_;
  ParityChain chain_;
  double weight_;
};

struct ChainPair {
  ChainState c;
  ChainState f;
};

// c_n = a_n, f_n = b_n for even n; c_n = b_n, f_n = a_n for odd n.
ChainPair decompose(const FullState& state);
FullState recompose(const ChainState& c, const ChainState& f);

/// Chain on which |qubit,n> lives.
ParityChain chain_of(Qubit qubit, std::size_t photons) noexcept;

}  // namespace dscsim
