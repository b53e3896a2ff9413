#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dscsim/model.hpp"

namespace dscsim {

inline constexpr std::size_t kFullRabiMaxTruncation = 256;

/// Dense Rabi Hamiltonian on the interleaved basis
/// {|g,0>, |e,0>, |g,1>, |e,1>, ...}, row-major, (2 n_trunc)^2 entries.
std::vector<double> full_rabi_matrix(const RabiParams& params);

/// Brute-force evolution under the dense Rabi Hamiltonian, with no use of
/// the parity structure. Serves as the reference for the chain propagator.
class FullRabiReference {
 public:
  explicit FullRabiReference(const RabiParams& params);
  ~FullRabiReference();
  FullRabiReference(FullRabiReference&&) noexcept;
  FullRabiReference& operator=(FullRabiReference&&) noexcept;

  const RabiParams& params() const noexcept { return params_; }
  FullState evolve(const FullState& initial, double t) const;

 private:
  struct Spectrum;
  RabiParams params_;
  std::unique_ptr<Spectrum> spectrum_;
};

FullState full_rabi_reference(const RabiParams& params,
                              const FullState& initial, double t);

}  // namespace dscsim
