#include "dscsim/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "dscsim/error.hpp"

namespace dscsim {

namespace {

double squared_norm(std::span<const Complex> v) {
  return std::accumulate(v.begin(), v.end(), 0.0,
                         [](double acc, Complex z) { return acc + std::norm(z); });
}

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, msg);
}

}  // namespace

RabiParams::RabiParams(double omega0, double omega, double g,
                       std::size_t n_trunc)
    : omega0_(omega0), omega_(omega), g_(g), n_trunc_(n_trunc) {
  if (!std::isfinite(omega0)) invalid("omega0 must be finite");
  if (!std::isfinite(omega)) invalid("omega must be finite");
  if (!std::isfinite(g)) invalid("g must be finite");
  if (!(omega > 0.0)) invalid("omega must be > 0");
  if (!(g >= 0.0)) invalid("g must be >= 0");
  if (n_trunc < 2) invalid("n_trunc must be >= 2");
  if (!std::isfinite(g / omega) || !std::isfinite(omega0 / omega)) {
    invalid("g/omega and omega0/omega must be finite");
  }
}

RabiParams RabiParams::with_omega0(double omega0) const {
  return {omega0, omega_, g_, n_trunc_};
}

RabiParams RabiParams::with_truncation(std::size_t n_trunc) const {
  return {omega0_, omega_, g_, n_trunc};
}

const char* to_string(ParityChain chain) noexcept {
  return chain == ParityChain::C ? "C" : "F";
}

double coupling(std::size_t n, double g) {
  if (!(g >= 0.0)) invalid("coupling strength g must be >= 0");
  return g * std::sqrt(static_cast<double>(n) + 1.0);
}

FullState::FullState(ComplexVector amp_e, ComplexVector amp_g,
                     double norm_tolerance)
    : amp_e_(std::move(amp_e)), amp_g_(std::move(amp_g)) {
  if (amp_e_.size() != amp_g_.size()) {
    throw Error(ErrorKind::Dimension,
                "excited and ground branches differ in length");
  }
  if (amp_e_.size() < 2) invalid("state needs at least 2 Fock levels");
  const double norm = norm_squared();
  if (!(std::abs(norm - 1.0) <= norm_tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not normalized: squared norm " << norm
       << " deviates from 1 by more than " << norm_tolerance;
    invalid(os.str());
  }
}

FullState FullState::fock(Qubit qubit, std::size_t photons,
                          std::size_t n_trunc) {
  if (photons >= n_trunc) {
    invalid("Fock index " + std::to_string(photons) +
            " outside truncation " + std::to_string(n_trunc));
  }
  ComplexVector e(n_trunc), g(n_trunc);
  (qubit == Qubit::Excited ? e : g)[photons] = 1.0;
  return {std::move(e), std::move(g)};
}

double FullState::norm_squared() const noexcept {
  return squared_norm(amp_e_) + squared_norm(amp_g_);
}

ChainState::ChainState(ComplexVector amp, ParityChain chain)
    : amp_(std::move(amp)), chain_(chain), weight_(squared_norm(amp_)) {
  if (amp_.size() < 2) invalid("chain needs at least 2 sites");
  if (!(weight_ <= 1.0 + 1e-9)) invalid("chain weight exceeds 1");
}

ChainState ChainState::site(std::size_t index, std::size_t n_trunc,
                            ParityChain chain) {
  if (index >= n_trunc) invalid("site index outside chain");
  ComplexVector amp(n_trunc);
  amp[index] = 1.0;
  return {std::move(amp), chain};
}

ChainPair decompose(const FullState& state) {
  const std::size_t n = state.n_trunc();
  const auto a = state.amp_e();
  const auto b = state.amp_g();
  ComplexVector c(n), f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool even = k % 2 == 0;
    c[k] = even ? a[k] : b[k];
    f[k] = even ? b[k] : a[k];
  }
  return {ChainState(std::move(c), ParityChain::C),
          ChainState(std::move(f), ParityChain::F)};
}

FullState recompose(const ChainState& c, const ChainState& f) {
  if (c.n_trunc() != f.n_trunc()) {
    throw Error(ErrorKind::Dimension, "parity chains differ in length: " +
                                          std::to_string(c.n_trunc()) + " vs " +
                                          std::to_string(f.n_trunc()));
  }
  if (c.chain() != ParityChain::C || f.chain() != ParityChain::F) {
    invalid("recompose expects a C chain and an F chain");
  }
  const std::size_t n = c.n_trunc();
  const auto cs = c.amp();
  const auto fs = f.amp();
  ComplexVector a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool even = k % 2 == 0;
    a[k] = even ? cs[k] : fs[k];
    b[k] = even ? fs[k] : cs[k];
  }
  return {std::move(a), std::move(b), 1e-9};
}

ParityChain chain_of(Qubit qubit, std::size_t photons) noexcept {
  const bool even = photons % 2 == 0;
  return (qubit == Qubit::Excited) == even ? ParityChain::C : ParityChain::F;
}

}  // namespace dscsim
