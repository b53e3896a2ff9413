#include "dscsim/full_rabi.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "dscsim/error.hpp"

namespace dscsim {

namespace {

std::size_t g_index(std::size_t n) { return 2 * n; }
std::size_t e_index(std::size_t n) { return 2 * n + 1; }

void check_cap(const RabiParams& params) {
  if (params.n_trunc() > kFullRabiMaxTruncation) {
    throw Error(ErrorKind::InvalidArgument,
                "full Rabi reference refuses n_trunc = " +
                    std::to_string(params.n_trunc()) + " (cap is " +
                    std::to_string(kFullRabiMaxTruncation) +
                    "; the dense solve is cubic in 2*n_trunc)");
  }
}

}  // namespace

std::vector<double> full_rabi_matrix(const RabiParams& params) {
  check_cap(params);
  const std::size_t n = params.n_trunc();
  const std::size_t dim = 2 * n;
  std::vector<double> h(dim * dim, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return h[r * dim + c];
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double field = static_cast<double>(k) * params.omega();
    at(g_index(k), g_index(k)) = -0.5 * params.omega0() + field;
    at(e_index(k), e_index(k)) = 0.5 * params.omega0() + field;
  }
  // g (sigma+ + sigma-)(a + a^dag) connects |e,k> and |g,k+1> as well as
  // |g,k> and |e,k+1>, each with amplitude g sqrt(k+1).
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double v = params.g() * std::sqrt(static_cast<double>(k + 1));
    at(e_index(k), g_index(k + 1)) = v;
    at(g_index(k + 1), e_index(k)) = v;
    at(g_index(k), e_index(k + 1)) = v;
    at(e_index(k + 1), g_index(k)) = v;
  }
  return h;
}

struct FullRabiReference::Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

FullRabiReference::FullRabiReference(const RabiParams& params)
    : params_(params), spectrum_(std::make_unique<Spectrum>()) {
  const auto dense = full_rabi_matrix(params);
  const auto dim = static_cast<Eigen::Index>(2 * params.n_trunc());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      h(dense.data(), dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numeric,
                "dense eigensolver failed for the full Rabi Hamiltonian");
  }
  spectrum_->values = solver.eigenvalues();
  spectrum_->vectors = solver.eigenvectors();
}

FullRabiReference::~FullRabiReference() = default;
FullRabiReference::FullRabiReference(FullRabiReference&&) noexcept = default;
FullRabiReference& FullRabiReference::operator=(FullRabiReference&&) noexcept =
    default;

FullState FullRabiReference::evolve(const FullState& initial, double t) const {
  const std::size_t n = params_.n_trunc();
  if (initial.n_trunc() != n) {
    throw Error(ErrorKind::Dimension,
                "initial state truncation does not match the reference");
  }
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Eigen::VectorXcd psi(dim);
  for (std::size_t k = 0; k < n; ++k) {
    psi(static_cast<Eigen::Index>(g_index(k))) = initial.amp_g()[k];
    psi(static_cast<Eigen::Index>(e_index(k))) = initial.amp_e()[k];
  }
  const Eigen::MatrixXcd v = spectrum_->vectors.cast<Complex>();
  Eigen::VectorXcd coeff = v.adjoint() * psi;
  for (Eigen::Index k = 0; k < dim; ++k) {
    coeff(k) *= std::polar(1.0, -spectrum_->values(k) * t);
  }
  const Eigen::VectorXcd out = v * coeff;
  ComplexVector a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = out(static_cast<Eigen::Index>(g_index(k)));
    a[k] = out(static_cast<Eigen::Index>(e_index(k)));
  }
  return {std::move(a), std::move(b), 1e-9};
}

FullState full_rabi_reference(const RabiParams& params,
                              const FullState& initial, double t) {
  return FullRabiReference(params).evolve(initial, t);
}

}  // namespace dscsim
