#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dscsim {

/// Spectral decomposition of a real symmetric tridiagonal matrix.
/// Eigenvalues are ascending; eigenvectors are stored column-major, so
/// column k occupies vectors[k * n, (k + 1) * n).
struct TridiagonalEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double vector(std::size_t row, std::size_t k) const {
    return vectors[k * n + row];
  }
};

/// Implicit QL with Wilkinson shifts. Throws Error(Numeric) with a dump of
/// the input matrix if an eigenvalue fails to converge.
TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diag,
                                             std::span<const double> offdiag);

}  // namespace dscsim
