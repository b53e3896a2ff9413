#include "dscsim/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dscsim/error.hpp"

namespace dscsim {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;

[[noreturn]] void no_convergence(std::size_t index,
                                 std::span<const double> diag,
                                 std::span<const double> offdiag) {
  std::ostringstream os;
  os.precision(17);
  os << "tridiagonal eigensolver failed to converge on eigenvalue " << index
     << "; matrix dump (n=" << diag.size() << ")\n  diag:";
  for (double d : diag) os << ' ' << d;
  os << "\n  offdiag:";
  for (double e : offdiag) os << ' ' << e;
  throw Error(ErrorKind::Numeric, os.str());
}

}  // namespace

TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diag,
                                             std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) throw Error(ErrorKind::Dimension, "empty tridiagonal matrix");
  if (offdiag.size() + 1 != n) {
    throw Error(ErrorKind::Dimension,
                "off-diagonal length must be one less than the diagonal");
  }
  for (double v : diag) {
    if (!std::isfinite(v)) no_convergence(0, diag, offdiag);
  }
  for (double v : offdiag) {
    if (!std::isfinite(v)) no_convergence(0, diag, offdiag);
  }

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  auto at = [&](std::size_t row, std::size_t col) -> double& {
    return z[col * n + row];
  };

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      // Find the first negligible off-diagonal element at or below l.
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (sweeps++ == kMaxSweepsPerEigenvalue) no_convergence(l, diag, offdiag);

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          const double zk = at(k, i + 1);
          at(k, i + 1) = s * at(k, i) + c * zk;
          at(k, i) = c * at(k, i) - s * zk;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    std::copy_n(z.begin() + static_cast<std::ptrdiff_t>(order[k] * n), n,
                out.vectors.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return out;
}

}  // namespace dscsim
