#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specdist/errors.hpp"
#include "specdist/matrix.hpp"

namespace specdist {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). With a(p,q) = r e^{i phi}
// the rotation is G = diag(1, e^{-i phi}) R(c, s) on the (p,q) plane.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  const cplx ph = apq / r;  // e^{i phi}
  const double app = a(p, p).real(), aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx phc = std::conj(ph);
  const std::size_t n = a.rows();

  // A <- A G
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * phc * akq;
    a(k, q) = s * akp + c * phc * akq;
  }
  // A <- G^dagger A
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * ph * aqk;
    a(q, k) = s * apk + c * ph * aqk;
  }
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * phc * vkq;
    v(k, q) = s * vkp + c * phc * vkq;
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermitian_eig needs a square matrix");
  if (!m.is_hermitian(tol::hermiticity)) throw NotHermitian("hermitian_eig: input is not Hermitian");
  const std::size_t n = m.rows();

  // symmetrise away the last few ulps
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = tol::jacobi_rel * a.frobenius_norm();
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ >= tol::jacobi_max_sweeps)
      throw NoConvergence("Jacobi did not converge in " + std::to_string(tol::jacobi_max_sweeps) +
                          " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // negligible against both diagonal entries: drop it
        const double scale = std::abs(a(p, p).real()) + std::abs(a(q, q).real());
        if (scale > 0.0 && r < 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigvals(const ComplexMatrix& m) { return hermitian_eig(m).values; }

}  // namespace specdist
