#include <algorithm>
#include <cmath>

#include "specdist/errors.hpp"
#include "specdist/matrix.hpp"

namespace specdist {

namespace {

double norm1(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool all_finite(const ComplexMatrix& a) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!std::isfinite(a.data()[k].real()) || !std::isfinite(a.data()[k].imag())) return false;
  return true;
}

// solve Q X = P by LU with partial pivoting
ComplexMatrix lu_solve(ComplexMatrix q, ComplexMatrix p) {
  const std::size_t n = q.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(q(i, k)) > std::abs(q(piv, k))) piv = i;
    if (std::abs(q(piv, k)) == 0.0) throw NumericalOverflow("expm: singular Pade denominator");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(q(k, j), q(piv, j));
      for (std::size_t j = 0; j < p.cols(); ++j) std::swap(p(k, j), p(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = q(i, k) / q(k, k);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= f * q(k, j);
      for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) -= f * p(k, j);
    }
  }
  for (std::size_t jj = 0; jj < p.cols(); ++jj)
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = p(ii, jj);
      for (std::size_t j = ii + 1; j < n; ++j) s -= q(ii, j) * p(j, jj);
      p(ii, jj) = s / q(ii, ii);
    }
  return p;
}

constexpr double b13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
constexpr double theta13 = 5.371920351148152;

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("expm needs a square matrix");
  if (!all_finite(m)) throw NumericalOverflow("expm: non-finite input");
  const std::size_t n = m.rows();
  const double nrm = norm1(m);
  // e^{|A|} beyond ~1e300 cannot be represented anyway
  if (nrm > 690.0) throw NumericalOverflow("expm: norm too large");

  int s = 0;
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  ComplexMatrix a = m * cplx(std::ldexp(1.0, -s));

  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  ComplexMatrix u_inner = a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) + b13[7] * a6 +
                          b13[5] * a4 + b13[3] * a2 + b13[1] * id;
  ComplexMatrix u = a * u_inner;
  ComplexMatrix v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) + b13[6] * a6 +
                    b13[4] * a4 + b13[2] * a2 + b13[0] * id;

  ComplexMatrix r = lu_solve(v - u, v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!all_finite(r)) throw NumericalOverflow("expm: result overflowed");
  return r;
}

}  // namespace specdist
