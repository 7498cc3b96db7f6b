#include "specdist/kernels.hpp"

#include "specdist/errors.hpp"

namespace specdist {

namespace {

inline void madd(cplx& acc, const cplx& x, const cplx& y) {
  // spelled out so both flavours compile to the same arithmetic
  double re = x.real() * y.real() - x.imag() * y.imag();
  double im = x.real() * y.imag() + x.imag() * y.real();
  acc = cplx(acc.real() + re, acc.imag() + im);
}

void check_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
}

void check_square_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionMismatch("commutator: operands must be square and equal size");
}

// row i of a*b, i-k-j order, zero entries of a skipped
inline void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                       std::size_t i) {
  const std::size_t n = b.cols();
  cplx* out = c.data() + i * n;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const cplx aik = a(i, k);
    if (aik == cplx(0.0)) continue;
    const cplx* brow = b.data() + k * n;
    for (std::size_t j = 0; j < n; ++j) madd(out[j], aik, brow[j]);
  }
}

// row i of a^dagger b
inline void adjoint_matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                               std::size_t i) {
  const std::size_t n = b.cols();
  cplx* out = c.data() + i * n;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const cplx aki = std::conj(a(k, i));
    if (aki == cplx(0.0)) continue;
    const cplx* brow = b.data() + k * n;
    for (std::size_t j = 0; j < n; ++j) madd(out[j], aki, brow[j]);
  }
}

inline void kron_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                     std::size_t r) {
  const std::size_t ia = r / b.rows(), ib = r % b.rows();
  cplx* out = c.data() + r * c.cols();
  for (std::size_t ja = 0; ja < a.cols(); ++ja) {
    const cplx x = a(ia, ja);
    cplx* dst = out + ja * b.cols();
    if (x == cplx(0.0)) continue;
    for (std::size_t jb = 0; jb < b.cols(); ++jb) dst[jb] = x * b(ib, jb);
  }
}

inline void commutator_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                           std::size_t i) {
  const std::size_t n = a.rows();
  cplx* out = c.data() + i * n;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx aik = a(i, k);
    if (aik == cplx(0.0)) continue;
    const cplx* brow = b.data() + k * n;
    for (std::size_t j = 0; j < n; ++j) madd(out[j], aik, brow[j]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx bik = -b(i, k);
    if (bik == cplx(0.0)) continue;
    const cplx* arow = a.data() + k * n;
    for (std::size_t j = 0; j < n; ++j) madd(out[j], bik, arow[j]);
  }
}

std::size_t work(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() * a.cols() * b.cols();
}

}  // namespace

namespace serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_mul(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("adjoint_matmul: row counts differ");
  ComplexMatrix c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) adjoint_matmul_row(a, b, c, i);
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < c.rows(); ++r) kron_row(a, b, c, r);
  return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_square_pair(a, b);
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) commutator_row(a, b, c, i);
  return c;
}

}  // namespace serial

namespace parallel {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_mul(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) if (work(a, b) >= min_parallel_work)
  for (long i = 0; i < n; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("adjoint_matmul: row counts differ");
  ComplexMatrix c(a.cols(), b.cols());
  const long n = static_cast<long>(a.cols());
#pragma omp parallel for schedule(static) if (work(a, b) >= min_parallel_work)
  for (long i = 0; i < n; ++i) adjoint_matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  const long n = static_cast<long>(c.rows());
#pragma omp parallel for schedule(static) if (c.size() >= min_parallel_work)
  for (long r = 0; r < n; ++r) kron_row(a, b, c, static_cast<std::size_t>(r));
  return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_square_pair(a, b);
  ComplexMatrix c(a.rows(), a.cols());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) if (2 * work(a, b) >= min_parallel_work)
  for (long i = 0; i < n; ++i) commutator_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

}  // namespace parallel

}  // namespace specdist
