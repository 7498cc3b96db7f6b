#include "specdist/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "specdist/errors.hpp"
#include "specdist/kernels.hpp"

namespace specdist {

namespace {
void require_nonempty(std::size_t r, std::size_t c) {
  if (r == 0 || c == 0) throw InvalidArgument("zero-size matrix");
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
}

void require_column(const ComplexMatrix& v, const char* op) {
  if (v.cols() != 1) throw DimensionMismatch(std::string(op) + ": expected a column vector");
}
}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  require_nonempty(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_nonempty(rows, cols);
  if (data_.size() != rows * cols) throw DimensionMismatch("data length does not match shape");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  require_nonempty(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(const std::vector<cplx>& v) {
  return ComplexMatrix(v.size(), 1, v);
}

ComplexMatrix ComplexMatrix::basis_vector(std::size_t n, std::size_t k) {
  if (k >= n) throw InvalidArgument("basis index out of range");
  ComplexMatrix v(n, 1);
  v(k, 0) = 1.0;
  return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix ComplexMatrix::col(std::size_t j) const {
  if (j >= cols_) throw InvalidArgument("column index out of range");
  ComplexMatrix v(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
  return v;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  ComplexMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  return parallel::matmul(a, b);
}
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  return parallel::adjoint_matmul(a, b);
}
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return parallel::commutator(a, b);
}
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) + matmul(b, a);
}
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return parallel::kron(a, b); }

cplx inner(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_column(u, "inner");
  require_same_shape(u, v, "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
  return s;
}

double vector_norm(const ComplexMatrix& v) {
  require_column(v, "vector_norm");
  return v.frobenius_norm();
}

ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_column(u, "outer");
  require_column(v, "outer");
  ComplexMatrix m(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) m(i, j) = u(i, 0) * std::conj(v(j, 0));
  return m;
}

ComplexMatrix hstack(const std::vector<ComplexMatrix>& columns) {
  if (columns.empty()) throw InvalidArgument("hstack of nothing");
  std::size_t n = columns.front().rows();
  ComplexMatrix m(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_column(columns[j], "hstack");
    if (columns[j].rows() != n) throw DimensionMismatch("hstack: ragged columns");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j](i, 0);
  }
  return m;
}

ComplexMatrix compress(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
  if (!m.is_square()) throw DimensionMismatch("compress needs a square matrix");
  ComplexMatrix r(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[i] >= m.rows() || idx[j] >= m.rows()) throw InvalidArgument("compress index");
      r(i, j) = m(idx[i], idx[j]);
    }
  return r;
}

double operator_norm(const ComplexMatrix& m) {
  // the smaller Gram matrix has the same top eigenvalue
  ComplexMatrix g = m.rows() >= m.cols() ? adjoint_matmul(m, m) : matmul(m, m.adjoint());
  auto ev = hermitian_eigvals(g);
  return std::sqrt(std::max(0.0, ev.front()));
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix unit_e(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= n || j >= n) throw InvalidArgument("unit_e index out of range");
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace specdist
