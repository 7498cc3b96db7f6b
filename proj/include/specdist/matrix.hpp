#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace specdist {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double eig = 1e-10;
inline constexpr double expm = 1e-12;
inline constexpr double jacobi_rel = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
}  // namespace tol

// Dense row-major complex matrix. Column vectors are n x 1 matrices.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);
  static ComplexMatrix column(const std::vector<cplx>& v);
  static ComplexMatrix basis_vector(std::size_t n, std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol = tol::hermiticity) const;
  ComplexMatrix col(std::size_t j) const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);  // bitwise

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// These route through the OpenMP kernels (see kernels.hpp).
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);  // a^dagger b
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// column-vector helpers
cplx inner(const ComplexMatrix& u, const ComplexMatrix& v);  // <u|v>
double vector_norm(const ComplexMatrix& v);
ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v);  // |u><v|
ComplexMatrix hstack(const std::vector<ComplexMatrix>& columns);

// keep only the listed rows and columns
ComplexMatrix compress(const ComplexMatrix& m, const std::vector<std::size_t>& idx);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// cyclic Jacobi; throws NotHermitian, NoConvergence
EigenDecomposition hermitian_eig(const ComplexMatrix& m);
std::vector<double> hermitian_eigvals(const ComplexMatrix& m);

// sqrt of the top eigenvalue of M^dagger M
double operator_norm(const ComplexMatrix& m);

// scaling and squaring, Pade 13
ComplexMatrix expm(const ComplexMatrix& m);

// Pauli and friends, 2x2
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix unit_e(std::size_t i, std::size_t j, std::size_t n = 2);  // |i><j|

}  // namespace specdist
