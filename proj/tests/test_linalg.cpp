#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "specdist/errors.hpp"
#include "specdist/kernels.hpp"
#include "specdist/matrix.hpp"

using namespace specdist;
using testutil::random_hermitian;
using testutil::random_matrix;

TEST_CASE("matrix rejects zero size and mismatched shapes") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(3, 3), DimensionMismatch);
}

TEST_CASE("matmul against a hand loop") {
  const auto a = random_matrix(5, 7, 1), b = random_matrix(7, 3, 2);
  const auto c = a * b;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      cplx s = 0;
      for (std::size_t k = 0; k < 7; ++k) s += a(i, k) * b(k, j);
      CHECK(std::abs(c(i, j) - s) < 1e-13);
    }
  CHECK(max_abs_diff(adjoint_matmul(a, a), a.adjoint() * a) < 1e-13);
}

TEST_CASE("kron of Pauli matrices") {
  const auto k = kron(pauli_x(), pauli_z());
  const ComplexMatrix want{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  CHECK(k == want);
  CHECK(max_abs_diff(pauli_x() * pauli_y(), cplx(0, 1) * pauli_z()) == 0.0);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  for (std::size_t n : {3u, 40u, 90u}) {
    const auto a = random_matrix(n, n, 10 + n), b = random_matrix(n, n, 20 + n);
    CHECK(serial::matmul(a, b) == parallel::matmul(a, b));
    CHECK(serial::adjoint_matmul(a, b) == parallel::adjoint_matmul(a, b));
    CHECK(serial::commutator(a, b) == parallel::commutator(a, b));
    const auto s = random_matrix(7, 5, n);
    CHECK(serial::kron(a, s) == parallel::kron(a, s));
  }
}

TEST_CASE("Jacobi eigenvalues of known matrices") {
  SUBCASE("Pauli y") {
    const auto v = hermitian_eigvals(pauli_y());
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-14));
  }
  SUBCASE("tridiagonal Toeplitz") {
    // eigenvalues a + 2 |b| cos(k pi / (n + 1)), complex b
    const std::size_t n = 9;
    const cplx b(0.3, -0.4);
    ComplexMatrix m = cplx(2.0) * ComplexMatrix::identity(n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = b, m(i + 1, i) = std::conj(b);
    const auto v = hermitian_eigvals(m);
    for (std::size_t k = 1; k <= n; ++k)
      CHECK(std::abs(v[k - 1] - (2.0 + 2 * std::abs(b) * std::cos(k * std::numbers::pi / (n + 1)))) < 1e-12);
  }
  SUBCASE("random Hermitian: reconstruction") {
    const auto h = random_hermitian(30, 5);
    const auto e = hermitian_eig(h);
    for (std::size_t k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] >= e.values[k]);
    ComplexMatrix d(30, 30);
    for (std::size_t k = 0; k < 30; ++k) d(k, k) = e.values[k];
    CHECK(max_abs_diff(e.vectors * d * e.vectors.adjoint(), h) < 1e-11);
    CHECK(max_abs_diff(adjoint_matmul(e.vectors, e.vectors), ComplexMatrix::identity(30)) < 1e-12);
  }
}

TEST_CASE("non-Hermitian input is refused") {
  ComplexMatrix m{{1, 2}, {0, 1}};
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("operator norm") {
  const ComplexMatrix d = ComplexMatrix::diagonal({3.0, cplx(0, -5), 1.0});
  CHECK(operator_norm(d) == doctest::Approx(5.0).epsilon(1e-13));
  // rank one: |u><v| has norm |u| |v|
  const auto u = random_matrix(6, 1, 3), v = random_matrix(4, 1, 4);
  CHECK(operator_norm(outer(u, v)) == doctest::Approx(vector_norm(u) * vector_norm(v)).epsilon(1e-12));
}

TEST_CASE("expm") {
  SUBCASE("exp(i pi sigma_3 / 2) = diag(i, -i)") {
    const auto e = expm(cplx(0, std::numbers::pi / 2) * pauli_z());
    CHECK(max_abs_diff(e, ComplexMatrix::diagonal({cplx(0, 1), cplx(0, -1)})) < 1e-14);
  }
  SUBCASE("nilpotent gives a finite series") {
    ComplexMatrix n(3, 3);
    n(0, 1) = 2.0, n(1, 2) = 3.0;
    ComplexMatrix want = ComplexMatrix::identity(3) + n;
    want(0, 2) = 3.0;  // n^2 / 2
    CHECK(max_abs_diff(expm(n), want) < 1e-13);
  }
  SUBCASE("large norm goes through squaring") {
    const auto h = random_hermitian(12, 7);
    const auto u = expm(cplx(0, 8.0) * h);
    CHECK(max_abs_diff(adjoint_matmul(u, u), ComplexMatrix::identity(12)) < 1e-11);
    const auto e = hermitian_eig(h);
    ComplexMatrix d(12, 12);
    for (std::size_t k = 0; k < 12; ++k) d(k, k) = std::polar(1.0, 8.0 * e.values[k]);
    CHECK(max_abs_diff(u, e.vectors * d * e.vectors.adjoint()) < 1e-10);
  }
  SUBCASE("overflow and non-finite input") {
    CHECK_THROWS_AS(expm(cplx(1000.0) * ComplexMatrix::identity(2)), NumericalOverflow);
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(expm(bad), NumericalOverflow);
  }
}
