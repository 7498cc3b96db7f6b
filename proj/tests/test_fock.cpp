#include <doctest.h>

#include <cmath>

#include "specdist/errors.hpp"
#include "specdist/fock.hpp"

using namespace specdist;

TEST_CASE("ladder operators") {
  const FockSpace sp(6, 1.0);
  const auto b = lowering(sp), bd = raising(sp);
  CHECK(b(2, 3) == cplx(std::sqrt(3.0)));
  CHECK(max_abs_diff(bd, b.adjoint()) == 0.0);
  const auto c = commutator(b, bd);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(c(n, n) - 1.0) < 1e-14);
  CHECK(std::abs(c(6, 6) + 6.0) < 1e-14);  // truncation defect at the top level
  CHECK(max_abs_diff(bd * b, number_op(sp)) < 1e-14);
  CHECK(projector_P(sp, -1).max_abs() == 0.0);
  CHECK(projector_P(sp, 2).trace() == cplx(3.0));
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(FockSpace(1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(FockSpace(5, 0.0), InvalidArgument);
}

TEST_CASE("coherent vector against the Poisson series") {
  const FockSpace sp(30, 1.0);
  const cplx z(0.6, -0.8);
  const auto cv = coherent_vector(sp, z);
  double fact = 1.0;
  cplx zn = 1.0;
  for (int n = 0; n <= 30; ++n) {
    if (n) fact *= n, zn *= z;
    const cplx want = std::exp(-std::norm(z) / 2) * zn / std::sqrt(fact);
    CHECK(std::abs(cv.vec(n, 0) - want) < 1e-14);
  }
  CHECK(cv.tail_weight < 1e-20);
}

TEST_CASE("tail warning when the truncation is too small") {
  const FockSpace sp(4, 1.0);
  const auto rho = coherent_state(sp, 1.5);
  CHECK_FALSE(rho.warnings.empty());
  CHECK(std::abs(rho.rho.trace() - 1.0) < 1e-14);
  CHECK(coherent_state(FockSpace(40, 1.0), 0.5).warnings.empty());
}

TEST_CASE("displacement of the vacuum is the coherent state") {
  const FockSpace sp(40, 1.0);
  const cplx z(0.7, 0.3);
  const auto v = displacement(sp, z) * ComplexMatrix::basis_vector(sp.dim(), 0);
  const auto cv = coherent_vector(sp, z);
  // the top levels feel the truncation; compare the low ones
  for (int n = 0; n < 20; ++n) CHECK(std::abs(v(n, 0) - cv.vec(n, 0)) < 1e-12);
}

TEST_CASE("translated basis") {
  const FockSpace sp(40, 1.0);
  const cplx z(0.4, -0.5);
  const auto v0 = translated_basis(sp, z, 0), v1 = translated_basis(sp, z, 1);
  CHECK(std::abs(inner(v1, v0)) < 1e-13);
  CHECK(std::abs(vector_norm(v1) - 1.0) < 1e-14);
  // b |z> = z |z> away from the cut
  const auto bv = lowering(sp) * v0;
  CHECK(vector_norm(bv - z * v0) < 1e-10);
  const auto f = translation_frame(sp, z);
  CHECK(max_abs_diff(adjoint_matmul(f, f), ComplexMatrix::identity(sp.dim())) < 1e-12);
  CHECK(vector_norm(f.col(0) - v0) < 1e-13);
}
