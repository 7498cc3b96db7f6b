#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specdist/doubled.hpp"
#include "specdist/errors.hpp"
#include "specdist/twopoint.hpp"

using namespace specdist;

TEST_CASE("two-point distance") {
  CHECK(twopoint_distance(build_twopoint(2.0)).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(twopoint_distance(build_twopoint(std::polar(2.0, 1.1))).value ==
        doctest::Approx(0.5).epsilon(1e-15));
  const auto r = twopoint_distance(build_twopoint(0.0));
  CHECK(r.is_infinite());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("doubled Dirac operator matches an entrywise assembly") {
  const FockSpace sp(5, 1.7);
  const cplx lambda(0.8, -1.1);
  const auto d = doubled_dirac(sp, lambda);
  ComplexMatrix want(d.rows(), d.cols());
  const double s = std::sqrt(2.0 / sp.theta);
  for (int n = 0; n <= sp.n_max; ++n)
    for (int i = 0; i < 2; ++i) {
      if (n < sp.n_max) {
        want(doubled_index(sp, 0, n + 1, i), doubled_index(sp, 1, n, i)) = s * std::sqrt(n + 1.0);
        want(doubled_index(sp, 1, n, i), doubled_index(sp, 0, n + 1, i)) = s * std::sqrt(n + 1.0);
      }
    }
  for (int sp_ = 0; sp_ < 2; ++sp_)
    for (int n = 0; n <= sp.n_max; ++n) {
      const double sign = sp_ == 0 ? 1.0 : -1.0;
      want(doubled_index(sp, sp_, n, 0), doubled_index(sp, sp_, n, 1)) = sign * lambda;
      want(doubled_index(sp, sp_, n, 1), doubled_index(sp, sp_, n, 0)) = sign * std::conj(lambda);
    }
  CHECK(max_abs_diff(d, want) < 1e-15);
}

TEST_CASE("gauge rotation leaves the spectrum alone") {
  const FockSpace sp(6, 1.0);
  const cplx lambda = std::polar(1.3, 2.4);
  const auto a = hermitian_eigvals(doubled_dirac(sp, lambda));
  const auto b = hermitian_eigvals(build_doubled(sp, lambda).triple.dirac);
  const auto c = hermitian_eigvals(doubled_dirac(sp, std::abs(lambda)));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::abs(a[k] - b[k]) < 1e-12);
    CHECK(std::abs(a[k] - c[k]) < 1e-12);
  }
  CHECK(max_abs_diff(build_doubled(sp, lambda).triple.dirac, doubled_dirac(sp, std::abs(lambda))) < 1e-14);
}

TEST_CASE("spectrum closed form, kappa = 1") {
  const DoubledTriple d = build_doubled(FockSpace(10, 2.0), 1.0);
  CHECK(d.kappa == doctest::Approx(1.0));
  for (const auto& r : doubled_spectrum(d)) {
    CHECK(std::abs(std::abs(r.predicted) - std::sqrt(r.m + 1.0)) < 1e-14);
    CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("eigen-spinor projector equals the direct one") {
  const DoubledTriple d = build_doubled(FockSpace(8, 0.9), std::polar(1.4, -0.3));
  for (int n = 0; n <= 7; ++n) {
    const auto p = eigenspinor_projector(d, n);
    CHECK(max_abs_diff(p, doubled_projector(d.space, n)) < 1e-12);
    CHECK(commutator(d.triple.dirac, p).max_abs() < 1e-12);
  }
  CHECK_THROWS_AS(doubled_eigenspinors(build_doubled(FockSpace(8, 1.0), 0.0), 2), InvalidArgument);
}

TEST_CASE("M_l table at theta = 2, Lambda = 1, X = 1") {
  const DoubledTriple d = build_doubled(FockSpace(6, 2.0), 1.0);
  const auto m = matrix_Ml(d, 1.0);
  const double delta1 = (2 + std::sqrt(2.0)) / 4;
  const double gamma_minus = 1 - std::sqrt(2.0);
  CHECK(std::abs(m(4, 0) + gamma_minus * delta1) < 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(m(i, j)) < 1e-12);
  CHECK(hermitian_eigvals(adjoint_matmul(m, m)).front() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("rejected branch") {
  const DoubledTriple d = build_doubled(FockSpace(8, 1.0), 2.0);
  const double k = d.kappa;
  const double x = 0.7;
  CHECK(rejected_branch_norm(d, x) ==
        doctest::Approx(x * 2.0 * std::sqrt(8 + k + 4 * std::sqrt(1 + k))).epsilon(1e-10));
}

TEST_CASE("doubled-plane distances") {
  const DoubledTriple d = build_doubled(FockSpace(40, 1.0), 2.0);
  CHECK(longitudinal_distance(d, 0.7, 4).value == doctest::Approx(std::sqrt(2.0) * 0.7).epsilon(1e-9));
  CHECK(longitudinal_distance(d, 0.0, 4).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(transverse_distance(d, 0.7, 4).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hypotenuse_distance(d, 0.7, 4).value == doctest::Approx(std::sqrt(1.23)).epsilon(1e-9));
  // z = 0: hypotenuse collapses onto the transverse value
  CHECK(hypotenuse_distance(d, 0.0, 4).value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(transverse_distance(build_doubled(FockSpace(10, 1.0), 0.0), 0.3, 2).is_infinite());
}

TEST_CASE("restricted and unrestricted transverse values agree") {
  const DoubledTriple d = build_doubled(FockSpace(40, 1.2), std::polar(1.6, 0.7));
  for (cplx z : {cplx(0.0), cplx(0.9, -0.4), cplx(-1.2, 0.3)}) {
    const auto r = transverse_distance(d, z, 3);
    REQUIRE(r.cross_check);
    CHECK(std::abs(*r.cross_check - r.value) < 1e-9);
    const auto rt = restrict_transverse(d, z);
    CHECK(std::abs(std::abs(rt.twopoint.lambda) - 1.6) < 1e-10);
    CHECK(rt.commutator_norm <= commute_tol);
  }
}

TEST_CASE("truncation too small for the restricted route") {
  const DoubledTriple d = build_doubled(FockSpace(8, 1.0), 2.0);
  const auto r = transverse_distance(d, 0.6, 2);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(r.cross_check);
  CHECK_FALSE(r.warnings.empty());
  CHECK_THROWS_AS(restrict_transverse(d, 0.6), ProjectorNotCommuting);
}

TEST_CASE("a projector that does not commute is refused") {
  const DoubledTriple d = build_doubled(FockSpace(8, 1.0), 1.0);
  const auto p = kron(kron(unit_e(0, 0), unit_e(1, 1, d.space.dim())), ComplexMatrix::identity(2));
  CHECK_THROWS_AS(restrict_triple(d.triple, p), ProjectorNotCommuting);
}
