#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specdist/errors.hpp"
#include "specdist/moyal.hpp"

using namespace specdist;

TEST_CASE("Moyal triple is a valid even triple") {
  const MoyalTriple m = build_moyal(FockSpace(10, 1.5));
  CHECK_NOTHROW(m.triple.validate());
  CHECK(m.triple.hilbert_dim() == 22);
}

TEST_CASE("eigen-spinors of the Moyal Dirac operator") {
  const double theta = 0.8;
  const MoyalTriple m = build_moyal(FockSpace(12, theta));
  const auto es = moyal_eigenspinors(m, 11);
  CHECK(es.size() == 23);
  for (const auto& e : es) {
    CHECK(std::abs(e.eigenvalue - e.sign * std::sqrt(2.0 * e.m / theta)) < 1e-14);
    CHECK(vector_norm(m.triple.dirac * e.vec - cplx(e.eigenvalue) * e.vec) < 1e-12);
  }
  CHECK_THROWS_AS(moyal_eigenspinors(m, 12), InvalidArgument);
}

TEST_CASE("projector commutes with the Dirac operator") {
  const FockSpace sp(10, 1.0);
  const auto d = moyal_dirac(sp);
  for (int n = 0; n <= 9; ++n) CHECK(commutator(d, moyal_projector(sp, n)).max_abs() < 1e-13);
}

TEST_CASE("distance values") {
  const MoyalTriple m = build_moyal(FockSpace(40, 1.0));
  CHECK(moyal_distance(m, 0.0, 4).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  const auto r = moyal_distance(m, 0.7, 4);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0) * 0.7).epsilon(1e-9));
  CHECK(std::abs(r.ball_norm - 1.0) < 1e-8);
}

TEST_CASE("misaligned phase gives a smaller value") {
  const FockSpace sp(40, 1.3);
  const MoyalTriple m = build_moyal(sp);
  const cplx z = std::polar(0.9, 0.6);
  const double best = moyal_distance(m, z, 4).value;
  const auto rotated = moyal_distance_between(m, coherent_state(sp, z), coherent_state(sp, 0.0),
                                              z * std::polar(1.0, 0.4), 4);
  CHECK(rotated.value < best - 1e-3);
  CHECK(rotated.value == doctest::Approx(best * std::cos(0.4)).epsilon(1e-7));
}

TEST_CASE("scaling covariance: d(theta) / sqrt(theta) is fixed") {
  const cplx z(0.3, 0.5);
  const double a = moyal_distance(build_moyal(FockSpace(40, 0.5)), z, 4).value / std::sqrt(0.5);
  const double b = moyal_distance(build_moyal(FockSpace(40, 3.0)), z, 4).value / std::sqrt(3.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("triangle equality along a line") {
  const MoyalTriple m = build_moyal(FockSpace(40, 1.0));
  const cplx z(0.8, -0.6);
  const double whole = moyal_distance(m, z, 4).value;
  for (double t : {0.25, 0.5, 0.75}) {
    const double a = moyal_pair_distance(m, z * t, 0.0, 4).value;
    const double b = moyal_pair_distance(m, z, z * t, 4).value;
    CHECK(std::abs(a + b - whole) < 1e-6);
  }
}

TEST_CASE("order outside the admissible range") {
  const MoyalTriple m = build_moyal(FockSpace(10, 1.0));
  CHECK_THROWS_AS(moyal_distance(m, 0.5, 10), InvalidArgument);
  CHECK_THROWS_AS(moyal_distance(m, 0.5, 0), InvalidArgument);
}

TEST_CASE("an element outside the ball is refused") {
  const FockSpace sp(20, 1.0);
  const MoyalTriple m = build_moyal(sp);
  const auto a = AlgebraElement::moyal(cplx(2.0) * position_like(sp, 0.0))
                     .projected(moyal_projector(sp, 4));
  CHECK_THROWS_AS(distance_from_element(m.triple, coherent_state(sp, 0.5), coherent_state(sp, 0.0), a),
                  BallViolation);
}
