#include <doctest.h>

#include <cmath>

#include "specdist/acceptance.hpp"
#include "specdist/errors.hpp"
#include "specdist/higgs.hpp"

using namespace specdist;

TEST_CASE("internal one-form") {
  const HiggsConfig cfg{ComplexMatrix::identity(3), cplx(2.0), cplx(-1.0), 0.25, 0.75};
  const cplx l(1.0, 2.0);
  const auto a = internal_one_form(cfg, l);
  CHECK(std::abs(a(0, 1) - 2.0 * l * 0.5) < 1e-15);
  CHECK(std::abs(a(1, 0) - (-1.0) * std::conj(l) * (-0.5)) < 1e-15);
  CHECK(a(0, 0) == cplx(0.0));
}

TEST_CASE("non-Hermitian fluctuation is refused") {
  const DoubledTriple d = build_doubled(FockSpace(6, 1.0), 1.0);
  const HiggsConfig bad{ComplexMatrix::identity(7), 1.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(fluctuate(d, bad), NonHermitianFluctuation);
  const HiggsConfig wrong_size{ComplexMatrix::identity(3), 1.0, -1.0, 0.0, 1.0};
  CHECK_THROWS_AS(fluctuate(d, wrong_size), DimensionMismatch);
}

TEST_CASE("A = 0 leaves everything unchanged") {
  const FockSpace sp(30, 1.1);
  const cplx l = std::polar(1.4, -0.9);
  const DoubledTriple d = build_doubled(sp, l);
  const FluctuatedTriple f = fluctuate(d, {ComplexMatrix::identity(sp.dim()), 1.0, 1.0, 0.2, 0.2});
  CHECK(max_abs_diff(f.dirac_A, doubled_dirac(sp, l)) == 0.0);
  const DoubledTriple v = fluctuated_view(f);
  const cplx z(0.5, 0.2);
  CHECK(longitudinal_distance(v, z, 3).value == longitudinal_distance(d, z, 3).value);
  CHECK(hypotenuse_distance(v, z, 3).value == hypotenuse_distance(d, z, 3).value);
  CHECK(fluctuated_transverse_distance(f, z).value == *transverse_distance(d, z, 3).cross_check);
}

TEST_CASE("constant field shifts the coupling everywhere") {
  const FockSpace sp(30, 1.0);
  const DoubledTriple d = build_doubled(sp, 2.0);
  const FluctuatedTriple f = fluctuate(d, {cplx(0.6) * ComplexMatrix::identity(sp.dim()), 1.0, -1.0, 0.0, 0.5});
  for (cplx z : {cplx(0.0), cplx(0.7, -0.4)}) {
    CHECK(higgs_g(f, z) == doctest::Approx(0.6).epsilon(1e-12));
    const auto r = fluctuated_transverse_distance(f, z);
    CHECK(r.value == doctest::Approx(1.0 / (2.0 * 1.3)).epsilon(1e-10));
    CHECK(r.method == Method::restricted);
  }
}

TEST_CASE("example field: legal only at the origin") {
  const FockSpace sp(30, 1.0);
  const DoubledTriple d = build_doubled(sp, 1.0);
  const FluctuatedTriple f = fluctuate(d, example_higgs_config(sp));
  CHECK(higgs_g(f, 0.8) == doctest::Approx(std::exp(-0.64)).epsilon(1e-12));
  CHECK(fluctuated_transverse_distance(f, 0.0).value == doctest::Approx(1.0 / 1.5).epsilon(1e-10));
  CHECK_THROWS_AS(fluctuated_transverse_distance(f, 0.8), ProjectorNotCommuting);
  const auto rows = higgs_field_sweep(f, {0.0, 0.5, 1.0});
  CHECK(rows[0].certified);
  CHECK_FALSE(rows[1].certified);
  CHECK_FALSE(rows[2].warning.empty());
  CHECK(rows[0].formula < rows[1].formula);
  CHECK(rows[1].formula < rows[2].formula);
}

TEST_CASE("vanishing effective coupling is infinite") {
  const FockSpace sp(20, 1.0);
  const DoubledTriple d = build_doubled(sp, 1.0);
  // 1 + 1 * (-1) * 1 = 0
  const FluctuatedTriple f = fluctuate(d, {ComplexMatrix::identity(sp.dim()), 1.0, -1.0, 1.0, 0.0});
  CHECK(fluctuated_transverse_distance(f, 0.3).is_infinite());
}
