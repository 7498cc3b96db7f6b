#include <doctest.h>

#include <cmath>

#include "specdist/errors.hpp"
#include "specdist/optimizer.hpp"

using namespace specdist;

TEST_CASE("two-point oracle hits 1/|Lambda|") {
  const auto p = twopoint_probe_problem(build_twopoint(std::polar(2.5, 0.3)));
  const auto r = supremum_lower_bound(p);
  CHECK(r.method == Method::oracle);
  CHECK(r.value == doctest::Approx(0.4).epsilon(1e-8));
}

TEST_CASE("Lambda = 0 is unbounded") {
  CHECK(supremum_lower_bound(twopoint_probe_problem(build_twopoint(0.0))).is_infinite());
}

TEST_CASE("identical states are degenerate") {
  const FockSpace sp(6, 1.0);
  const auto m = build_moyal(sp);
  const auto rho = coherent_state(sp, 0.3);
  CHECK_THROWS_AS(supremum_lower_bound(moyal_probe_problem(m, rho, rho, 3)), DegenerateProblem);
}

TEST_CASE("Moyal oracle stays below the analytic value") {
  const FockSpace sp(8, 1.0);
  const auto m = build_moyal(sp);
  auto p = moyal_probe_problem(m, coherent_state(sp, 0.5), coherent_state(sp, 0.0), 3);
  p.starts = 6;
  const double v = supremum_lower_bound(p).value;
  CHECK(v <= moyal_closed_form(1.0, 0.5) * (1 + 1e-6));
  CHECK(v >= 0.9 * moyal_closed_form(1.0, 0.5));
}

TEST_CASE("ascent is invariant under rescaling the start") {
  const FockSpace sp(8, 1.0);
  auto p = moyal_probe_problem(build_moyal(sp), coherent_state(sp, 0.5), coherent_state(sp, 0.0), 2);
  std::vector<double> x0(p.basis.size());
  for (std::size_t k = 0; k < x0.size(); ++k) x0[k] = std::sin(1.0 + k);
  std::vector<double> x1 = x0;
  for (auto& v : x1) v *= 37.0;
  CHECK(ascend_from(p, x0) == doctest::Approx(ascend_from(p, x1)).epsilon(1e-10));
}

TEST_CASE("same seed, same answer") {
  const FockSpace sp(8, 1.0);
  auto p = moyal_probe_problem(build_moyal(sp), coherent_state(sp, 0.4), coherent_state(sp, 0.0), 2);
  p.starts = 4;
  CHECK(supremum_lower_bound(p).value == supremum_lower_bound(p).value);
}

TEST_CASE("saturation check") {
  const DoubledTriple d = build_doubled(FockSpace(10, 1.0), 2.0);
  const auto r = transverse_distance(d, 0.3, 3);
  REQUIRE(r.optimal_element);
  CHECK(verify_saturation(d.triple, *r.optimal_element, 1.0));
  CHECK_FALSE(verify_saturation(d.triple, *r.optimal_element, 0.9));
}
