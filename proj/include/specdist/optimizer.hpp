#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specdist/doubled.hpp"
#include "specdist/moyal.hpp"
#include "specdist/triple.hpp"
#include "specdist/twopoint.hpp"

namespace specdist {

struct BallProblem {
  SpectralTriple triple;
  StateFunctional rho1;
  StateFunctional rho2;
  std::vector<ComplexMatrix> basis;  // Hermitian, even, on H
  // when set, states are conditioned on the range of this projector:
  // rho(X) = Tr(pi(rho) X) / Tr(pi(rho) P)
  std::optional<ComplexMatrix> condition_on;
  int max_iters = 200;  // per continuation stage
  int starts = 16;
  std::uint64_t seed = 42;
};

// Best ratio (rho1 - rho2)(a) / ||[D, a]|| found over real combinations of
// the basis. Throws DegenerateProblem when the functional vanishes on the
// probes; returns +inf when some direction has zero commutator but nonzero
// functional.
DistanceReport supremum_lower_bound(const BallProblem& p);

// One local ascent from a given coefficient vector; exposed for testing.
double ascend_from(const BallProblem& p, std::vector<double> x0);

// |ball_norm - expected| <= 1e-8
bool verify_saturation(const SpectralTriple& t, const AlgebraElement& a, double expected_norm);
bool verify_saturation(const SpectralTriple& t, const ComplexMatrix& x, double expected_norm);

// Hermitian basis of the first k+1 levels of H_c, as dim x dim matrices
std::vector<ComplexMatrix> hermitian_level_basis(std::size_t dim, int k);

// Default probe spaces. Moyal: P_K pi(h) P_K. Doubled: P_K pi(h (x) e_ii) P_K.
// Both condition the states on the range of P_K. Two-point: {diag(1,0), diag(0,1)}.
BallProblem moyal_probe_problem(const MoyalTriple& t, const StateFunctional& rho1,
                                const StateFunctional& rho2, int k = 4);
BallProblem doubled_probe_problem(const DoubledTriple& t, const StateFunctional& rho1,
                                  const StateFunctional& rho2, int k = 4);
BallProblem twopoint_probe_problem(const TwoPointTriple& t);

}  // namespace specdist
