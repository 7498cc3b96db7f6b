#pragma once

#include "specdist/triple.hpp"

namespace specdist {

// C^2 on C^2 with D = [[0, Lambda], [conj Lambda, 0]], grading sigma_3.
struct TwoPointTriple {
  cplx lambda;
  SpectralTriple triple;
};

TwoPointTriple build_twopoint(cplx lambda);

// omega_i(c1, c2) = c_i, i in {1, 2}
StateFunctional sheet_state(int i);

// 1/|Lambda|, infinite when Lambda = 0
DistanceReport twopoint_distance(const TwoPointTriple& t);

// Read a restricted triple as a two-point one. Throws InvalidArgument when
// the compressed Dirac operator is not off-diagonal.
TwoPointTriple as_twopoint(const SpectralTriple& t);

}  // namespace specdist
