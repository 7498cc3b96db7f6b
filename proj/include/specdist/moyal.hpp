#pragma once

#include <vector>

#include "specdist/fock.hpp"
#include "specdist/triple.hpp"

namespace specdist {

// Moyal plane: H = C^2 (x) H_c, index s*d + n, spinor index outermost.
struct MoyalTriple {
  FockSpace space;
  SpectralTriple triple;
};

MoyalTriple build_moyal(const FockSpace& space);

// sqrt(2/theta) [[0, b^dagger], [b, 0]]
ComplexMatrix moyal_dirac(const FockSpace& space);

struct MoyalEigenspinor {
  int m;
  int sign;  // +1 or -1; m = 0 has only +1
  ComplexMatrix vec;
  double eigenvalue;  // sign * sqrt(2m/theta)
};

// throws InvalidArgument when m_max > n_max - 1
std::vector<MoyalEigenspinor> moyal_eigenspinors(const MoyalTriple& t, int m_max);

// diag(P_N, P_{N-1}); needs 0 <= N <= n_max - 1
ComplexMatrix moyal_projector(const FockSpace& space, int n);

// sqrt(theta/2) (b e^{i alpha} + b^dagger e^{-i alpha})
ComplexMatrix position_like(const FockSpace& space, double alpha);

// P_N pi(a_s) P_N with the phase aligned to w
AlgebraElement moyal_optimal_element(const FockSpace& space, cplx w, int n);

// order at which values are evaluated; the ball is certified there too
int evaluation_order(const FockSpace& space);

// d(rho1, rho2) with the element aligned to w, the displacement from rho2 to rho1
DistanceReport moyal_distance_between(const MoyalTriple& t, const StateFunctional& rho1,
                                      const StateFunctional& rho2, cplx w, int n);

// d(coherent z, coherent 0) = sqrt(2 theta) |z|; needs 2 <= N <= n_max - 1
DistanceReport moyal_distance(const MoyalTriple& t, cplx z, int n);

// d(coherent z1, coherent z2)
DistanceReport moyal_pair_distance(const MoyalTriple& t, cplx z1, cplx z2, int n);

double moyal_closed_form(double theta, cplx z);

}  // namespace specdist
