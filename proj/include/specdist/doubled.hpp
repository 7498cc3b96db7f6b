#pragma once

#include <string>
#include <vector>

#include "specdist/fock.hpp"
#include "specdist/triple.hpp"
#include "specdist/twopoint.hpp"

namespace specdist {

// Moyal plane times the two-point space. H index (s*d + n)*2 + i.
// The stored triple is gauge-rotated so the coupling is |Lambda|.
struct DoubledTriple {
  FockSpace space;
  cplx lambda;    // as supplied
  double kappa;   // 2 / (theta |Lambda|^2), +inf when Lambda = 0
  SpectralTriple triple;

  double coupling() const { return std::abs(lambda); }
};

DoubledTriple build_doubled(const FockSpace& space, cplx lambda);

// D_M(shift) (x) 1 + gamma_M (x) [[0, Lambda], [conj Lambda, 0]], where the
// Moyal part uses b - shift (frame anchored at shift)
ComplexMatrix doubled_dirac(const FockSpace& space, cplx lambda, cplx shift = 0.0);

std::size_t doubled_index(const FockSpace& space, int spinor, int n, int sheet);

enum class Family { psi0_plus, psi0_minus, psi_plus, psi_minus, psit_plus, psit_minus };
std::string to_string(Family f);

struct DoubledEigenspinor {
  int m;
  Family family;
  ComplexMatrix vec;
  double eigenvalue;
};

// Per m >= 1 the order is psi+, psi-, psi~+, psi~-. Residuals checked to
// 1e-10. Throws InvalidArgument for m_max > n_max - 1 or Lambda = 0.
std::vector<DoubledEigenspinor> doubled_eigenspinors(const DoubledTriple& t, int m_max);

// the eigen-spinors up to m = N as columns
ComplexMatrix doubled_eigenbasis(const DoubledTriple& t, int n);

// diag(P_N, P_{N-1}) (x) 1_2, built directly
ComplexMatrix doubled_projector(const FockSpace& space, int n);

// the same projector summed from eigen-spinor dyads; checked against the
// direct one to 1e-12
ComplexMatrix eigenspinor_projector(const DoubledTriple& t, int n);

struct SpectrumRow {
  int m;
  Family family;
  double predicted;
  double computed;
  double residual;
};

// Eigenvalues of D_T on the range of P_{n_max-1} (1) 1_2, paired with the
// closed form +-|Lambda| sqrt(kappa m + 1). The top Fock level is left out
// because truncation gives it spurious eigenvalues.
std::vector<SpectrumRow> doubled_spectrum(const DoubledTriple& t);

// X = 1/(|Lambda| sqrt kappa) = sqrt(theta/2)
double longitudinal_scale(const FockSpace& space);

// the 10x10 commutator [D_T, P_2 pi(a) P_2] in the eigen-spinor basis,
// a = (b + b^dagger) (x) diag(X, X); checked against ml_closed_form
ComplexMatrix matrix_Ml(const DoubledTriple& t, double x);
ComplexMatrix ml_closed_form(double kappa, double lambda, double x);

// [D_T, P_N pi(1 (x) diag(c1, c2)) P_N] in the eigen-spinor basis, Y = c1 - c2
ComplexMatrix matrix_Mt(const DoubledTriple& t, int n, double y);
ComplexMatrix transverse_block_Q(double lambda, double y);
ComplexMatrix transverse_block_R(int m, double kappa, double lambda, double y);
// block-diagonal assembly of Q and R^(1..N)
ComplexMatrix mt_closed_form(int n, double kappa, double lambda, double y);

// c1 = -c2 = X at P_2
double rejected_branch_norm(const DoubledTriple& t, double x);
double rejected_branch_closed_form(double kappa, double lambda, double x);

StateFunctional composite_state(const FockSpace& space, cplx z, int sheet);

DistanceReport longitudinal_distance(const DoubledTriple& t, cplx z, int n);
// cross_check holds the restricted two-point value; it is left empty, with a
// warning, when truncation keeps the projector from commuting
DistanceReport transverse_distance(const DoubledTriple& t, cplx z, int n);
DistanceReport hypotenuse_distance(const DoubledTriple& t, cplx z, int n);

double longitudinal_closed_form(double theta, cplx z);
double transverse_closed_form(cplx lambda);
double hypotenuse_closed_form(double theta, cplx lambda, cplx z);

// diag(|z><z|, 0) (x) 1_2
ComplexMatrix transverse_projector(const FockSpace& space, cplx z);

struct RestrictedTransverse {
  SpectralTriple restricted;
  TwoPointTriple twopoint;
  double commutator_norm;
};

// Restrict the frame-anchored Dirac operator (plus an optional fluctuation)
// to the range of the transverse projector. Throws ProjectorNotCommuting.
RestrictedTransverse restrict_transverse(const DoubledTriple& t, cplx z,
                                         const ComplexMatrix* fluctuation = nullptr);

}  // namespace specdist
