#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specdist/doubled.hpp"

namespace specdist {

// c is the Moyal part of the one-form; a2 = diag(alpha1, alpha2) and
// b2 = diag(beta1, beta2) build the internal part a2 [D_2, b2].
struct HiggsConfig {
  ComplexMatrix c;
  cplx alpha1, alpha2, beta1, beta2;
};

struct FluctuatedTriple {
  DoubledTriple base;
  HiggsConfig config;
  ComplexMatrix one_form;  // A
  ComplexMatrix dirac_A;   // D_T + A, untwisted frame; the J A J^-1 term is left out
};

// a2 [D_2, b2] = [[0, alpha1 Lambda (beta2 - beta1)], [alpha2 conj(Lambda) (beta1 - beta2), 0]]
ComplexMatrix internal_one_form(const HiggsConfig& cfg, cplx lambda);

// sigma_3 (x) c (x) a2 [D_2, b2]; throws DimensionMismatch
ComplexMatrix build_one_form(const DoubledTriple& t, const HiggsConfig& cfg);

// throws NonHermitianFluctuation unless D_A is Hermitian within 1e-10
FluctuatedTriple fluctuate(const DoubledTriple& t, const HiggsConfig& cfg);

// the doubled triple with D_A in place of D_T (gauge-rotated the same way)
DoubledTriple fluctuated_view(const FluctuatedTriple& ft);

// g = <z|c|z>, read off the translated basis
double higgs_g(const FluctuatedTriple& ft, cplx z);

// Lambda (1 + alpha1 (beta2 - beta1) g)
cplx effective_lambda(const FluctuatedTriple& ft, double g);

// 1/|Lambda_eff| through the restricted two-point triple at z. Throws
// ProjectorNotCommuting where the restriction is not legal.
DistanceReport fluctuated_transverse_distance(const FluctuatedTriple& ft, cplx z);

struct SweepPoint {
  cplx z;
  double g;
  double formula;                     // 1/|Lambda_eff|, reported everywhere
  std::optional<double> restricted;   // only where the restriction is certified
  bool certified;
  std::string warning;
};

std::vector<SweepPoint> higgs_field_sweep(const FluctuatedTriple& ft, const std::vector<cplx>& grid);

}  // namespace specdist
