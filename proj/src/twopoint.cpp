#include "specdist/twopoint.hpp"

#include <cmath>

#include "specdist/errors.hpp"

namespace specdist {

TwoPointTriple build_twopoint(cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw InvalidArgument("Lambda must be finite");
  SpectralTriple t{AlgebraShape{0, true},
                   ComplexMatrix{{0.0, lambda}, {std::conj(lambda), 0.0}},
                   pauli_z(),
                   [](const ComplexMatrix& m) { return m; },
                   1.0,
                   "two-point"};
  t.validate();
  return {lambda, std::move(t)};
}

StateFunctional sheet_state(int i) {
  if (i != 1 && i != 2) throw InvalidArgument("sheet index must be 1 or 2");
  ComplexMatrix rho(2, 2);
  rho(i - 1, i - 1) = 1.0;
  return {rho, i == 1 ? "omega1" : "omega2", {}};
}

DistanceReport twopoint_distance(const TwoPointTriple& t) {
  if (std::abs(t.lambda) == 0.0) {
    DistanceReport r;
    r.value = infinite_distance;
    r.method = Method::analytic;
    r.warnings.push_back("Lambda = 0: the sheets are disconnected");
    return r;
  }
  // ||[D, diag(c1, c2)]|| = |Lambda| |c1 - c2|, so c1 - c2 = 1/|Lambda| saturates
  const double y = 1.0 / std::abs(t.lambda);
  return distance_from_element(t.triple, sheet_state(1), sheet_state(2),
                               AlgebraElement::internal(y, 0.0));
}

TwoPointTriple as_twopoint(const SpectralTriple& t) {
  const auto& d = t.dirac;
  if (d.rows() != 2 || !t.shape.internal || t.shape.moyal_dim != 0)
    throw InvalidArgument("not a two-point triple");
  const double scale = std::max(1.0, d.max_abs());
  if (std::abs(d(0, 0)) > 1e-10 * scale || std::abs(d(1, 1)) > 1e-10 * scale)
    throw InvalidArgument("restricted Dirac operator has a diagonal part");
  if (max_abs_diff(t.grading, pauli_z()) > 1e-10) throw InvalidArgument("grading is not sigma_3");
  return build_twopoint(d(0, 1));
}

}  // namespace specdist
