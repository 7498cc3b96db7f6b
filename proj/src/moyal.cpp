#include "specdist/moyal.hpp"

#include <cmath>
#include <string>

#include "specdist/errors.hpp"

namespace specdist {

ComplexMatrix moyal_dirac(const FockSpace& space) {
  const double k = std::sqrt(2.0 / space.theta);
  return cplx(k) * (kron(unit_e(0, 1), raising(space)) + kron(unit_e(1, 0), lowering(space)));
}

MoyalTriple build_moyal(const FockSpace& space) {
  const std::size_t d = space.dim();
  SpectralTriple t{AlgebraShape{d, false},
                   moyal_dirac(space),
                   kron(pauli_z(), ComplexMatrix::identity(d)),
                   [](const ComplexMatrix& m) { return kron(ComplexMatrix::identity(2), m); },
                   0.5,
                   "moyal"};
  t.validate();
  return {space, std::move(t)};
}

std::vector<MoyalEigenspinor> moyal_eigenspinors(const MoyalTriple& t, int m_max) {
  const auto& sp = t.space;
  if (m_max < 0 || m_max > sp.n_max - 1)
    throw InvalidArgument("m_max must lie in [0, n_max - 1]");
  const std::size_t d = sp.dim();
  std::vector<MoyalEigenspinor> out;
  for (int m = 0; m <= m_max; ++m) {
    for (int sign : {+1, -1}) {
      if (m == 0 && sign < 0) break;
      ComplexMatrix v(2 * d, 1);
      if (m == 0) {
        v(0, 0) = 1.0;
      } else {
        v(m, 0) = 1.0 / std::sqrt(2.0);
        v(d + m - 1, 0) = sign / std::sqrt(2.0);
      }
      const double lam = sign * std::sqrt(2.0 * m / sp.theta);
      const double res = vector_norm(t.triple.dirac * v - cplx(lam) * v);
      if (res > 1e-10)
        throw CertificationFailure("Moyal eigen-spinor residual " + std::to_string(res));
      out.push_back({m, sign, std::move(v), lam});
    }
  }
  return out;
}

ComplexMatrix moyal_projector(const FockSpace& space, int n) {
  if (n < 0 || n > space.n_max - 1) throw InvalidArgument("projector order must lie in [0, n_max - 1]");
  return kron(unit_e(0, 0), projector_P(space, n)) + kron(unit_e(1, 1), projector_P(space, n - 1));
}

ComplexMatrix position_like(const FockSpace& space, double alpha) {
  const double k = std::sqrt(space.theta / 2.0);
  return cplx(k) * (std::polar(1.0, alpha) * lowering(space) +
                    std::polar(1.0, -alpha) * raising(space));
}

AlgebraElement moyal_optimal_element(const FockSpace& space, cplx w, int n) {
  // Tr(rho_z a_s) = sqrt(2 theta) Re(z e^{i alpha}), so alpha = -arg w lines it up
  const double alpha = w == cplx(0.0) ? 0.0 : -std::arg(w);
  return AlgebraElement::moyal(position_like(space, alpha)).projected(moyal_projector(space, n));
}

int evaluation_order(const FockSpace& space) { return space.n_max - 2; }

DistanceReport moyal_distance_between(const MoyalTriple& t, const StateFunctional& rho1,
                                      const StateFunctional& rho2, cplx w, int n) {
  const int n_eval = evaluation_order(t.space);
  if (n < 2 || n > t.space.n_max - 1) throw InvalidArgument("N must lie in [2, n_max - 1]");
  if (n_eval < 2) throw InvalidArgument("n_max too small to evaluate");

  const AlgebraElement at_n = moyal_optimal_element(t.space, w, n);
  const double bn = ball_norm(t.triple, at_n);
  if (bn > 1.0 + ball_tol) throw BallViolation(bn, ball_tol);

  DistanceReport r =
      distance_from_element(t.triple, rho1, rho2, moyal_optimal_element(t.space, w, n_eval));
  r.optimal_element = at_n;
  r.optimal_operator = t.triple.represent(at_n);
  r.ball_norm = std::max(bn, r.ball_norm);
  r.truncation_order = n;
  return r;
}

DistanceReport moyal_distance(const MoyalTriple& t, cplx z, int n) {
  return moyal_distance_between(t, coherent_state(t.space, z), coherent_state(t.space, 0.0), z,
                                n);
}

DistanceReport moyal_pair_distance(const MoyalTriple& t, cplx z1, cplx z2, int n) {
  return moyal_distance_between(t, coherent_state(t.space, z1), coherent_state(t.space, z2),
                                z1 - z2, n);
}

double moyal_closed_form(double theta, cplx z) { return std::sqrt(2.0 * theta) * std::abs(z); }

}  // namespace specdist
