#include "specdist/fock.hpp"

#include <cmath>
#include <sstream>

#include "specdist/errors.hpp"

namespace specdist {

FockSpace::FockSpace(int n_max_, double theta_) : n_max(n_max_), theta(theta_) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be positive");
}

void StateFunctional::validate() const {
  if (!rho.is_hermitian(tol::hermiticity)) throw InvalidArgument("state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InvalidArgument("state trace is not 1");
  auto ev = hermitian_eigvals(rho);
  if (ev.back() < -1e-12) throw InvalidArgument("state is not positive");
}

cplx StateFunctional::evaluate(const ComplexMatrix& a) const {
  if (a.rows() != rho.rows() || !a.is_square())
    throw DimensionMismatch("state and observable live on different spaces");
  cplx s = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t k = 0; k < rho.cols(); ++k) s += rho(i, k) * a(k, i);
  return s;
}

ComplexMatrix lowering(const FockSpace& space) {
  ComplexMatrix b(space.dim(), space.dim());
  for (std::size_t n = 1; n < space.dim(); ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

ComplexMatrix raising(const FockSpace& space) { return lowering(space).adjoint(); }

ComplexMatrix number_op(const FockSpace& space) {
  ComplexMatrix m(space.dim(), space.dim());
  for (std::size_t n = 0; n < space.dim(); ++n) m(n, n) = static_cast<double>(n);
  return m;
}

ComplexMatrix projector_P(const FockSpace& space, int n) {
  if (n > space.n_max) throw InvalidArgument("projector order exceeds n_max");
  ComplexMatrix p(space.dim(), space.dim());
  for (int k = 0; k <= n; ++k) p(k, k) = 1.0;
  return p;
}

CoherentVector coherent_vector(const FockSpace& space, cplx z) {
  const double r2 = std::norm(z);
  ComplexMatrix v(space.dim(), 1);
  // z^n / sqrt(n!) by recurrence
  cplx term = 1.0;
  for (int n = 0; n <= space.n_max; ++n) {
    if (n > 0) term *= z / std::sqrt(static_cast<double>(n));
    v(n, 0) = term;
  }
  // discarded mass, summed directly to avoid cancellation
  double tail = 0.0;
  double w = std::norm(term);  // |z|^{2 n_max} / n_max!
  for (int n = space.n_max + 1; n < space.n_max + 400; ++n) {
    w *= r2 / n;
    tail += w;
    if (w < 1e-30 * (tail + 1e-300)) break;
  }
  tail *= std::exp(-r2);
  v *= 1.0 / vector_norm(v);
  return {v, tail};
}

StateFunctional coherent_state(const FockSpace& space, cplx z) {
  auto cv = coherent_vector(space, z);
  std::ostringstream label;
  label << "coherent(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  StateFunctional s{outer(cv.vec, cv.vec), label.str(), {}};
  if (cv.tail_weight > tail_tol) {
    std::ostringstream w;
    w << "truncation tail " << cv.tail_weight << " exceeds " << tail_tol << " at n_max "
      << space.n_max;
    s.warnings.push_back(w.str());
  }
  return s;
}

ComplexMatrix displacement(const FockSpace& space, cplx z) {
  return expm(-std::conj(z) * lowering(space) + z * raising(space));
}

ComplexMatrix translated_basis(const FockSpace& space, cplx z, int k) {
  if (k < 0 || k > space.n_max) throw InvalidArgument("translated basis index out of range");
  ComplexMatrix v = coherent_vector(space, z).vec;
  const ComplexMatrix shifted =
      raising(space) - std::conj(z) * ComplexMatrix::identity(space.dim());
  for (int j = 0; j < k; ++j) v = shifted * v;
  const double nv = vector_norm(v);
  if (nv == 0.0) throw NumericalOverflow("translated basis vector vanished");
  return v * cplx(1.0 / nv);
}

ComplexMatrix translation_frame(const FockSpace& space, cplx z) {
  const std::size_t d = space.dim();
  const ComplexMatrix shifted = raising(space) - std::conj(z) * ComplexMatrix::identity(d);
  std::vector<ComplexMatrix> cols;
  ComplexMatrix v = coherent_vector(space, z).vec;
  for (std::size_t k = 0; k < d; ++k) {
    if (k > 0) v = shifted * v;
    ComplexMatrix u = v;
    // two passes of classical Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) u -= inner(q, u) * q;
    const double nu = vector_norm(u);
    if (nu == 0.0) throw NumericalOverflow("translated frame lost rank");
    u *= 1.0 / nu;
    cols.push_back(u);
    v *= 1.0 / vector_norm(v);
  }
  return hstack(cols);
}

}  // namespace specdist
