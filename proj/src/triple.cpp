#include "specdist/triple.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specdist/errors.hpp"

namespace specdist {

AlgebraElement AlgebraElement::moyal(ComplexMatrix a) {
  AlgebraElement e;
  e.terms_.push_back({std::move(a), std::nullopt});
  return e;
}

AlgebraElement AlgebraElement::internal(cplx c1, cplx c2) {
  AlgebraElement e;
  e.terms_.push_back({std::nullopt, std::array<cplx, 2>{c1, c2}});
  return e;
}

AlgebraElement AlgebraElement::product(ComplexMatrix a, cplx c1, cplx c2) {
  AlgebraElement e;
  e.terms_.push_back({std::move(a), std::array<cplx, 2>{c1, c2}});
  return e;
}

AlgebraElement AlgebraElement::sum(std::vector<ElementTerm> terms) {
  if (terms.empty()) throw InvalidArgument("empty algebra element");
  AlgebraElement e;
  e.terms_ = std::move(terms);
  return e;
}

AlgebraElement AlgebraElement::projected(ComplexMatrix proj) const {
  AlgebraElement e = *this;
  e.projector_ = std::move(proj);
  return e;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::oracle: return "oracle";
    case Method::restricted: return "restricted";
  }
  return "unknown";
}

ComplexMatrix SpectralTriple::algebra_matrix(const AlgebraElement& a) const {
  ComplexMatrix total(shape.dim(), shape.dim());
  for (const auto& term : a.terms()) {
    ComplexMatrix m = ComplexMatrix::identity(1);
    if (term.moyal) {
      if (!shape.moyal_dim || term.moyal->rows() != shape.moyal_dim || !term.moyal->is_square())
        throw DimensionMismatch("Moyal factor does not fit this triple");
      m = *term.moyal;
    } else if (shape.moyal_dim) {
      m = ComplexMatrix::identity(shape.moyal_dim);
    }
    if (term.internal) {
      if (!shape.internal) throw DimensionMismatch("triple has no internal factor");
      m = kron(m, ComplexMatrix::diagonal({(*term.internal)[0], (*term.internal)[1]}));
    } else if (shape.internal) {
      m = kron(m, ComplexMatrix::identity(2));
    }
    total += m;
  }
  return total;
}

ComplexMatrix SpectralTriple::represent(const AlgebraElement& a) const {
  ComplexMatrix x = rep(algebra_matrix(a));
  if (a.projector()) {
    const auto& p = *a.projector();
    if (p.rows() != hilbert_dim()) throw DimensionMismatch("projector does not act on H");
    x = p * x * p;
  }
  return x;
}

void SpectralTriple::validate() const {
  const std::size_t n = hilbert_dim();
  if (!dirac.is_square() || grading.rows() != n || !grading.is_square())
    throw DimensionMismatch("Dirac and grading shapes differ");
  if (!dirac.is_hermitian(tol::hermiticity)) throw InvalidArgument("Dirac operator not Hermitian");
  if (max_abs_diff(grading * grading, ComplexMatrix::identity(n)) > 1e-10)
    throw InvalidArgument("grading does not square to 1");
  if (anticommutator(grading, dirac).max_abs() > 1e-10)
    throw InvalidArgument("grading does not anticommute with the Dirac operator");

  // evenness on two fixed samples: identity and a dense Hermitian
  // (diagonal in the internal index, which is innermost)
  const std::size_t m = shape.dim();
  ComplexMatrix sample(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      if (shape.internal && (i - j) % 2 != 0) continue;
      sample(i, j) = cplx(std::cos(1.0 + i + 2.0 * j), i == j ? 0.0 : std::sin(3.0 * i + j));
      sample(j, i) = std::conj(sample(i, j));
    }
  for (const auto& s : {ComplexMatrix::identity(m), sample}) {
    ComplexMatrix x = rep(s);
    if (x.rows() != n) throw DimensionMismatch("representation does not act on H");
    if (commutator(grading, x).max_abs() > 1e-10)
      throw InvalidArgument("represented algebra is not even");
  }
}

double ball_norm_of(const SpectralTriple& t, const ComplexMatrix& x) {
  return operator_norm(commutator(t.dirac, x));
}

double ball_norm(const SpectralTriple& t, const AlgebraElement& a) {
  return ball_norm_of(t, t.represent(a));
}

double eval_state(const SpectralTriple& t, const StateFunctional& rho, const ComplexMatrix& x) {
  if (rho.rho.rows() != t.shape.dim()) throw DimensionMismatch("state does not fit the algebra");
  const ComplexMatrix r = t.rep(rho.rho);
  if (r.rows() != x.rows() || !x.is_square())
    throw DimensionMismatch("observable does not act on H");
  double s = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t k = 0; k < r.cols(); ++k) s += (r(i, k) * x(k, i)).real();
  return t.state_weight * s;
}

DistanceReport distance_from_element(const SpectralTriple& t, const StateFunctional& rho1,
                                     const StateFunctional& rho2, const AlgebraElement& a) {
  const ComplexMatrix x = t.represent(a);
  const double bn = ball_norm_of(t, x);
  if (bn > 1.0 + ball_tol) throw BallViolation(bn, ball_tol);
  DistanceReport r;
  r.value = eval_state(t, rho1, x) - eval_state(t, rho2, x);
  r.optimal_element = a;
  r.optimal_operator = x;
  r.ball_norm = bn;
  r.method = Method::analytic;
  for (const auto* s : {&rho1, &rho2})
    r.warnings.insert(r.warnings.end(), s->warnings.begin(), s->warnings.end());
  return r;
}

double commutator_norm(const ComplexMatrix& d, const ComplexMatrix& p) {
  const ComplexMatrix c = commutator(d, p);
  const double f = c.frobenius_norm();
  if (f <= commute_tol) return f;  // bounds the operator norm from above
  const std::size_t n = p.rows();
  const long rank = std::lround(p.trace().real());
  if (rank < 1 || 4 * static_cast<std::size_t>(rank) >= n || !p.is_hermitian() ||
      max_abs_diff(p * p, p) > 1e-10)
    return operator_norm(c);
  // [D, P] lives on range(P) + range(D P), so compress there
  const ComplexMatrix w = range_isometry(p);
  const ComplexMatrix dw = d * w;
  std::vector<ComplexMatrix> q;
  for (std::size_t j = 0; j < 2 * w.cols(); ++j) {
    ComplexMatrix u = j < w.cols() ? w.col(j) : dw.col(j - w.cols());
    const double n0 = vector_norm(u);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : q) u -= inner(v, u) * v;
    const double nu = vector_norm(u);
    if (nu <= 1e-12 * std::max(1.0, n0)) continue;
    q.push_back(u * cplx(1.0 / nu));
  }
  const ComplexMatrix qm = hstack(q);
  return operator_norm(qm.adjoint() * c * qm);
}

ComplexMatrix range_isometry(const ComplexMatrix& proj) {
  if (!proj.is_square()) throw DimensionMismatch("projector must be square");
  if (!proj.is_hermitian(1e-10) || max_abs_diff(proj * proj, proj) > 1e-10)
    throw InvalidArgument("not an orthogonal projector");
  const std::size_t n = proj.rows();
  const long rank = std::lround(proj.trace().real());
  if (rank < 1) throw InvalidArgument("projector has empty range");

  // greedy pivoting on residual column norms
  std::vector<ComplexMatrix> basis;
  std::vector<std::size_t> picked;
  std::vector<ComplexMatrix> resid;
  for (std::size_t j = 0; j < n; ++j) resid.push_back(proj.col(j));
  for (long k = 0; k < rank; ++k) {
    std::size_t best = n;
    double best_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(picked.begin(), picked.end(), j) != picked.end()) continue;
      const double nj = vector_norm(resid[j]);
      if (nj > best_norm) best_norm = nj, best = j;
    }
    if (best == n || best_norm < 1e-8) throw InvalidArgument("projector rank deficient");
    ComplexMatrix q = resid[best] * cplx(1.0 / best_norm);
    picked.push_back(best);
    for (auto& r : resid) r -= inner(q, r) * q;
  }

  // orthonormalise again in index order so the layout is predictable
  std::sort(picked.begin(), picked.end());
  for (auto j : picked) {
    ComplexMatrix u = proj.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) u -= inner(q, u) * q;
    u *= 1.0 / vector_norm(u);
    basis.push_back(u);
  }
  return hstack(basis);
}

SpectralTriple restrict_triple(const SpectralTriple& t, const ComplexMatrix& proj) {
  if (proj.rows() != t.hilbert_dim()) throw DimensionMismatch("projector does not act on H");
  const double cn = commutator_norm(t.dirac, proj);
  if (cn > commute_tol) throw ProjectorNotCommuting(cn, commute_tol);

  const ComplexMatrix w = range_isometry(proj);
  const ComplexMatrix wd = w.adjoint();
  SpectralTriple r{t.shape, wd * t.dirac * w, wd * t.grading * w, nullptr, t.state_weight,
                   t.name + "|restricted"};
  if (w.cols() == 2 && t.shape.internal) {
    // two-point: C^2 acting diagonally on the two sheets
    r.shape = AlgebraShape{0, true};
    r.state_weight = 1.0;
    r.rep = [](const ComplexMatrix& m) { return m; };
  } else {
    auto parent_rep = t.rep;
    r.rep = [parent_rep, w, wd](const ComplexMatrix& m) { return wd * parent_rep(m) * w; };
  }
  return r;
}

SpectralTriple gauge_rotate(const SpectralTriple& t, double phi) {
  if (!t.shape.internal || t.hilbert_dim() % 2 != 0)
    throw InvalidArgument("gauge rotation needs an internal C^2 factor");
  const ComplexMatrix u =
      kron(ComplexMatrix::identity(t.hilbert_dim() / 2),
           ComplexMatrix::diagonal({std::polar(1.0, -phi / 2), std::polar(1.0, phi / 2)}));
  SpectralTriple r = t;
  r.dirac = u * t.dirac * u.adjoint();
  // grading and representation are diagonal in the internal index, so they commute with u
  return r;
}

}  // namespace specdist
