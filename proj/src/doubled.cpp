#include "specdist/doubled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specdist/errors.hpp"
#include "specdist/moyal.hpp"

namespace specdist {

namespace {

StateFunctional with_sheet(const StateFunctional& fock, int sheet) {
  const StateFunctional w = sheet_state(sheet);
  return {kron(fock.rho, w.rho), fock.label + "(x)" + w.label, fock.warnings};
}

// (b e^{i alpha} + b^dagger e^{-i alpha}) with alpha aligned to w
ComplexMatrix aligned_quadrature(const FockSpace& space, cplx w) {
  const double alpha = w == cplx(0.0) ? 0.0 : -std::arg(w);
  return std::polar(1.0, alpha) * lowering(space) + std::polar(1.0, -alpha) * raising(space);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_order(const FockSpace& space, int n, int lo) {
  if (n < lo || n > space.n_max - 1)
    throw InvalidArgument("N must lie in [" + std::to_string(lo) + ", n_max - 1]");
}

void require_evaluable(const FockSpace& space) {
  if (evaluation_order(space) < 2) throw InvalidArgument("n_max too small to evaluate");
}

void certify_close(const ComplexMatrix& got, const ComplexMatrix& want, double tol,
                   const char* what) {
  const double err = max_abs_diff(got, want);
  if (err > tol)
    throw CertificationFailure(std::string(what) + " deviates from closed form by " + fmt(err));
}

}  // namespace

ComplexMatrix doubled_dirac(const FockSpace& space, cplx lambda, cplx shift) {
  const std::size_t d = space.dim();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix b = lowering(space) - shift * id;
  const ComplexMatrix bd = raising(space) - std::conj(shift) * id;
  const ComplexMatrix dm =
      cplx(std::sqrt(2.0 / space.theta)) * (kron(unit_e(0, 1), bd) + kron(unit_e(1, 0), b));
  const ComplexMatrix d2{{0.0, lambda}, {std::conj(lambda), 0.0}};
  return kron(dm, ComplexMatrix::identity(2)) + kron(kron(pauli_z(), id), d2);
}

DoubledTriple build_doubled(const FockSpace& space, cplx lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw InvalidArgument("Lambda must be finite");
  const std::size_t d = space.dim();
  SpectralTriple base{AlgebraShape{d, true},
                      doubled_dirac(space, lambda),
                      kron(kron(pauli_z(), ComplexMatrix::identity(d)), pauli_z()),
                      [](const ComplexMatrix& m) { return kron(ComplexMatrix::identity(2), m); },
                      0.5,
                      "doubled-moyal"};
  base.validate();
  const double mod = std::abs(lambda);
  const double kappa = mod > 0.0 ? 2.0 / (space.theta * mod * mod) : infinite_distance;
  SpectralTriple rotated = gauge_rotate(base, std::arg(lambda));
  return {space, lambda, kappa, std::move(rotated)};
}

std::size_t doubled_index(const FockSpace& space, int spinor, int n, int sheet) {
  return (static_cast<std::size_t>(spinor) * space.dim() + static_cast<std::size_t>(n)) * 2 +
         static_cast<std::size_t>(sheet);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::psi0_plus: return "psi0+";
    case Family::psi0_minus: return "psi0-";
    case Family::psi_plus: return "psi+";
    case Family::psi_minus: return "psi-";
    case Family::psit_plus: return "psi~+";
    case Family::psit_minus: return "psi~-";
  }
  return "?";
}

std::vector<DoubledEigenspinor> doubled_eigenspinors(const DoubledTriple& t, int m_max) {
  const auto& sp = t.space;
  if (m_max < 0 || m_max > sp.n_max - 1) throw InvalidArgument("m_max must lie in [0, n_max - 1]");
  if (t.coupling() == 0.0) throw InvalidArgument("eigen-spinors need Lambda != 0");
  const std::size_t dim = t.triple.hilbert_dim();
  const double lam = t.coupling();

  // V^(m)_{st} = (|m>, s|m-1>) (x) (1, t)
  auto v = [&](int m, int s, int tt) {
    ComplexMatrix out(dim, 1);
    out(doubled_index(sp, 0, m, 0), 0) = 1.0;
    out(doubled_index(sp, 0, m, 1), 0) = double(tt);
    out(doubled_index(sp, 1, m - 1, 0), 0) = double(s);
    out(doubled_index(sp, 1, m - 1, 1), 0) = double(s * tt);
    return out;
  };

  std::vector<DoubledEigenspinor> out;
  for (int sign : {+1, -1}) {
    ComplexMatrix p(dim, 1);
    p(doubled_index(sp, 0, 0, 0), 0) = 1.0 / std::sqrt(2.0);
    p(doubled_index(sp, 0, 0, 1), 0) = sign / std::sqrt(2.0);
    out.push_back({0, sign > 0 ? Family::psi0_plus : Family::psi0_minus, p, sign * lam});
  }
  for (int m = 1; m <= m_max; ++m) {
    const double a = std::sqrt(t.kappa * m + 1.0), b = std::sqrt(t.kappa * m);
    const cplx nm = 1.0 / (4.0 * a);
    const ComplexMatrix vpp = v(m, 1, 1), vmm = v(m, -1, -1), vmp = v(m, -1, 1),
                        vpm = v(m, 1, -1);
    out.push_back({m, Family::psi_plus,
                   nm * (vpp + vmm + cplx(a - b) * vmp - cplx(a + b) * vpm), lam * a});
    out.push_back({m, Family::psi_minus,
                   nm * (vpp + vmm - cplx(a + b) * vmp + cplx(a - b) * vpm), -lam * a});
    out.push_back({m, Family::psit_plus,
                   nm * (vpm + vmp + cplx(a + b) * vpp - cplx(a - b) * vmm), lam * a});
    out.push_back({m, Family::psit_minus,
                   nm * (vpm + vmp - cplx(a - b) * vpp + cplx(a + b) * vmm), -lam * a});
  }
  for (const auto& e : out) {
    const double res = vector_norm(t.triple.dirac * e.vec - cplx(e.eigenvalue) * e.vec);
    if (res > 1e-10)
      throw CertificationFailure("eigen-spinor " + to_string(e.family) + " m=" +
                                 std::to_string(e.m) + " residual " + fmt(res));
  }
  return out;
}

ComplexMatrix doubled_eigenbasis(const DoubledTriple& t, int n) {
  std::vector<ComplexMatrix> cols;
  for (auto& e : doubled_eigenspinors(t, n)) cols.push_back(std::move(e.vec));
  return hstack(cols);
}

ComplexMatrix doubled_projector(const FockSpace& space, int n) {
  return kron(moyal_projector(space, n), ComplexMatrix::identity(2));
}

ComplexMatrix eigenspinor_projector(const DoubledTriple& t, int n) {
  const ComplexMatrix w = doubled_eigenbasis(t, n);
  const ComplexMatrix p = w * w.adjoint();
  certify_close(p, doubled_projector(t.space, n), 1e-12, "eigen-spinor projector");
  return p;
}

std::vector<SpectrumRow> doubled_spectrum(const DoubledTriple& t) {
  if (t.coupling() == 0.0) throw InvalidArgument("spectrum pairing needs Lambda != 0");
  const auto& sp = t.space;
  const int top = sp.n_max - 1;
  std::vector<std::size_t> idx;
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n <= top - s; ++n)
      for (int i = 0; i < 2; ++i) idx.push_back(doubled_index(sp, s, n, i));
  std::sort(idx.begin(), idx.end());
  std::vector<double> computed = hermitian_eigvals(compress(t.triple.dirac, idx));

  const double lam = t.coupling();
  std::vector<SpectrumRow> rows;
  rows.push_back({0, Family::psi0_plus, lam, 0, 0});
  rows.push_back({0, Family::psi0_minus, -lam, 0, 0});
  for (int m = 1; m <= top; ++m) {
    const double e = lam * std::sqrt(t.kappa * m + 1.0);
    rows.push_back({m, Family::psi_plus, e, 0, 0});
    rows.push_back({m, Family::psi_minus, -e, 0, 0});
    rows.push_back({m, Family::psit_plus, e, 0, 0});
    rows.push_back({m, Family::psit_minus, -e, 0, 0});
  }
  if (rows.size() != computed.size())
    throw CertificationFailure("spectrum size mismatch");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) { return a.predicted > b.predicted; });
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].computed = computed[k];
    rows[k].residual = std::abs(rows[k].computed - rows[k].predicted);
  }
  return rows;
}

double longitudinal_scale(const FockSpace& space) { return std::sqrt(space.theta / 2.0); }

ComplexMatrix ml_closed_form(double kappa, double lambda, double x) {
  const double k = kappa, sk = std::sqrt(k), sk1 = std::sqrt(k + 1), s2k1 = std::sqrt(2 * k + 1);
  const double bp = lambda / 4 * (s2k1 + sk1), bm = lambda / 4 * (s2k1 - sk1);
  const double gp = 1 + sk1, gm = 1 - sk1;
  const double ep = lambda / 4 * (std::sqrt(2 * k) * sk1 + sk * s2k1);
  const double em = lambda / 4 * (std::sqrt(2 * k) * sk1 - sk * s2k1);
  const double eta = x * sk / std::sqrt((k + 1) * (2 * k + 1));
  const double c = x * lambda / (2 * std::sqrt(2 * (k + 1)));
  const double d1 = c * (1 + sk + sk1), d2 = c * (1 + sk - sk1), d3 = c * (1 - sk + sk1),
               d4 = c * (1 - sk - sk1);

  ComplexMatrix m(10, 10);
  auto row = [&](int r, int c0, std::initializer_list<double> vals) {
    int j = c0;
    for (double v : vals) m(r, j++) = v;
  };
  row(0, 2, {gm * d3, gp * d4, gm * d1, gp * d2});
  row(1, 2, {-gp * d4, -gm * d3, -gp * d2, -gm * d1});
  row(2, 0, {-gm * d3, gp * d4});
  row(3, 0, {-gp * d4, gm * d3});
  row(4, 0, {-gm * d1, gp * d2});
  row(5, 0, {-gp * d2, gm * d1});
  row(2, 6, {eta * (bm - ep), -eta * (bp + em), -eta * (bm + em), eta * (bp - ep)});
  row(3, 6, {eta * (bp + em), -eta * (bm - ep), -eta * (bp - ep), eta * (bm + em)});
  row(4, 6, {eta * (bm - em), -eta * (bp + ep), -eta * (bm + ep), eta * (bp - em)});
  row(5, 6, {eta * (bp + ep), -eta * (bm - em), -eta * (bp - em), eta * (bm + ep)});
  row(6, 2, {-eta * (bm - ep), -eta * (bp + em), -eta * (bm - em), -eta * (bp + ep)});
  row(7, 2, {eta * (bp + em), eta * (bm - ep), eta * (bp + ep), eta * (bm - em)});
  row(8, 2, {eta * (bm + em), eta * (bp - ep), eta * (bm + ep), eta * (bp - em)});
  row(9, 2, {-eta * (bp - ep), -eta * (bm + em), -eta * (bp - em), -eta * (bm + ep)});
  return m;
}

ComplexMatrix matrix_Ml(const DoubledTriple& t, double x) {
  require_order(t.space, 2, 2);
  const ComplexMatrix w = doubled_eigenbasis(t, 2);
  const AlgebraElement a =
      AlgebraElement::product(lowering(t.space) + raising(t.space), x, x)
          .projected(doubled_projector(t.space, 2));
  const ComplexMatrix m = w.adjoint() * commutator(t.triple.dirac, t.triple.represent(a)) * w;
  certify_close(m, ml_closed_form(t.kappa, t.coupling(), x), 1e-10, "M_l");
  return m;
}

ComplexMatrix transverse_block_Q(double lambda, double y) {
  return {{0.0, lambda * y}, {-lambda * y, 0.0}};
}

ComplexMatrix transverse_block_R(int m, double kappa, double lambda, double y) {
  const double s = std::sqrt(m * kappa);
  const cplx f = lambda * y / std::sqrt(m * kappa + 1.0);
  ComplexMatrix r{{0.0, -s, 0.0, 1.0}, {s, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, s}, {-1.0, 0.0, -s, 0.0}};
  return f * r;
}

ComplexMatrix mt_closed_form(int n, double kappa, double lambda, double y) {
  ComplexMatrix m(4 * n + 2, 4 * n + 2);
  const ComplexMatrix q = transverse_block_Q(lambda, y);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = q(i, j);
  for (int k = 1; k <= n; ++k) {
    const ComplexMatrix r = transverse_block_R(k, kappa, lambda, y);
    const std::size_t o = 4 * (k - 1) + 2;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(o + i, o + j) = r(i, j);
  }
  return m;
}

ComplexMatrix matrix_Mt(const DoubledTriple& t, int n, double y) {
  require_order(t.space, n, 1);
  const ComplexMatrix w = doubled_eigenbasis(t, n);
  const AlgebraElement a = AlgebraElement::internal(y, 0.0).projected(doubled_projector(t.space, n));
  return w.adjoint() * commutator(t.triple.dirac, t.triple.represent(a)) * w;
}

double rejected_branch_closed_form(double kappa, double lambda, double x) {
  return x * lambda * std::sqrt(8 + kappa + 4 * std::sqrt(1 + kappa));
}

double rejected_branch_norm(const DoubledTriple& t, double x) {
  // everything lives below level 3, so a small space gives the same norm
  const FockSpace small(4, t.space.theta);
  const DoubledTriple s = build_doubled(small, t.lambda);
  const AlgebraElement a = AlgebraElement::product(lowering(small) + raising(small), x, -x)
                               .projected(doubled_projector(small, 2));
  return ball_norm(s.triple, a);
}

StateFunctional composite_state(const FockSpace& space, cplx z, int sheet) {
  return with_sheet(coherent_state(space, z), sheet);
}

double longitudinal_closed_form(double theta, cplx z) { return std::sqrt(2 * theta) * std::abs(z); }

double transverse_closed_form(cplx lambda) {
  return std::abs(lambda) == 0.0 ? infinite_distance : 1.0 / std::abs(lambda);
}

double hypotenuse_closed_form(double theta, cplx lambda, cplx z) {
  if (std::abs(lambda) == 0.0) return infinite_distance;
  return std::sqrt(2 * theta * std::norm(z) + 1.0 / std::norm(lambda));
}

DistanceReport longitudinal_distance(const DoubledTriple& t, cplx z, int n) {
  require_order(t.space, n, 2);
  require_evaluable(t.space);
  const auto& sp = t.space;
  const double x = longitudinal_scale(sp);
  const double expected_norm = x * std::sqrt(2.0 / sp.theta);  // X Lambda sqrt(kappa)

  auto element = [&](int order) {
    return AlgebraElement::product(aligned_quadrature(sp, z), x, x)
        .projected(doubled_projector(sp, order));
  };
  const AlgebraElement at_n = element(n);
  const double bn = ball_norm(t.triple, at_n);
  if (std::abs(bn - expected_norm) > 1e-8)
    throw CertificationFailure("longitudinal ball norm " + fmt(bn) + ", expected " +
                               fmt(expected_norm));
  if (bn > 1.0 + ball_tol) throw BallViolation(bn, ball_tol);

  DistanceReport r = distance_from_element(t.triple, composite_state(sp, z, 1),
                                           composite_state(sp, 0.0, 1), element(evaluation_order(sp)));
  r.optimal_element = at_n;
  r.optimal_operator = t.triple.represent(at_n);
  r.ball_norm = std::max(bn, r.ball_norm);
  r.truncation_order = n;

  if (t.coupling() > 0.0) {
    // the other sign choice c1 = -c2, normalised into the ball at P_2
    const double norm1 = rejected_branch_norm(t, 1.0);
    const double estimate = 2.0 * std::abs(z) / norm1;
    r.warnings.push_back("rejected branch c1 = -c2: ball norm " + fmt(norm1) +
                         " per unit X at P_2, distance estimate " + fmt(estimate) +
                         " below " + fmt(r.value));
  }
  return r;
}

DistanceReport transverse_distance(const DoubledTriple& t, cplx z, int n) {
  require_order(t.space, n, 1);
  const auto& sp = t.space;
  if (t.coupling() == 0.0) {
    DistanceReport r;
    r.value = infinite_distance;
    r.truncation_order = n;
    r.warnings.push_back("Lambda = 0: the sheets are disconnected");
    return r;
  }
  const double lam = t.coupling();
  const double y = 1.0 / lam;
  const AlgebraElement a = AlgebraElement::internal(y, 0.0).projected(doubled_projector(sp, n));

  // block structure in the eigen-spinor basis
  const ComplexMatrix mt = matrix_Mt(t, n, y);
  certify_close(mt, mt_closed_form(n, t.kappa, lam, y), 1e-10, "M_t");
  certify_close(adjoint_matmul(mt, mt), cplx(lam * lam * y * y) * ComplexMatrix::identity(mt.rows()),
                1e-12, "M_t^dagger M_t");

  // both states sit at z; move them back to the origin, where the element is anchored
  const ComplexMatrix frame = translation_frame(sp, z);
  StateFunctional rz = coherent_state(sp, z);
  StateFunctional moved{frame.adjoint() * rz.rho * frame, rz.label, rz.warnings};
  DistanceReport r = distance_from_element(t.triple, with_sheet(moved, 1), with_sheet(moved, 2), a);
  r.truncation_order = n;

  // the restricted route; at small n_max the truncation can spoil it
  try {
    const RestrictedTransverse rt = restrict_transverse(t, z);
    r.cross_check = twopoint_distance(rt.twopoint).value;
  } catch (const ProjectorNotCommuting& e) {
    r.warnings.push_back(std::string("restricted cross-check unavailable: ") + e.what());
  }
  return r;
}

DistanceReport hypotenuse_distance(const DoubledTriple& t, cplx z, int n) {
  require_order(t.space, n, 2);
  require_evaluable(t.space);
  const auto& sp = t.space;
  if (t.coupling() == 0.0) {
    DistanceReport r;
    r.value = infinite_distance;
    r.truncation_order = n;
    r.warnings.push_back("Lambda = 0: the sheets are disconnected");
    return r;
  }
  const double lam = t.coupling();
  // maximise alpha x + beta y on the unit disc
  const double alpha = std::sqrt(2 * sp.theta) * std::abs(z), beta = 1.0 / lam;
  const double h = std::hypot(alpha, beta);
  const double xs = alpha / h, ys = beta / h;
  const double x = xs / std::sqrt(2.0 / sp.theta);  // x = Lambda sqrt(kappa) X
  const double y = ys / lam;                         // y = Lambda Y

  auto element = [&](int order) {
    std::vector<ElementTerm> terms;
    terms.push_back({aligned_quadrature(sp, z), std::array<cplx, 2>{x, x}});
    terms.push_back({std::nullopt, std::array<cplx, 2>{y, 0.0}});
    return AlgebraElement::sum(std::move(terms)).projected(doubled_projector(sp, order));
  };
  const AlgebraElement at_n = element(n);
  const double bn = ball_norm(t.triple, at_n);
  const double expected = lam * std::sqrt(t.kappa * x * x + y * y);
  if (std::abs(bn - expected) > 1e-8)
    throw CertificationFailure("hypotenuse ball norm " + fmt(bn) + ", expected " + fmt(expected));
  if (bn > 1.0 + ball_tol) throw BallViolation(bn, ball_tol);

  DistanceReport r = distance_from_element(t.triple, composite_state(sp, z, 1),
                                           composite_state(sp, 0.0, 2), element(evaluation_order(sp)));
  r.optimal_element = at_n;
  r.optimal_operator = t.triple.represent(at_n);
  r.ball_norm = std::max(bn, r.ball_norm);
  r.truncation_order = n;
  return r;
}

ComplexMatrix transverse_projector(const FockSpace& space, cplx z) {
  const ComplexMatrix v = coherent_vector(space, z).vec;
  return kron(kron(unit_e(0, 0), outer(v, v)), ComplexMatrix::identity(2));
}

RestrictedTransverse restrict_transverse(const DoubledTriple& t, cplx z,
                                         const ComplexMatrix* fluctuation) {
  SpectralTriple anchored = t.triple;
  anchored.dirac = doubled_dirac(t.space, t.lambda, z);
  if (fluctuation) anchored.dirac = anchored.dirac + *fluctuation;
  const ComplexMatrix p = transverse_projector(t.space, z);
  const double cn = commutator_norm(anchored.dirac, p);
  SpectralTriple r = restrict_triple(anchored, p);
  TwoPointTriple tp = as_twopoint(r);
  return {std::move(r), std::move(tp), cn};
}

}  // namespace specdist
