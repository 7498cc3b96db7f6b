#include "specdist/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <numeric>
#include <random>

#include "specdist/errors.hpp"

namespace specdist {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Commutators compressed onto their joint support, plus the linear functional.
struct Compiled {
  std::vector<ComplexMatrix> c;
  std::vector<double> g;
  std::size_t r = 0;
};

double functional_on(const BallProblem& p, const StateFunctional& s, const ComplexMatrix& b,
                     double mass) {
  const ComplexMatrix r = p.triple.rep(s.rho);
  double v = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t k = 0; k < r.cols(); ++k) v += (r(i, k) * b(k, i)).real();
  return v / mass;
}

double mass_of(const BallProblem& p, const StateFunctional& s) {
  if (!p.condition_on) return 1.0 / p.triple.state_weight;
  const double m = functional_on(p, s, *p.condition_on, 1.0);
  if (!(m > 1e-14)) throw DegenerateProblem("state has no weight on the probe support");
  return m;
}

Compiled compile(const BallProblem& p) {
  const std::size_t n = p.basis.size();
  if (n == 0) throw InvalidArgument("empty probe basis");
  const std::size_t h = p.triple.hilbert_dim();
  std::vector<ComplexMatrix> full;
  full.reserve(n);
  for (const auto& b : p.basis) {
    if (b.rows() != h || !b.is_square()) throw DimensionMismatch("probe does not act on H");
    if (!b.is_hermitian()) throw InvalidArgument("probe is not Hermitian");
    if (commutator(p.triple.grading, b).max_abs() > 1e-10)
      throw InvalidArgument("probe is not even");
    full.push_back(commutator(p.triple.dirac, b));
  }

  Compiled cp;
  const double m1 = mass_of(p, p.rho1), m2 = mass_of(p, p.rho2);
  for (const auto& b : p.basis)
    cp.g.push_back(functional_on(p, p.rho1, b, m1) - functional_on(p, p.rho2, b, m2));
  if (norm2(cp.g) <= 1e-14) throw DegenerateProblem("the state difference vanishes on the probes");

  ComplexMatrix s(h, h);
  for (const auto& c : full) s += matmul(c, c.adjoint()) + adjoint_matmul(c, c);
  const EigenDecomposition es = hermitian_eig(s);
  if (!(es.values.front() > 0.0)) return cp;  // r = 0: every probe commutes with D
  std::vector<ComplexMatrix> keep;
  for (std::size_t k = 0; k < h; ++k)
    if (es.values[k] > 1e-12 * es.values.front()) keep.push_back(es.vectors.col(k));
  const ComplexMatrix v = hstack(keep);
  cp.r = keep.size();
  for (const auto& c : full) cp.c.push_back(v.adjoint() * c * v);
  return cp;
}

ComplexMatrix combine(const Compiled& cp, const std::vector<double>& x) {
  ComplexMatrix m(cp.r, cp.r);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0.0) continue;
    const cplx* src = cp.c[k].data();
    cplx* dst = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) dst[i] += x[k] * src[i];
  }
  return m;
}

double exact_ratio(const Compiled& cp, const std::vector<double>& x) {
  const double gx = dot(cp.g, x);
  const double nm = operator_norm(combine(cp, x));
  if (nm == 0.0) return 0.0;
  return gx / nm;
}

// log ||M(x)||_{2p} - log(g.x), the Schatten norm smoothing the operator norm
double surrogate(const Compiled& cp, int p, const std::vector<double>& x,
                 std::vector<double>* grad) {
  const double gx = dot(cp.g, x);
  if (!(gx > 0.0)) return std::numeric_limits<double>::infinity();
  ComplexMatrix m = combine(cp, x);
  const double s = m.frobenius_norm();
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  m *= 1.0 / s;
  const ComplexMatrix hm = adjoint_matmul(m, m);
  ComplexMatrix hp1 = ComplexMatrix::identity(cp.r);  // H^{p-1}
  if (p > 1) {
    ComplexMatrix cur = hm;
    hp1 = hm;
    for (int q = 2; q < p; q *= 2) {
      cur = cur * cur;
      hp1 = hp1 * cur;
    }
  }
  const ComplexMatrix a = matmul(hp1, m.adjoint());  // H^{p-1} M^dagger
  double tr = 0.0;
  for (std::size_t i = 0; i < cp.r; ++i)
    for (std::size_t k = 0; k < cp.r; ++k) tr += (hp1(i, k) * hm(k, i)).real();
  if (!(tr > 0.0)) return std::numeric_limits<double>::infinity();
  if (grad) {
    grad->assign(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      double t = 0.0;
      const auto& c = cp.c[k];
      for (std::size_t i = 0; i < cp.r; ++i)
        for (std::size_t j = 0; j < cp.r; ++j) t += (a(i, j) * c(j, i)).real();
      (*grad)[k] = t / (s * tr) - cp.g[k] / gx;
    }
  }
  return std::log(s) + std::log(tr) / (2.0 * p) - std::log(gx);
}

// plain L-BFGS with Armijo backtracking
void lbfgs(const Compiled& cp, int p, std::vector<double>& x, int max_iters) {
  const std::size_t mem = 8;
  std::deque<std::vector<double>> ss, ys;
  std::vector<double> g, gn;
  double f = surrogate(cp, p, x, &g);
  if (!std::isfinite(f)) return;
  int flat = 0;
  for (int it = 0; it < max_iters; ++it) {
    const double gnorm = norm2(g), xnorm = norm2(x);
    if (gnorm * xnorm < 1e-12) break;

    std::vector<double> d = g;
    std::vector<double> alpha(ss.size());
    for (std::size_t i = ss.size(); i-- > 0;) {
      alpha[i] = dot(ss[i], d) / dot(ys[i], ss[i]);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= alpha[i] * ys[i][k];
    }
    double scale = ss.empty() ? 0.01 * xnorm / gnorm
                              : dot(ss.back(), ys.back()) / dot(ys.back(), ys.back());
    for (auto& v : d) v *= scale;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double beta = dot(ys[i], d) / dot(ys[i], ss[i]);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] += (alpha[i] - beta) * ss[i][k];
    }
    for (auto& v : d) v = -v;
    double slope = dot(d, g);
    if (!(slope < 0.0)) {
      ss.clear(), ys.clear();
      d = g;
      for (auto& v : d) v *= -0.01 * xnorm / gnorm;
      slope = dot(d, g);
    }

    double t = 1.0, fn = 0.0;
    std::vector<double> xn(x.size());
    bool ok = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t k = 0; k < x.size(); ++k) xn[k] = x[k] + t * d[k];
      fn = surrogate(cp, p, xn, &gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) break;

    std::vector<double> sv(x.size()), yv(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) sv[k] = xn[k] - x[k], yv[k] = gn[k] - g[k];
    if (dot(sv, yv) > 1e-16 * norm2(sv) * norm2(yv)) {
      ss.push_back(std::move(sv));
      ys.push_back(std::move(yv));
      if (ss.size() > mem) ss.pop_front(), ys.pop_front();
    }
    flat = (f - fn < 1e-14 * std::max(1.0, std::abs(f))) ? flat + 1 : 0;
    x = xn;
    g = gn;
    f = fn;
    if (flat >= 3) break;
  }
}

void normalise(const Compiled& cp, std::vector<double>& x) {
  const double nm = operator_norm(combine(cp, x));
  if (nm > 0.0)
    for (auto& v : x) v /= nm;
}

struct Ascent {
  std::vector<double> x;
  double ratio = -std::numeric_limits<double>::infinity();
};

Ascent ascend(const Compiled& cp, std::vector<double> x, int max_iters) {
  if (dot(cp.g, x) < 0.0)
    for (auto& v : x) v = -v;
  if (std::abs(dot(cp.g, x)) <= 1e-12 * norm2(cp.g) * norm2(x))
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += cp.g[k];
  normalise(cp, x);
  Ascent best{x, exact_ratio(cp, x)};
  for (int p = 1; p <= 256; p *= 2) {
    lbfgs(cp, p, x, max_iters);
    normalise(cp, x);
    const double r = exact_ratio(cp, x);
    if (r > best.ratio) best = {x, r};
  }
  return best;
}

// coordinate pattern search on the exact ratio
Ascent polish(const Compiled& cp, Ascent a, int budget) {
  double step = 0.05 * std::max(1e-300, *std::max_element(a.x.begin(), a.x.end(), [](double u, double v) {
    return std::abs(u) < std::abs(v);
  }));
  step = std::abs(step);
  const double floor = step * 1e-6;
  int evals = 0;
  while (step > floor && evals < budget) {
    bool improved = false;
    for (std::size_t k = 0; k < a.x.size() && evals < budget; ++k)
      for (double sg : {1.0, -1.0}) {
        std::vector<double> y = a.x;
        y[k] += sg * step;
        const double r = exact_ratio(cp, y);
        ++evals;
        if (r > a.ratio) {
          a.x = y, a.ratio = r, improved = true;
          break;
        }
      }
    if (!improved) step *= 0.5;
  }
  normalise(cp, a.x);
  return a;
}

bool top_degenerate(const Compiled& cp, const std::vector<double>& x) {
  const ComplexMatrix m = combine(cp, x);
  const auto ev = hermitian_eigvals(adjoint_matmul(m, m));
  return ev.size() > 1 && ev[0] - ev[1] < 1e-3 * ev[0];
}

std::vector<double> start_vector(const Compiled& cp, std::uint64_t seed, int start) {
  if (start == 0) return cp.g;
  std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(start));
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> x(cp.g.size());
  for (auto& v : x) v = nd(rng);
  return x;
}

}  // namespace

double ascend_from(const BallProblem& p, std::vector<double> x0) {
  const Compiled cp = compile(p);
  if (cp.r == 0) throw DegenerateProblem("every probe commutes with D");
  if (x0.size() != cp.g.size()) throw DimensionMismatch("start vector has the wrong length");
  return ascend(cp, std::move(x0), p.max_iters).ratio;
}

DistanceReport supremum_lower_bound(const BallProblem& p) {
  if (p.starts < 1) throw InvalidArgument("need at least one start");
  const Compiled cp = compile(p);
  const std::size_t n = cp.g.size();

  auto unbounded = [] {
    DistanceReport r;
    r.value = infinite_distance;
    r.method = Method::oracle;
    r.warnings.push_back("probe space contains a direction with vanishing commutator");
    return r;
  };
  if (cp.r == 0) return unbounded();

  // a direction with zero commutator but nonzero functional: unbounded
  ComplexMatrix gram(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      double v = 0.0;
      for (std::size_t i = 0; i < cp.c[k].size(); ++i)
        v += (std::conj(cp.c[k].data()[i]) * cp.c[l].data()[i]).real();
      gram(k, l) = v;
    }
  const EigenDecomposition eg = hermitian_eig(gram);
  for (std::size_t k = 0; k < n; ++k) {
    if (eg.values[k] > 1e-12 * eg.values.front()) continue;
    double gv = 0.0;
    for (std::size_t i = 0; i < n; ++i) gv += cp.g[i] * eg.vectors(i, k).real();
    if (std::abs(gv) > 1e-9 * norm2(cp.g)) return unbounded();
  }

  std::vector<Ascent> runs(p.starts);
  std::vector<std::exception_ptr> errs(p.starts);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < p.starts; ++s) {
    try {
      runs[s] = ascend(cp, start_vector(cp, p.seed, s), p.max_iters);
    } catch (...) {
      errs[s] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s].ratio > runs[best].ratio) best = s;
  Ascent a = runs[best];

  DistanceReport r;
  r.method = Method::oracle;
  if (top_degenerate(cp, a.x)) {
    a = polish(cp, a, 40 * static_cast<int>(n));
    r.warnings.push_back("near-degenerate top singular value: pattern search applied");
  }

  ComplexMatrix x(p.triple.hilbert_dim(), p.triple.hilbert_dim());
  for (std::size_t k = 0; k < n; ++k) x += cplx(a.x[k]) * p.basis[k];
  r.value = a.ratio;
  r.optimal_operator = x;
  r.ball_norm = ball_norm_of(p.triple, x);
  return r;
}

bool verify_saturation(const SpectralTriple& t, const ComplexMatrix& x, double expected_norm) {
  return std::abs(ball_norm_of(t, x) - expected_norm) <= 1e-8;
}

bool verify_saturation(const SpectralTriple& t, const AlgebraElement& a, double expected_norm) {
  return verify_saturation(t, t.represent(a), expected_norm);
}

std::vector<ComplexMatrix> hermitian_level_basis(std::size_t dim, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= dim) throw InvalidArgument("level out of range");
  std::vector<ComplexMatrix> out;
  for (int i = 0; i <= k; ++i) out.push_back(unit_e(i, i, dim));
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      out.push_back(unit_e(i, j, dim) + unit_e(j, i, dim));
      out.push_back(cplx(0, 1) * (unit_e(i, j, dim) - unit_e(j, i, dim)));
    }
  return out;
}

BallProblem moyal_probe_problem(const MoyalTriple& t, const StateFunctional& rho1,
                                const StateFunctional& rho2, int k) {
  const ComplexMatrix proj = moyal_projector(t.space, k);
  BallProblem p{t.triple, rho1, rho2, {}, proj};
  for (const auto& h : hermitian_level_basis(t.space.dim(), k))
    p.basis.push_back(t.triple.represent(AlgebraElement::moyal(h).projected(proj)));
  return p;
}

BallProblem doubled_probe_problem(const DoubledTriple& t, const StateFunctional& rho1,
                                  const StateFunctional& rho2, int k) {
  const ComplexMatrix proj = doubled_projector(t.space, k);
  BallProblem p{t.triple, rho1, rho2, {}, proj};
  for (const auto& h : hermitian_level_basis(t.space.dim(), k))
    for (int i = 0; i < 2; ++i)
      p.basis.push_back(t.triple.represent(
          AlgebraElement::product(h, i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0).projected(proj)));
  return p;
}

BallProblem twopoint_probe_problem(const TwoPointTriple& t) {
  return BallProblem{t.triple, sheet_state(1), sheet_state(2),
                     {ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})},
                     std::nullopt};
}

}  // namespace specdist
