#include "specdist/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "specdist/errors.hpp"
#include "specdist/moyal.hpp"
#include "specdist/optimizer.hpp"
#include "specdist/twopoint.hpp"

namespace specdist {

namespace {

constexpr double pi = std::numbers::pi;

// collects the worst deviation per check and the first failure message
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    ok_ = ok_ && ok;
  }
  void within(double err, double tol, const std::string& what) {
    worst_ = std::max(worst_, err / tol);
    std::ostringstream os;
    os.precision(3);
    os << what << " off by " << err << " (tol " << tol << ")";
    check(err <= tol, os.str());
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  bool ok() const { return ok_; }
  std::string summary() const {
    std::ostringstream os;
    os.precision(3);
    os << checks_ << " checks, worst/tol " << worst_;
    if (!notes_.empty()) os << "; " << notes_;
    if (!first_failure_.empty()) os << "; " << first_failure_;
    return os.str();
  }

 private:
  bool ok_ = true;
  int checks_ = 0;
  double worst_ = 0.0;
  std::string first_failure_;
  std::string notes_;
};

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

cplx random_disc(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2 * pi * u(rng));
}

const std::vector<cplx>& transverse_points() {
  static const std::vector<cplx> z{0.0, 0.5, {1.3, 0.4}, {-0.8, 0.9}, {0.3, -1.1}};
  return z;
}

void moyal_distance_check(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> th(0.5, 4.0);
  for (int c = 0; c < 20; ++c) {
    const double theta = th(rng);
    const cplx z = random_disc(rng, 1.5);
    const MoyalTriple m = build_moyal(FockSpace(40, theta));
    const double want = moyal_closed_form(opt.inject_wrong_theta ? theta * 1.01 : theta, z);
    for (int n = 2; n <= 8; ++n) {
      const DistanceReport r = moyal_distance(m, z, n);
      t.within(std::abs(r.value - want), 1e-8 * std::max(want, 1e-6), "Moyal value");
      t.within(std::abs(ball_norm(m.triple, *r.optimal_element) - 1.0), 1e-8, "Moyal ball norm");
    }
  }
}

void twopoint_check(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_real_distribution<double> mod(0.2, 5.0), ph(0.0, 2 * pi);
  for (int c = 0; c < 10; ++c) {
    const double r = mod(rng);
    const cplx lambda = std::polar(r, ph(rng));
    const double d = twopoint_distance(build_twopoint(lambda)).value;
    const double d0 = twopoint_distance(build_twopoint(r)).value;
    t.within(std::abs(d - 1.0 / r), 1e-12, "two-point value");
    t.within(std::abs(d - d0), 1e-12, "two-point phase dependence");
  }
}

void spectrum_check(Tally& t, const AcceptanceOptions&) {
  for (auto [theta, lambda] : {std::pair<double, cplx>{2.0, 1.0}, {0.7, std::polar(1.9, 2.2)}}) {
    const DoubledTriple d = build_doubled(FockSpace(40, theta), lambda);
    const auto rows = doubled_spectrum(d);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.residual);
    t.within(worst, 1e-10, "spectrum residual");
    t.check(rows.size() == static_cast<std::size_t>(4 * (d.space.n_max - 1) + 2), "row count");
    // multiplicities read off the computed eigenvalues
    std::map<std::pair<int, int>, int> count;
    for (const auto& r : rows) {
      const double mag = std::abs(lambda);
      const int m = static_cast<int>(std::lround((r.computed * r.computed / (mag * mag) - 1.0) / d.kappa));
      count[{m, r.computed > 0 ? 1 : -1}]++;
    }
    bool mult_ok = true;
    for (auto [key, c] : count) mult_ok = mult_ok && c == (key.first == 0 ? 1 : 2);
    t.check(mult_ok && count.size() == static_cast<std::size_t>(2 * d.space.n_max), "multiplicities");
  }
}

void eigenspinor_check(Tally& t, const AcceptanceOptions&) {
  const DoubledTriple d = build_doubled(FockSpace(12, 1.3), std::polar(1.7, 0.4));
  const int top = d.space.n_max - 1;
  const ComplexMatrix w = doubled_eigenbasis(d, top);  // residuals certified inside
  t.within(max_abs_diff(adjoint_matmul(w, w), ComplexMatrix::identity(w.cols())), 1e-12,
           "orthonormality");
  for (int n = 0; n <= top; ++n) {
    const ComplexMatrix ww = doubled_eigenbasis(d, n);
    t.within(max_abs_diff(ww * ww.adjoint(), doubled_projector(d.space, n)), 1e-12,
             "projector P_" + std::to_string(n));
  }
  double worst = 0.0;
  for (const auto& e : doubled_eigenspinors(d, top))
    worst = std::max(worst, vector_norm(d.triple.dirac * e.vec - cplx(e.eigenvalue) * e.vec));
  t.within(worst, 1e-10, "eigen-residual");
}

void ml_check(Tally& t, const AcceptanceOptions&) {
  const DoubledTriple d = build_doubled(FockSpace(8, 2.0), 1.0);
  const double x = 1.0;
  const ComplexMatrix ml = matrix_Ml(d, x);
  t.within(max_abs_diff(ml, ml_closed_form(d.kappa, 1.0, x)), 1e-10, "M_l table");
  const double top = hermitian_eigvals(adjoint_matmul(ml, ml)).front();
  t.within(std::abs(top - x * x * d.kappa), 1e-10, "top eigenvalue of M_l^dagger M_l");
}

void longitudinal_check(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 6);
  std::uniform_real_distribution<double> th(0.5, 4.0), mod(0.3, 3.0), ph(0.0, 2 * pi);
  std::uniform_int_distribution<int> order(2, 8);
  for (int c = 0; c < 10; ++c) {
    const double theta = th(rng);
    const cplx lambda = std::polar(mod(rng), ph(rng));
    const cplx z = random_disc(rng, 1.5);
    const int n = order(rng);
    const DoubledTriple d = build_doubled(FockSpace(40, theta), lambda);
    const DistanceReport r = longitudinal_distance(d, z, n);
    const double want = longitudinal_closed_form(theta, z);
    t.within(std::abs(r.value - want), 1e-8 * std::max(want, 1e-6), "longitudinal value");
    const double x = longitudinal_scale(d.space);
    const double got = rejected_branch_norm(d, x);
    const double closed = rejected_branch_closed_form(d.kappa, d.coupling(), x);
    t.within(rel(got, closed), 1e-10, "rejected-branch norm");
    const double estimate = x * 2 * std::abs(z) / got;  // element scaled into the ball
    t.check(estimate < r.value || std::abs(z) == 0.0, "rejected branch is not smaller");
  }
}

void transverse_check(Tally& t, const AcceptanceOptions&) {
  const cplx lambda = std::polar(1.6, 0.7);
  const DoubledTriple d = build_doubled(FockSpace(40, 1.2), lambda);
  const double want = 1.0 / std::abs(lambda);
  for (int n = 1; n <= 6; ++n) {
    const double y = want;
    const ComplexMatrix mt = matrix_Mt(d, n, y);
    t.within(max_abs_diff(adjoint_matmul(mt, mt), cplx(std::norm(lambda) * y * y) *
                                                      ComplexMatrix::identity(mt.rows())),
             1e-12, "M_t^dagger M_t");
    for (cplx z : transverse_points()) {
      const DistanceReport r = transverse_distance(d, z, n);
      t.within(std::abs(r.value - want), 1e-9, "transverse value");
      t.within(std::abs(*r.cross_check - want), 1e-9, "restricted transverse value");
    }
  }
}

void hypotenuse_check(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 8);
  std::uniform_real_distribution<double> th(0.5, 4.0), mod(0.3, 3.0), ph(0.0, 2 * pi);
  std::uniform_int_distribution<int> order(2, 8);
  for (int c = 0; c < 25; ++c) {
    const double theta = th(rng);
    const cplx lambda = std::polar(mod(rng), ph(rng));
    const cplx z = random_disc(rng, 1.5);
    const int n = order(rng);
    const DoubledTriple d = build_doubled(FockSpace(40, theta), lambda);
    const double dh = hypotenuse_distance(d, z, n).value;
    const double dl = longitudinal_distance(d, z, n).value;
    const double dt = transverse_distance(d, z, n).value;
    t.within(rel(dh, hypotenuse_closed_form(theta, lambda, z)), 1e-8, "hypotenuse value");
    t.within(std::abs(dh * dh - dl * dl - dt * dt), 1e-10 * dh * dh, "Pythagoras residual");
  }
}

void oracle_check(Tally& t, const AcceptanceOptions& opt) {
  const double theta = 1.0;
  const cplx z = 0.5;
  const FockSpace sp(8, theta);
  auto agree = [&](BallProblem p, double want, const std::string& what) {
    p.seed = opt.seed;
    p.starts = 16;
    const double got = supremum_lower_bound(p).value;
    std::ostringstream os;
    os.precision(6);
    os << what.substr(0, what.find(' ')) << " " << got / want;
    t.note(os.str());
    t.check(got >= 0.99 * want, what + " reaches " + std::to_string(got / want) + " of analytic");
    t.check(got <= want * (1 + 1e-6), what + " exceeds analytic");
  };
  const MoyalTriple m = build_moyal(sp);
  agree(moyal_probe_problem(m, coherent_state(sp, z), coherent_state(sp, 0.0), 4),
        moyal_closed_form(theta, z), "Moyal oracle");
  const cplx l2 = std::polar(2.0, 0.6);
  agree(twopoint_probe_problem(build_twopoint(l2)), 0.5, "two-point oracle");
  const DoubledTriple d = build_doubled(sp, 2.0);
  agree(doubled_probe_problem(d, composite_state(sp, z, 1), composite_state(sp, 0.0, 1), 4),
        longitudinal_closed_form(theta, z), "longitudinal oracle");
  agree(doubled_probe_problem(d, composite_state(sp, z, 1), composite_state(sp, z, 2), 4),
        transverse_closed_form(2.0), "transverse oracle");
  agree(doubled_probe_problem(d, composite_state(sp, z, 1), composite_state(sp, 0.0, 2), 4),
        hypotenuse_closed_form(theta, 2.0, z), "hypotenuse oracle");
}

void higgs_check(Tally& t, const AcceptanceOptions&) {
  const FockSpace sp(40, 1.2);
  const cplx lambda = std::polar(1.6, 0.7);
  const DoubledTriple d = build_doubled(sp, lambda);
  const std::size_t dim = sp.dim();

  // A = 0 through beta1 = beta2
  const HiggsConfig zero{ComplexMatrix::identity(dim), 1.0, 1.0, 0.3, 0.3};
  const FluctuatedTriple f0 = fluctuate(d, zero);
  t.check(max_abs_diff(f0.dirac_A, doubled_dirac(sp, lambda)) == 0.0, "D_A differs from D_T");
  for (int n = 1; n <= 6; ++n)
    for (cplx z : transverse_points()) {
      const double base = *transverse_distance(d, z, n).cross_check;
      const double fl = fluctuated_transverse_distance(f0, z).value;
      t.check(fl == base, "A = 0 transverse not bit-identical");
    }

  // constant g: every grid point is legal
  const HiggsConfig flat{cplx(0.8) * ComplexMatrix::identity(dim), 1.0, -1.0, 0.0, 0.5};
  const FluctuatedTriple ff = fluctuate(d, flat);
  std::vector<cplx> grid;
  for (double re : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double im : {-0.5, 0.0, 0.5}) grid.push_back({re, im});
  for (const auto& p : higgs_field_sweep(ff, grid)) {
    t.check(p.certified, "constant-g point not certified");
    const double want = 1.0 / std::abs(lambda * (1.0 + 0.5 * p.g));
    if (p.restricted) t.within(std::abs(*p.restricted - want), 1e-9, "fluctuated distance");
  }

  // documented example: restriction legal only at the origin
  const FluctuatedTriple fe = fluctuate(d, example_higgs_config(sp));
  std::vector<cplx> axis;
  for (int k = 0; k <= 6; ++k) axis.push_back(0.25 * k);
  const auto rows = higgs_field_sweep(fe, axis);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double g = std::exp(-std::norm(axis[k]));
    t.within(std::abs(rows[k].g - g), 1e-12, "g on the real axis");
    t.within(std::abs(rows[k].formula - 1.0 / std::abs(lambda * (1.0 + 0.5 * g))), 1e-9,
             "closed-form profile");
    if (k > 0) t.check(rows[k].formula > rows[k - 1].formula, "profile not monotone");
    t.check(rows[k].certified == (k == 0), "certification flag");
    if (rows[k].restricted)
      t.within(std::abs(*rows[k].restricted - rows[k].formula), 1e-9, "restricted at origin");
  }

  // negative control: c mixes |0~> and |1~>
  const cplx z0(0.4, -0.3);
  const ComplexMatrix v0 = translated_basis(sp, z0, 0), v1 = translated_basis(sp, z0, 1);
  const HiggsConfig bad{outer(v0, v1) + outer(v1, v0), 1.0, -1.0, 0.0, 0.5};
  bool caught = false;
  try {
    fluctuated_transverse_distance(fluctuate(d, bad), z0);
  } catch (const ProjectorNotCommuting&) {
    caught = true;
  }
  t.check(caught, "failing restriction not detected");
}

void translation_check(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 11);
  const double theta = 1.5;
  const FockSpace sp(40, theta);
  const MoyalTriple m = build_moyal(sp);
  const ComplexMatrix vac = ComplexMatrix::basis_vector(sp.dim(), 0);
  auto displaced = [&](cplx z) {
    const ComplexMatrix v = displacement(sp, z) * vac;
    return StateFunctional{outer(v, v), "displaced", {}};
  };
  for (int c = 0; c < 10; ++c) {
    const cplx z1 = random_disc(rng, 1.0), z2 = random_disc(rng, 1.0);
    const DistanceReport r = moyal_distance_between(m, displaced(z1), displaced(z2), z1 - z2, 4);
    t.within(std::abs(r.value - moyal_closed_form(theta, z1 - z2)), 1e-6, "translated distance");
  }
}

struct Entry {
  const char* name;
  void (*run)(Tally&, const AcceptanceOptions&);
};

const Entry entries[criterion_count] = {
    {"Moyal distance sqrt(2 theta)|z|, ball norm 1", moyal_distance_check},
    {"two-point distance 1/|Lambda|, phase independent", twopoint_check},
    {"doubled-plane spectrum and multiplicities", spectrum_check},
    {"eigen-spinor residuals, orthonormality, projector split", eigenspinor_check},
    {"M_l table and its top eigenvalue", ml_check},
    {"longitudinal distance and rejected branch", longitudinal_check},
    {"transverse distance, N and z independent", transverse_check},
    {"hypotenuse distance and Pythagoras", hypotenuse_check},
    {"oracle lower bounds within 1%", oracle_check},
    {"Higgs fluctuation", higgs_check},
    {"translation invariance", translation_check},
};

}  // namespace

HiggsConfig example_higgs_config(const FockSpace& space) {
  return {unit_e(0, 0, space.dim()), 1.0, -1.0, 0.0, 0.5};
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > criterion_count) throw InvalidArgument("no such criterion");
  const Entry& e = entries[id - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::string err;
  try {
    e.run(t, opt);
  } catch (const std::exception& ex) {
    err = ex.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!err.empty()) return {id, e.name, false, "threw: " + err, secs};
  return {id, e.name, t.ok(), t.summary(), secs};
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  ("
     << r.seconds << " s; " << r.detail << ")";
  return os.str();
}

}  // namespace specdist
