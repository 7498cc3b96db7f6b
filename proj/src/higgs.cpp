#include "specdist/higgs.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "specdist/errors.hpp"
#include "specdist/twopoint.hpp"

namespace specdist {

namespace {

void check_config(const DoubledTriple& t, const HiggsConfig& cfg) {
  if (cfg.c.rows() != t.space.dim() || !cfg.c.is_square())
    throw DimensionMismatch("c must be (n_max+1) x (n_max+1)");
  if (!cfg.c.is_hermitian()) throw InvalidArgument("c must be Hermitian");
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ComplexMatrix internal_one_form(const HiggsConfig& cfg, cplx lambda) {
  return {{0.0, cfg.alpha1 * lambda * (cfg.beta2 - cfg.beta1)},
          {cfg.alpha2 * std::conj(lambda) * (cfg.beta1 - cfg.beta2), 0.0}};
}

ComplexMatrix build_one_form(const DoubledTriple& t, const HiggsConfig& cfg) {
  check_config(t, cfg);
  return kron(kron(pauli_z(), cfg.c), internal_one_form(cfg, t.lambda));
}

FluctuatedTriple fluctuate(const DoubledTriple& t, const HiggsConfig& cfg) {
  ComplexMatrix a = build_one_form(t, cfg);
  ComplexMatrix d = doubled_dirac(t.space, t.lambda) + a;
  if (!d.is_hermitian(1e-10))
    throw NonHermitianFluctuation(
        "D + A is not Hermitian: need conj(alpha1 (beta2 - beta1)) = alpha2 (beta1 - beta2)");
  return {t, cfg, std::move(a), std::move(d)};
}

DoubledTriple fluctuated_view(const FluctuatedTriple& ft) {
  DoubledTriple v = ft.base;
  SpectralTriple unrotated = ft.base.triple;
  unrotated.dirac = ft.dirac_A;
  v.triple = gauge_rotate(unrotated, std::arg(ft.base.lambda));
  return v;
}

double higgs_g(const FluctuatedTriple& ft, cplx z) {
  const ComplexMatrix v = translated_basis(ft.base.space, z, 0);
  return inner(v, ft.config.c * v).real();
}

cplx effective_lambda(const FluctuatedTriple& ft, double g) {
  const auto& c = ft.config;
  return ft.base.lambda * (1.0 + c.alpha1 * (c.beta2 - c.beta1) * g);
}

DistanceReport fluctuated_transverse_distance(const FluctuatedTriple& ft, cplx z) {
  const auto& c = ft.config;
  const double g = higgs_g(ft, z);
  const cplx lhs = std::conj(g * c.alpha1 * (c.beta2 - c.beta1));
  const cplx rhs = g * c.alpha2 * (c.beta1 - c.beta2);
  if (std::abs(lhs - rhs) > 1e-10)
    throw NonHermitianFluctuation("projected Dirac operator is not Hermitian at this z");

  const RestrictedTransverse rt = restrict_transverse(ft.base, z, &ft.one_form);
  DistanceReport r = twopoint_distance(rt.twopoint);
  r.method = Method::restricted;
  r.optimal_element.reset();
  r.optimal_operator.reset();

  const cplx want = effective_lambda(ft, g);
  const double scale = std::max(1.0, std::abs(ft.base.lambda));
  if (std::abs(rt.twopoint.lambda - want) > 1e-9 * scale)
    r.warnings.push_back("restricted coupling " + describe(std::abs(rt.twopoint.lambda)) +
                         " differs from the closed form " + describe(std::abs(want)));
  if (std::abs(rt.twopoint.lambda) <= 1e-12 * scale && !r.is_infinite()) {
    r.value = infinite_distance;
    r.warnings.push_back("effective coupling vanishes");
  }
  r.cross_check = std::abs(want) == 0.0 ? infinite_distance : 1.0 / std::abs(want);
  return r;
}

std::vector<SweepPoint> higgs_field_sweep(const FluctuatedTriple& ft, const std::vector<cplx>& grid) {
  std::vector<SweepPoint> out(grid.size());
  std::vector<std::exception_ptr> errs(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    try {
      SweepPoint& p = out[k];
      p.z = grid[k];
      p.g = higgs_g(ft, p.z);
      const double m = std::abs(effective_lambda(ft, p.g));
      p.formula = m == 0.0 ? infinite_distance : 1.0 / m;
      p.certified = false;
      try {
        const DistanceReport r = fluctuated_transverse_distance(ft, p.z);
        p.restricted = r.value;
        p.certified = true;
        if (!r.warnings.empty()) p.warning = r.warnings.front();
      } catch (const ProjectorNotCommuting& e) {
        p.warning = e.what();
      } catch (const NonHermitianFluctuation& e) {
        p.warning = e.what();
      }
    } catch (...) {
      errs[k] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace specdist
