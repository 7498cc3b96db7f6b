// specdist: spectral distances on truncated Moyal, two-point and doubled triples.
#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "cli_support.hpp"
#include "specdist/acceptance.hpp"
#include "specdist/errors.hpp"
#include "specdist/higgs.hpp"
#include "specdist/moyal.hpp"
#include "specdist/optimizer.hpp"
#include "specdist/twopoint.hpp"

using namespace specdist;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_compute = 1;
constexpr int exit_usage = 2;

// thrown for configuration problems found after CLI11 has parsed the flags
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double theta = 1.0;
  std::string lambda_text = "1";
  std::optional<double> lambda_phase;
  std::string z_text = "0";
  int n_max = 40;
  int order = 4;
  std::string output_path;  // empty: stdout
  std::string format = "csv";
  std::uint64_t seed = 42;

  cplx lambda() const {
    const cplx l = cli::parse_complex(lambda_text);
    return lambda_phase ? std::polar(std::abs(l), *lambda_phase) : l;
  }
  cplx z() const { return cli::parse_complex(z_text); }
  FockSpace space() const { return FockSpace(n_max, theta); }

  void validate() const {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw UsageError("--theta must be positive");
    if (n_max < 3) throw UsageError("--n-max must be at least 3");
    if (order < 1 || order > n_max - 2) throw UsageError("--N must satisfy 1 <= N <= n_max - 2");
    try {
      (void)lambda();
      (void)z();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }

  ordered_json echo() const {
    ordered_json j;
    j["theta"] = theta;
    j["lambda"] = cli::format_complex(lambda());
    if (lambda_phase) j["lambda_phase"] = *lambda_phase;
    j["z"] = cli::format_complex(z());
    j["n_max"] = n_max;
    j["N"] = order;
    j["seed"] = seed;
    return j;
  }
};

void add_common(CLI::App* app, RunConfig& cfg, bool with_output = true) {
  app->add_option("--theta", cfg.theta, "noncommutativity parameter (> 0)")->capture_default_str();
  app->add_option("--lambda", cfg.lambda_text, "two-point coupling, a+bi")->capture_default_str();
  app->add_option("--lambda-phase", cfg.lambda_phase, "replace the phase of lambda (radians)");
  app->add_option("--z", cfg.z_text, "coherent-state parameter, a+bi")->capture_default_str();
  app->add_option("--n-max", cfg.n_max, "Fock truncation")->capture_default_str();
  app->add_option("--N", cfg.order, "projector order, at most n_max - 2")->capture_default_str();
  app->add_option("--seed", cfg.seed, "optimizer seed")->capture_default_str();
  if (with_output) app->add_option("-o,--output", cfg.output_path, "output file (default stdout)");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw UsageError("cannot write " + cfg.output_path);
  out << text;
}

ordered_json with_metadata(const std::string& command, const RunConfig& cfg, ordered_json body) {
  ordered_json j;
  j["command"] = command;
  for (auto& [k, v] : body.items()) j[k] = v;
  j["n_max"] = cfg.n_max;
  j["N"] = cfg.order;
  j["inputs"] = cfg.echo();
  return j;
}

// value, ball_norm, method, warnings first, then n_max, N, inputs
ordered_json distance_json(const std::string& command, const std::string& kind,
                           const RunConfig& cfg, const DistanceReport& r) {
  ordered_json body;
  body["kind"] = kind;
  const ordered_json rep = cli::report_json(r);
  for (auto& [k, v] : rep.items()) body[k] = v;
  return with_metadata(command, cfg, body);
}

DistanceReport compute_distance(const std::string& kind, const RunConfig& cfg, cplx z2) {
  if (kind == "twopoint") return twopoint_distance(build_twopoint(cfg.lambda()));
  if (kind == "moyal") {
    const MoyalTriple m = build_moyal(cfg.space());
    return z2 == 0.0 ? moyal_distance(m, cfg.z(), cfg.order)
                     : moyal_pair_distance(m, cfg.z(), z2, cfg.order);
  }
  const DoubledTriple d = build_doubled(cfg.space(), cfg.lambda());
  if (kind == "longitudinal") return longitudinal_distance(d, cfg.z(), cfg.order);
  if (kind == "transverse") return transverse_distance(d, cfg.z(), cfg.order);
  return hypotenuse_distance(d, cfg.z(), cfg.order);
}

const std::vector<std::string> kinds{"moyal", "twopoint", "longitudinal", "transverse",
                                     "hypotenuse"};

std::vector<cplx> make_grid(double x0, double x1, int nx, double y0, double y1, int ny) {
  if (nx < 1 || ny < 1) throw UsageError("grid step counts must be positive");
  auto at = [](double a, double b, int n, int k) { return n == 1 ? a : a + (b - a) * k / (n - 1); };
  std::vector<cplx> g;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) g.push_back({at(x0, x1, nx, i), at(y0, y1, ny, j)});
  return g;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double v) { return std::isinf(v) ? "inf" : cli::format_real(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral distances on truncated Moyal, two-point and doubled triples"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* distance = app.add_subcommand("distance", "one distance as a JSON report");
  std::string kind;
  std::string z2_text = "0";
  distance->add_option("kind", kind, "moyal | twopoint | longitudinal | transverse | hypotenuse")
      ->required()
      ->check(CLI::IsMember(kinds));
  distance->add_option("--z2", z2_text, "second coherent state (moyal only)")->capture_default_str();
  add_common(distance, cfg);

  auto* pyth = app.add_subcommand("pythagoras", "d_h^2 = d_l^2 + d_t^2 at one point");
  add_common(pyth, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "doubled-plane Dirac spectrum vs closed form");
  add_common(spectrum, cfg);
  spectrum->add_option("--format", cfg.format, "csv | json")->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("higgs-sweep", "fluctuated transverse distance over a grid");
  add_common(sweep, cfg);
  std::string config_path;
  double x0 = -1.0, x1 = 1.0, y0 = 0.0, y1 = 0.0;
  int nx = 9, ny = 1;
  sweep->add_option("--config", config_path, "Higgs config JSON")->required();
  sweep->add_option("--re-min", x0)->capture_default_str();
  sweep->add_option("--re-max", x1)->capture_default_str();
  sweep->add_option("--re-steps", nx)->capture_default_str();
  sweep->add_option("--im-min", y0)->capture_default_str();
  sweep->add_option("--im-max", y1)->capture_default_str();
  sweep->add_option("--im-steps", ny)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  AcceptanceOptions vopt;
  int only = 0;
  verify->add_flag("--inject-wrong-theta", vopt.inject_wrong_theta,
                   "negative control: perturb the expected Moyal values");
  verify->add_option("--criterion", only, "run a single criterion")
      ->check(CLI::Range(1, criterion_count));
  verify->add_option("--seed", vopt.seed)->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "numerical lower bound on a distance");
  std::string okind;
  int probe_k = 4;
  int starts = 16;
  oracle->add_option("kind", okind, "moyal | twopoint | longitudinal | transverse | hypotenuse")
      ->required()
      ->check(CLI::IsMember(kinds));
  add_common(oracle, cfg);
  oracle->get_option("--n-max")->description("Fock truncation (default 8 here)");
  oracle->add_option("--K", probe_k, "probe level")->capture_default_str();
  oracle->add_option("--starts", starts, "ascent starts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*verify) {
      int failed = 0;
      for (int id = 1; id <= criterion_count; ++id) {
        if (only && id != only) continue;
        const auto r = run_criterion(id, vopt);
        std::cout << format_result(r) << std::endl;
        failed += !r.passed;
      }
      std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
                << std::endl;
      return failed ? exit_compute : exit_ok;
    }

    if (*oracle && oracle->count("--n-max") == 0) cfg.n_max = 8;
    cfg.validate();

    if (*distance) {
      cplx z2 = 0.0;
      try {
        z2 = cli::parse_complex(z2_text);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      if (z2 != 0.0 && kind != "moyal") throw UsageError("--z2 only applies to moyal");
      const DistanceReport r = compute_distance(kind, cfg, z2);
      ordered_json j = distance_json("distance", kind, cfg, r);
      if (z2 != 0.0) j["inputs"]["z2"] = cli::format_complex(z2);
      emit(cfg, j.dump(2) + "\n");
      return exit_ok;
    }

    if (*pyth) {
      const DoubledTriple d = build_doubled(cfg.space(), cfg.lambda());
      const auto l = longitudinal_distance(d, cfg.z(), cfg.order);
      const auto t = transverse_distance(d, cfg.z(), cfg.order);
      const auto h = hypotenuse_distance(d, cfg.z(), cfg.order);
      const double residual = std::abs(h.value * h.value - l.value * l.value - t.value * t.value);
      const double tolerance = 1e-10 * h.value * h.value;
      const bool pass = std::isfinite(residual) && residual <= tolerance;
      ordered_json body;
      cli::put_number(body, "value", h.value);
      cli::put_number(body, "ball_norm", h.ball_norm);
      body["method"] = to_string(h.method);
      std::vector<std::string> warnings;
      for (const auto* r : {&l, &t, &h}) warnings.insert(warnings.end(), r->warnings.begin(), r->warnings.end());
      body["warnings"] = warnings;
      cli::put_number(body, "longitudinal", l.value);
      cli::put_number(body, "transverse", t.value);
      cli::put_number(body, "hypotenuse", h.value);
      cli::put_number(body, "residual", residual);
      cli::put_number(body, "tolerance", tolerance);
      body["pass"] = pass;
      emit(cfg, with_metadata("pythagoras", cfg, body).dump(2) + "\n");
      return pass ? exit_ok : exit_compute;
    }

    if (*spectrum) {
      const DoubledTriple d = build_doubled(cfg.space(), cfg.lambda());
      const auto rows = doubled_spectrum(d);
      double worst = 0.0;
      for (const auto& r : rows) worst = std::max(worst, r.residual);
      if (cfg.format == "csv") {
        std::string out = "m,family,predicted,computed,residual\n";
        for (const auto& r : rows)
          out += std::to_string(r.m) + "," + to_string(r.family) + "," + num(r.predicted) + "," +
                 num(r.computed) + "," + num(r.residual) + "\n";
        emit(cfg, out);
      } else {
        ordered_json body;
        body["value"] = worst;
        body["ball_norm"] = nullptr;
        body["method"] = to_string(Method::analytic);
        body["warnings"] = ordered_json::array();
        body["kappa"] = d.kappa;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
          arr.push_back({{"m", r.m}, {"family", to_string(r.family)}, {"predicted", r.predicted},
                         {"computed", r.computed}, {"residual", r.residual}});
        body["rows"] = arr;
        emit(cfg, with_metadata("spectrum", cfg, body).dump(2) + "\n");
      }
      if (worst >= 1e-10) {
        std::cerr << "spectrum residual " << worst << " exceeds 1e-10\n";
        return exit_compute;
      }
      return exit_ok;
    }

    if (*sweep) {
      const FockSpace space = cfg.space();
      const HiggsConfig hc = [&] {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot read " + config_path);
        try {
          return cli::parse_higgs_config(nlohmann::json::parse(in), space);
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("malformed Higgs config: ") + e.what());
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("malformed Higgs config: ") + e.what());
        }
      }();
      const DoubledTriple d = build_doubled(space, cfg.lambda());
      FluctuatedTriple ft = [&] {
        try {
          return fluctuate(d, hc);
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("Higgs config rejected: ") + e.what());
        } catch (const NonHermitianFluctuation& e) {
          throw UsageError(std::string("Higgs config rejected: ") + e.what());
        }
      }();
      const auto points = higgs_field_sweep(ft, make_grid(x0, x1, nx, y0, y1, ny));
      std::string out = "re_z,im_z,distance,g,restricted,certified,warning\n";
      int flagged = 0;
      for (const auto& p : points) {
        flagged += !p.certified || !p.warning.empty();
        out += num(p.z.real()) + "," + num(p.z.imag()) + "," + num(p.formula) + "," + num(p.g) +
               "," + (p.restricted ? num(*p.restricted) : std::string()) + "," +
               (p.certified ? "1" : "0") + "," + csv_field(p.warning) + "\n";
      }
      emit(cfg, out);
      std::cerr << points.size() << " points, " << flagged << " flagged\n";
      return exit_ok;
    }

    if (*oracle) {
      const FockSpace space = cfg.space();
      const cplx z = cfg.z();
      BallProblem p = [&] {
        if (okind == "twopoint") return twopoint_probe_problem(build_twopoint(cfg.lambda()));
        if (okind == "moyal")
          return moyal_probe_problem(build_moyal(space), coherent_state(space, z),
                                     coherent_state(space, 0.0), probe_k);
        const DoubledTriple d = build_doubled(space, cfg.lambda());
        if (okind == "longitudinal")
          return doubled_probe_problem(d, composite_state(space, z, 1),
                                       composite_state(space, 0.0, 1), probe_k);
        if (okind == "transverse")
          return doubled_probe_problem(d, composite_state(space, z, 1),
                                       composite_state(space, z, 2), probe_k);
        return doubled_probe_problem(d, composite_state(space, z, 1),
                                     composite_state(space, 0.0, 2), probe_k);
      }();
      p.seed = cfg.seed;
      p.starts = starts;
      const DistanceReport r = supremum_lower_bound(p);
      const double analytic = okind == "twopoint"       ? transverse_closed_form(cfg.lambda())
                              : okind == "moyal"        ? moyal_closed_form(cfg.theta, z)
                              : okind == "longitudinal" ? longitudinal_closed_form(cfg.theta, z)
                              : okind == "transverse"   ? transverse_closed_form(cfg.lambda())
                                                        : hypotenuse_closed_form(cfg.theta, cfg.lambda(), z);
      ordered_json j = distance_json("oracle", okind, cfg, r);
      j["inputs"]["K"] = probe_k;
      j["inputs"]["starts"] = starts;
      cli::put_number(j, "analytic", analytic);
      if (std::isfinite(r.value) && analytic > 0 && std::isfinite(analytic))
        j["ratio"] = r.value / analytic;
      emit(cfg, j.dump(2) + "\n");
      return exit_ok;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_compute;
  }
  return exit_usage;
}
