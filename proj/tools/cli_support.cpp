#include "cli_support.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "specdist/errors.hpp"

namespace specdist::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  const char* b = s.data();
  if (*b == '+') ++b;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(b, s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw InvalidArgument("cannot read a complex number from '" + whole + "'");
  return v;
}

cplx read_pair(const nlohmann::json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument(what + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidArgument("empty complex number");
  const bool imag = s.back() == 'i' || s.back() == 'j';
  if (!imag) return {parse_real(s, text), 0.0};
  s.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return {0.0, parse_real(s, text)};
  return {parse_real(s.substr(0, cut), text), parse_real(s.substr(cut), text)};
}

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
  return format_real(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
         format_real(std::abs(z.imag())) + "i";
}

HiggsConfig parse_higgs_config(const nlohmann::json& doc, const FockSpace& space) {
  if (!doc.is_object()) throw InvalidArgument("Higgs config must be a JSON object");
  for (const char* key : {"c_matrix", "alpha1", "alpha2", "beta1", "beta2"})
    if (!doc.contains(key)) throw InvalidArgument(std::string("Higgs config lacks '") + key + "'");
  const auto& rows = doc["c_matrix"];
  if (!rows.is_array() || rows.empty()) throw InvalidArgument("c_matrix must be a non-empty array");
  const std::size_t k = rows.size();
  if (k > space.dim())
    throw InvalidArgument("c_matrix is " + std::to_string(k) + " x " + std::to_string(k) +
                          " but the Fock space has dimension " + std::to_string(space.dim()));
  ComplexMatrix c(space.dim(), space.dim());
  for (std::size_t i = 0; i < k; ++i) {
    if (!rows[i].is_array() || rows[i].size() != k) throw InvalidArgument("c_matrix must be square");
    for (std::size_t j = 0; j < k; ++j) c(i, j) = read_pair(rows[i][j], "c_matrix entry");
  }
  return {c, read_pair(doc["alpha1"], "alpha1"), read_pair(doc["alpha2"], "alpha2"),
          read_pair(doc["beta1"], "beta1"), read_pair(doc["beta2"], "beta2")};
}

void put_number(nlohmann::ordered_json& j, const std::string& key, double v) {
  if (std::isfinite(v)) {
    j[key] = v;
  } else {
    j[key] = nullptr;
    j[key == "value" ? "infinite" : key + "_infinite"] = true;
  }
}

nlohmann::ordered_json report_json(const DistanceReport& r) {
  nlohmann::ordered_json j;
  put_number(j, "value", r.value);
  put_number(j, "ball_norm", r.ball_norm);
  j["method"] = to_string(r.method);
  j["warnings"] = r.warnings;
  if (r.cross_check) put_number(j, "cross_check", *r.cross_check);
  return j;
}

}  // namespace specdist::cli
