#include <doctest.h>

#include <cmath>

#include "cli_support.hpp"
#include "specdist/errors.hpp"

using namespace specdist;

TEST_CASE("complex flags") {
  CHECK(cli::parse_complex("1+2i") == cplx(1, 2));
  CHECK(cli::parse_complex("1-2i") == cplx(1, -2));
  CHECK(cli::parse_complex("-0.5") == cplx(-0.5, 0));
  CHECK(cli::parse_complex("3i") == cplx(0, 3));
  CHECK(cli::parse_complex("-i") == cplx(0, -1));
  CHECK(cli::parse_complex("2.5e-1+1e+2j") == cplx(0.25, 100));
  CHECK(cli::parse_complex(" 1 + i ") == cplx(1, 1));
  CHECK_THROWS_AS(cli::parse_complex(""), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_complex("1+xi"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_complex("abc"), InvalidArgument);
  CHECK(cli::parse_complex(cli::format_complex({0.7, -1e-3})) == cplx(0.7, -1e-3));
}

TEST_CASE("Higgs config parsing") {
  const FockSpace sp(4, 1.0);
  const auto doc = nlohmann::json::parse(R"({"c_matrix": [[[1,0],[0,2]],[[0,-2],[3,0]]],
      "alpha1": [1,0], "alpha2": [-1,0], "beta1": [0,0], "beta2": [0.5,0]})");
  const HiggsConfig c = cli::parse_higgs_config(doc, sp);
  CHECK(c.c.rows() == 5);
  CHECK(c.c(0, 1) == cplx(0, 2));
  CHECK(c.c(1, 0) == cplx(0, -2));
  CHECK(c.c(4, 4) == cplx(0));
  CHECK(c.beta2 == cplx(0.5));
  CHECK_THROWS_AS(cli::parse_higgs_config(nlohmann::json::parse(R"({"c_matrix": [[[1,0]]]})"), sp),
                  InvalidArgument);
  auto big = doc;
  big["c_matrix"] = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) big["c_matrix"].push_back(std::vector<std::vector<double>>(6, {0, 0}));
  CHECK_THROWS_AS(cli::parse_higgs_config(big, sp), InvalidArgument);
}

TEST_CASE("infinite values serialise as null") {
  nlohmann::ordered_json j;
  cli::put_number(j, "value", INFINITY);
  CHECK(j["value"].is_null());
  CHECK(j["infinite"] == true);
  DistanceReport r;
  r.value = 0.5;
  const auto rj = cli::report_json(r);
  std::vector<std::string> keys;
  for (auto& [k, v] : rj.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"value", "ball_norm", "method", "warnings"});
}
