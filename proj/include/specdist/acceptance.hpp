#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specdist/higgs.hpp"

namespace specdist {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct AcceptanceOptions {
  // negative control: expected Moyal values use a perturbed theta
  bool inject_wrong_theta = false;
  std::uint64_t seed = 42;
};

inline constexpr int criterion_count = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});
std::string format_result(const CriterionResult& r);

// c = |0><0|, alpha1 = 1, alpha2 = -1, beta1 = 0, beta2 = 1/2.
// g(x) = exp(-x^2) on the real axis; the restriction is legal only at z = 0.
HiggsConfig example_higgs_config(const FockSpace& space);

}  // namespace specdist
