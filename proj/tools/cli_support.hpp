#pragma once

#include <string>

#include <json.hpp>

#include "specdist/higgs.hpp"
#include "specdist/triple.hpp"

namespace specdist::cli {

// "a+bi", "a-bi", "a", "bi", "i", "-2.5e-1+3j"; throws InvalidArgument
cplx parse_complex(const std::string& text);
std::string format_real(double v);  // shortest round-trip
std::string format_complex(cplx z);

// {c_matrix: [[[re, im], ...], ...], alpha1: [re, im], ...}. A k x k c_matrix
// with k < n_max + 1 is embedded in the top-left corner. Throws InvalidArgument.
HiggsConfig parse_higgs_config(const nlohmann::json& doc, const FockSpace& space);

// value, ball_norm, method, warnings, cross_check; infinite values become null
// together with "infinite": true
void put_number(nlohmann::ordered_json& j, const std::string& key, double v);
nlohmann::ordered_json report_json(const DistanceReport& r);

}  // namespace specdist::cli
