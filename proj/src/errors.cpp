#include "specdist/errors.hpp"

#include <cstdio>

namespace specdist {

namespace {
std::string fmt_norm(const char* what, double norm, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: norm %.6e exceeds %.1e", what, norm, tol);
  return buf;
}
}  // namespace

BallViolation::BallViolation(double norm, double tol)
    : Error(fmt_norm("element outside the unit ball", norm, tol)), norm_(norm) {}

ProjectorNotCommuting::ProjectorNotCommuting(double norm, double tol)
    : Error(fmt_norm("projector does not commute with the Dirac operator", norm, tol)),
      norm_(norm) {}

}  // namespace specdist
