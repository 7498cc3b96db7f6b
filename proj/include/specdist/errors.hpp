#pragma once

#include <stdexcept>
#include <string>

namespace specdist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// bad user input: shapes, ranges, malformed config
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NumericalOverflow : public Error {
 public:
  using Error::Error;
};

class BallViolation : public Error {
 public:
  BallViolation(double norm, double tol);
  double norm() const { return norm_; }

 private:
  double norm_;
};

class ProjectorNotCommuting : public Error {
 public:
  ProjectorNotCommuting(double norm, double tol);
  double norm() const { return norm_; }

 private:
  double norm_;
};

class DegenerateProblem : public Error {
 public:
  using Error::Error;
};

class NonHermitianFluctuation : public Error {
 public:
  using Error::Error;
};

// a closed-form postcondition failed numerically
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace specdist
