#pragma once

#include <stdexcept>
#include <string>

#include "matlog/types.hpp"

namespace matlog {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user/caller input: wrong sizes, invalid options, violated preconditions.
struct ConfigError : Error {
  using Error::Error;
};

struct DimensionMismatch : ConfigError {
  using ConfigError::ConfigError;
};

// Matrix singular to working tolerance; inversion refused.
struct SingularMatrix : Error {
  using Error::Error;
};

// QR iteration did not converge; carries the offending matrix.
struct SchurFailure : Error {
  ComplexMatrix offending;
  SchurFailure(const std::string& msg, ComplexMatrix m)
      : Error(msg), offending(std::move(m)) {}
};

// Spectrum touches the branch cut ]-inf, 0]; principal log undefined.
struct EigenvalueOnCut : Error {
  Complex eigenvalue;
  double distance;
  EigenvalueOnCut(const std::string& msg, Complex lam, double dist)
      : Error(msg), eigenvalue(lam), distance(dist) {}
};

struct OverflowBudget : Error {
  using Error::Error;
};

struct IllConditionedInterpolation : Error {
  using Error::Error;
};

// A boundary sample of |f| fell below the safety floor; the census is
// unreliable until the caller perturbs the rectangle.
struct BoundaryTooClose : Error {
  Rectangle suggested;
  double min_abs;
  BoundaryTooClose(const std::string& msg, Rectangle sugg, double m)
      : Error(msg), suggested(sugg), min_abs(m) {}
};

struct NoValidWindow : Error {
  using Error::Error;
};

// Newton root count disagrees with the winding census over the same band.
struct CensusMismatch : Error {
  long census_count;
  long newton_count;
  CensusMismatch(const std::string& msg, long census, long newton)
      : Error(msg), census_count(census), newton_count(newton) {}
};

struct InvalidCompanionPair : ConfigError {
  using ConfigError::ConfigError;
};

struct GenerationExhausted : Error {
  using Error::Error;
};

}  // namespace matlog
