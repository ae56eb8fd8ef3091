#pragma once

#include <stdexcept>
#include <string>

namespace nilpet {

struct AlgebraMismatch : std::invalid_argument {
  AlgebraMismatch() : std::invalid_argument("operands live in different Lie algebras") {}
};

struct UnsupportedSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StepBoundExceeded : std::domain_error {
  StepBoundExceeded(int step, int bound)
      : std::domain_error("algebra step " + std::to_string(step) +
                          " exceeds BCH truncation bound " + std::to_string(bound)) {}
};

struct ArityMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised for the constant-identity map where class/degree/weight are undefined.
struct ConstantMapError : std::domain_error {
  ConstantMapError() : std::domain_error("map is the constant identity; class undefined") {}
};

struct UnknownVariable : std::invalid_argument {
  explicit UnknownVariable(const std::string& name)
      : std::invalid_argument("unknown variable '" + name + "'") {}
};

struct IterationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplingExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nilpet
