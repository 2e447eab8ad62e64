#pragma once

#include <stdexcept>
#include <string>

namespace sinebeta {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SizeError : std::length_error {
  using std::length_error::length_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// two evaluations of the same quantity that should coincide did not
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sinebeta
