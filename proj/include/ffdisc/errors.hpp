#pragma once

#include <stdexcept>
#include <string>

namespace ffdisc {

// Invalid argument or violated precondition (bad field size, zero divisor,
// mismatched contexts, malformed input).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation would need coefficients beyond the known window of a
// truncated series, or a value exceeds the exact integer range.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search finished without a solution.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffdisc
