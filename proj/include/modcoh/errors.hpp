#pragma once

#include <stdexcept>
#include <string>

namespace modcoh {

// Base class for everything thrown on purpose by this library.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input (bad expression, bad pair spec, unknown variable).
// `column` is 1-based within the offending line, or 0 when unknown.
struct input_error : error {
  int line = 0;
  int column = 0;
  input_error(const std::string& what, int line_ = 0, int column_ = 0)
      : error(what), line(line_), column(column_) {}
};

// Two operands live in different rings.
struct ring_mismatch_error : error {
  using error::error;
};

// A pullback or blowup datum violates its admissibility precondition.
struct not_admissible_error : error {
  using error::error;
};

// An operation requires a coefficient ring it does not support.
struct unsupported_ring_error : error {
  using error::error;
};

// An internal cross-check failed: two routes that must agree did not.
// This is never the caller's fault.
struct defect_error : error {
  using error::error;
};

}  // namespace modcoh
