#pragma once

#include <stdexcept>
#include <string>

namespace torsiondeg {

// Error taxonomy. ArgumentError, StructuralError, DataError and ParseError all
// mean the input is unusable; ResourceError means a configured enumeration cap
// was hit and the caller may retry with a larger one.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller-supplied value.
struct ArgumentError : Error {
  using Error::Error;
};

// Objects from incompatible contexts were combined (different prime or level).
struct StructuralError : Error {
  using Error::Error;
};

// Enumeration would exceed the configured element cap.
struct ResourceError : Error {
  using Error::Error;
};

// Catalog file could not be parsed; carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& what, long line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  long line;
};

// Catalog content is well-formed but semantically invalid.
struct DataError : Error {
  using Error::Error;
};

}  // namespace torsiondeg
