#pragma once

#include <stdexcept>
#include <string>

namespace tva {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two elements over different ring specs (or Lie algebras) were combined.
struct SpecMismatchError : Error {
  using Error::Error;
};

/// A ring hom candidate violates the unit-image (or t-image) invariant.
struct InvalidHomError : Error {
  using Error::Error;
};

/// An operation that needs the distinguished loop variable t was called on a
/// ring spec without one.
struct MissingLoopVariableError : Error {
  using Error::Error;
};

/// Sugawara construction at level K = -h_vee.
struct CriticalLevelError : Error {
  using Error::Error;
};

/// Operation not available in the requested configuration (e.g. character
/// over a nontrivial fiber algebra).
struct UnsupportedError : Error {
  using Error::Error;
};

/// Source-text error with position information.
struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

}  // namespace tva
