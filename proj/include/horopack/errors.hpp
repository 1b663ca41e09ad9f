#pragma once

#include <stdexcept>
#include <string>

namespace horopack {

/// Raised for malformed arguments (zero vectors, degenerate lines, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside the domain of a formula,
/// e.g. a distance requested between non-interior points.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for Schläfli symbols the requested operation does not cover.
class UnsupportedSymbol : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A horoball crosses a cell face that does not pass through its center.
class HoroballOverflow : public std::runtime_error {
 public:
  HoroballOverflow(int face, const std::string& what)
      : std::runtime_error(what), face_(face) {}
  int face() const noexcept { return face_; }

 private:
  int face_;
};

/// A packing configuration failed validation.
class InvalidConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace horopack
