#pragma once

#include <stdexcept>
#include <string>

namespace gatetrim {

// Error taxonomy shared by the library and the CLI.
//
// ParseError / ShapeError  -> malformed or mis-shaped input      (CLI exit 2)
// DomainError / ConfigError-> violated mathematical precondition (CLI exit 3)
// SingularSystemError      -> linear solver / optimizer failure  (CLI exit 4)

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double pivot_magnitude)
      : Error(what), pivot_magnitude_(pivot_magnitude) {}

  // Magnitude of the offending pivot, for diagnostics.
  double pivot_magnitude() const { return pivot_magnitude_; }

 private:
  double pivot_magnitude_ = 0.0;
};

}  // namespace gatetrim
