#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmf {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is a 0-based byte offset into the source.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t offset, const std::string& name)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset) +
              " (allowed: x1, x2, x3, sin, cos, sinh, cosh, tanh, exp, log, sqrt)"),
        offset_(offset),
        name_(name) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// An operation left its mathematical domain (log of a non-positive number, etc.).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation produced NaN or infinity.
class NonFinite : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& coefficient, double value)
      : Error("metric not positive definite: " + coefficient + " = " + std::to_string(value) +
              " <= 0"),
        coefficient_(coefficient),
        value_(value) {}
  const std::string& coefficient() const noexcept { return coefficient_; }
  double value() const noexcept { return value_; }

 private:
  std::string coefficient_;
  double value_;
};

/// The vector does not induce a Q-basis.
class DegenerateVector : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

/// Ricci curvature requested along a direction of (near) zero length.
class NullDirection : public Error {
 public:
  using Error::Error;
};

/// Catenoid parameter outside the chart (u = 0).
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

/// Malformed manifest. `line` is 1-based; 0 when the problem is not tied to a line.
class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, const std::string& message)
      : Error(line ? "manifest line " + std::to_string(line) + ": " + message : "manifest: " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qmf
