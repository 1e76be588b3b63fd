#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlscheck {

enum class ErrorKind {
  PoleProximity,
  NegativeRadicand,
  RealityViolation,
  StencilOutOfDomain,
  DegenerateResiduals,
  NonFiniteSamples,
  WindowContainsPole,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base class for every failure raised by the library. Catch this to map
/// numerical failures onto a single exit path; inspect kind() to tell them
/// apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// The argument sits on (or numerically next to) a pole of ℘ or of a
/// Weierstrass-type solution.
class PoleProximity : public Error {
 public:
  explicit PoleProximity(const std::string& what)
      : Error(ErrorKind::PoleProximity, what) {}
};

class NegativeRadicand : public Error {
 public:
  explicit NegativeRadicand(const std::string& what)
      : Error(ErrorKind::NegativeRadicand, what) {}
};

/// d(t) = sqrt(z(t)) would be imaginary.
class RealityViolation : public Error {
 public:
  explicit RealityViolation(const std::string& what)
      : Error(ErrorKind::RealityViolation, what) {}
};

class StencilOutOfDomain : public Error {
 public:
  explicit StencilOutOfDomain(const std::string& what)
      : Error(ErrorKind::StencilOutOfDomain, what) {}
};

class DegenerateResiduals : public Error {
 public:
  explicit DegenerateResiduals(const std::string& what)
      : Error(ErrorKind::DegenerateResiduals, what) {}
};

class NonFiniteSamples : public Error {
 public:
  explicit NonFiniteSamples(const std::string& what)
      : Error(ErrorKind::NonFiniteSamples, what) {}
};

class WindowContainsPole : public Error {
 public:
  explicit WindowContainsPole(const std::string& what)
      : Error(ErrorKind::WindowContainsPole, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

}  // namespace nlscheck
