#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Negative eigenvalue fed to sqrt/log/fractional power.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inverse (or negative power) of an element with spectrum at 0.
class SingularError : public Error {
 public:
  using Error::Error;
};

class UnsupportedElement : public Error {
 public:
  using Error::Error;
};

class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

// Two independent computation routes disagreed beyond tolerance.
class NumericalHealthFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace conelab
