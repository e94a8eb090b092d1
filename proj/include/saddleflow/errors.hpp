#pragma once

#include <stdexcept>
#include <string>

namespace saddleflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree with the program dimensions. The message names the field.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain of an operation (e.g. a negative multiplier).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Problem data fails its structural checks (definiteness, sizes).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message carries line/column context when available.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration broke down (non-finite values or divergence).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// An experiment could not produce its result (e.g. empty search).
class ExperimentError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace saddleflow
