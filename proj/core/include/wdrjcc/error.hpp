#pragma once

#include <stdexcept>
#include <string>

namespace wdrjcc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model or instance violates a structural invariant (bad bounds,
/// undeclared variable, dimension mismatch, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or configuration document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The requested solver backend is unknown or cannot handle the model.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// The worst-case VaR bracket expansion never reached the target risk level.
class UnboundedVaRError : public Error {
 public:
  using Error::Error;
};

}  // namespace wdrjcc
