#pragma once

#include <stdexcept>
#include <string>

namespace framemult {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight or coefficient left the representable range of a double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Gabor lattice parameters inconsistent with the signal length.
class LatticeError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ReweightError : public Error {
 public:
  using Error::Error;
};

class CanonicalizationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed weight expression or scenario document. `path` names the
/// offending JSON field (e.g. "multiplier.phi.a") when known.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace framemult
