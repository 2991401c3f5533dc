#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgfib {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of different multicomplex order (or angle vectors of different length).
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// An order, index, angle or radius outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The point lies on the image of the kernel set, so its preimage is not unique.
class KernelAmbiguity : public Error {
 public:
  KernelAmbiguity(const std::string& what, int index)
      : Error(what), index_(index) {}
  /// Rotor index k >= 2 whose cosine vanished.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class NonUnitInput : public Error {
 public:
  using Error::Error;
};

/// Coordinates that do not lie on the partial torus for the given radii.
class OffSurface : public Error {
 public:
  using Error::Error;
};

/// Coordinates that are not reproduced by the particular sphere orientation.
class OffManifold : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lgfib
