#pragma once

#include <stdexcept>
#include <string>

namespace kst {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class VarCountMismatch : public Error {
 public:
  using Error::Error;
};

// No Laurent polynomial h with h * g == f.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

// A rational expression whose value is not a Laurent polynomial.
class ResidualDenominator : public Error {
 public:
  using Error::Error;
};

class OverlappingBlocks : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class SumMismatch : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroConstantTerm : public Error {
 public:
  using Error::Error;
};

class IncompatibleSupports : public Error {
 public:
  using Error::Error;
};

class NotComposable : public Error {
 public:
  using Error::Error;
};

class NonDominant : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace kst
