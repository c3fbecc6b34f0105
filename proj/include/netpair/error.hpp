#pragma once

#include <stdexcept>

namespace netpair {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition (unknown vertex, bad file, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A solve, factorization or numerical postcondition failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace netpair
