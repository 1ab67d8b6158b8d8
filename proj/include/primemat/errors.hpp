#pragma once

#include <stdexcept>
#include <string>

namespace primemat {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (z < 2, k < 2 for twin counts, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Index outside the bounds of a matrix (row > row count, column < 1).
class RangeError : public Error {
public:
  using Error::Error;
};

/// Exact-integer capacity exceeded.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A configured resource limit (enumeration budget, cutoff bound, prime table bound) was hit.
class BudgetError : public Error {
public:
  using Error::Error;
};

} // namespace primemat
