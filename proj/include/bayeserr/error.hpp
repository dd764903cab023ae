#pragma once

#include <stdexcept>
#include <string>

namespace bayeserr {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation exists but not for this distribution family.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Two distributions must share family parameters (d, nu, lambda) and do not.
class MismatchedFamily : public Error {
 public:
  using Error::Error;
};

// The scaled densities never cross: one dominates the other everywhere.
class NoCrossing : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bayeserr
