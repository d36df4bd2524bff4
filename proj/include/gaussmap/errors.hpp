#pragma once

#include <stdexcept>
#include <string>

namespace gaussmap {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (d = 0, sqrt of a
/// nonpositive value, parameter out of range, sample outside the box).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by, or reciprocal of, a jet whose value is zero.
class SingularJetError : public Error {
 public:
  using Error::Error;
};

/// Metric determinant below the rank threshold.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Normal-frame construction could not find enough independent seeds.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (non-normal vector, non-parallel
/// section where one is required, mismatched jet dimensions, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Octonionic Gauss map left the unit sphere of Im(O).
class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// Unknown check or example name, malformed parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaussmap
