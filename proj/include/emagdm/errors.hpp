#pragma once

#include <stdexcept>
#include <string>

namespace emagdm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: length mismatches, labels outside a frame, masses
/// outside [0, 1], and similar contract violations.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dempster combination of two BPAs whose conflict coefficient is 1.
class TotalConflictError : public Error {
 public:
  using Error::Error;
};

/// KL divergence asked for outside absolute continuity.
class DivergenceUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Numeric degeneracy in the data itself: zero-norm attribute, constant
/// attribute domain, zero normalizer, all-zero ideal solution. The message
/// names the offending cell or column.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace emagdm
