#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polarjam {

// Base class so callers can catch everything from this library at once.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument: wrong length, value out of range, malformed path string...
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// A non-erased observation is inconsistent with the claimed side information.
// Signals a sampler/codec mismatch, not a channel event.
class CorruptedObservationError : public Error {
 public:
  explicit CorruptedObservationError(const std::string& what) : Error(what) {}
};

// A conditioning prefix has probability zero under the observations.
class ContradictionError : public Error {
 public:
  explicit ContradictionError(const std::string& what) : Error(what) {}
};

// |I| < |R^b| for some user: the chained construction cannot close.
class NegativeSecrecyRateError : public Error {
 public:
  NegativeSecrecyRateError(int user, std::size_t info, std::size_t chain,
                           const std::string& what)
      : Error(what), user(user), info_size(info), chain_size(chain) {}
  int user;
  std::size_t info_size;
  std::size_t chain_size;
};

// The eavesdropper's low-entropy set is not contained in the legitimate one.
class NotDegradedError : public Error {
 public:
  NotDegradedError(std::vector<std::pair<int, std::uint32_t>> viol,
                   const std::string& what)
      : Error(what), violations(std::move(viol)) {}
  // (user, index) pairs that break the inclusion.
  std::vector<std::pair<int, std::uint32_t>> violations;
};

// Exact enumeration requested beyond the configured caps.
class TooLargeError : public Error {
 public:
  explicit TooLargeError(const std::string& what) : Error(what) {}
};

// Operation defined only for corner paths was asked for a general one.
class UnsupportedPathError : public Error {
 public:
  explicit UnsupportedPathError(const std::string& what) : Error(what) {}
};

}  // namespace polarjam
