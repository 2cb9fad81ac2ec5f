// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dickeamp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A ladder or creation operator would move nonzero amplitude past the
/// allocated truncation.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

/// Exact evolution left more than the allowed population in the top level of
/// a truncated mode.
class TruncationLeakage : public Error {
 public:
  using Error::Error;
};

/// Memory or grid-size guard tripped.
class ResourceGuard : public Error {
 public:
  using Error::Error;
};

/// A mixed conditional state was requested as a pure vector.
class MixedStateError : public Error {
 public:
  using Error::Error;
};

/// A ratio metric has a zero denominator.
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace dickeamp
