#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace batrel {

/// Vector or prefix length does not match the network it is used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad argument to an estimator or planning routine (n_sim, delta, epsilon).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed network file or replay file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponential-cost routine was asked for more coordinates than its limit.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t limit)
      : std::runtime_error(what), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// A scripted uniform source ran out of values.
class ReplayUnderrun : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace batrel
