// Binary-addition-tree enumeration and the two exact reliability oracles.
#pragma once

#include <cstddef>
#include <cstdint>

#include "batrel/network.hpp"

namespace batrel {

/// Walks all 2^width binary vectors as a binary counter with coordinate 0 as
/// the least-significant digit. The single held vector is updated in place.
///
///   BatCursor cur(5);
///   while (const StateVector* x = cur.next()) { ... }
class BatCursor {
 public:
  explicit BatCursor(std::size_t width) : current_(width) {}

  /// Advances and returns the new vector, or nullptr once all 2^width vectors
  /// have been produced. The first call yields the zero vector.
  const StateVector* next();

  const StateVector& current() const noexcept { return current_; }
  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t emitted() const noexcept { return emitted_; }

 private:
  StateVector current_;
  bool started_ = false;
  bool exhausted_ = false;
  std::uint64_t emitted_ = 0;
};

/// per_arc_value times the number of coordinates equal to on_state.
double additive_metric(const StateVector& x, double per_arc_value, bool on_state);

inline constexpr std::size_t kDefaultEnumerationLimit = 30;

struct ExactOptions {
  /// Largest m either oracle accepts; cost grows as 2^m.
  std::size_t max_arcs = kDefaultEnumerationLimit;
};

/// Sum of Pr(X) over every connected X.
double exact_reliability_enumeration(const Network& net, const ArcDistribution& dist,
                                     const ExactOptions& options = {});

/// Factoring on the lowest-index arc with 0 < p < 1 until every arc is
/// determined, then a single connectivity check. No graph reductions.
double exact_reliability_factoring(const Network& net, const ArcDistribution& dist,
                                   const ExactOptions& options = {});

}  // namespace batrel
