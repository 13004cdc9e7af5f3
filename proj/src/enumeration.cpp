#include "batrel/enumeration.hpp"

#include <vector>

#include "batrel/connectivity.hpp"

namespace batrel {

const StateVector* BatCursor::next() {
  if (exhausted_) {
    return nullptr;
  }
  if (!started_) {
    started_ = true;
    ++emitted_;
    return &current_;
  }
  // Binary increment: clear trailing ones, set the first zero.
  for (std::size_t i = 0; i < current_.size(); ++i) {
    if (!current_[i]) {
      current_.set(i, true);
      ++emitted_;
      return &current_;
    }
    current_.set(i, false);
  }
  exhausted_ = true;
  return nullptr;
}

double additive_metric(const StateVector& x, double per_arc_value, bool on_state) {
  const std::size_t ones = x.count_ones();
  const std::size_t matching = on_state ? ones : x.size() - ones;
  return per_arc_value * static_cast<double>(matching);
}

namespace {

void check_capacity(const Network& net, const ArcDistribution& dist,
                    const ExactOptions& options, const char* method) {
  if (dist.size() != net.arc_count()) {
    throw DimensionError("distribution has " + std::to_string(dist.size()) +
                         " entries, network has " + std::to_string(net.arc_count()) +
                         " arcs");
  }
  if (net.arc_count() > options.max_arcs) {
    throw CapacityError(std::string(method) + ": network has " +
                            std::to_string(net.arc_count()) +
                            " arcs, above the enumeration limit of " +
                            std::to_string(options.max_arcs),
                        options.max_arcs);
  }
}

class Factoring {
 public:
  Factoring(const Network& net, const ArcDistribution& dist)
      : connected_(net),
        probs_(dist.probabilities().begin(), dist.probabilities().end()),
        state_(net.arc_count()) {}

  double run() { return solve(0); }

 private:
  double solve(std::size_t from) {
    std::size_t pivot = from;
    while (pivot < probs_.size() && (probs_[pivot] == 0.0 || probs_[pivot] == 1.0)) {
      state_.set(pivot, probs_[pivot] == 1.0);
      ++pivot;
    }
    if (pivot == probs_.size()) {
      return connected_(state_) ? 1.0 : 0.0;
    }
    const double p = probs_[pivot];
    state_.set(pivot, true);
    const double up = solve(pivot + 1);
    state_.set(pivot, false);
    const double down = solve(pivot + 1);
    return p * up + (1.0 - p) * down;
  }

  ConnectivityChecker connected_;
  std::vector<double> probs_;
  StateVector state_;
};

}  // namespace

double exact_reliability_enumeration(const Network& net, const ArcDistribution& dist,
                                     const ExactOptions& options) {
  check_capacity(net, dist, options, "enumeration");
  ConnectivityChecker connected(net);
  BatCursor cursor(net.arc_count());
  double reliability = 0.0;
  while (const StateVector* x = cursor.next()) {
    if (connected(*x)) {
      reliability += probability_of_vector(net, dist, *x);
    }
  }
  return reliability;
}

double exact_reliability_factoring(const Network& net, const ArcDistribution& dist,
                                   const ExactOptions& options) {
  check_capacity(net, dist, options, "factoring");
  return Factoring(net, dist).run();
}

}  // namespace batrel
