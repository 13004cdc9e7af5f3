#include "batrel/connectivity.hpp"

#include <algorithm>

namespace batrel {

namespace {

void check_width(const Network& net, const StateVector& x) {
  if (x.size() != net.arc_count()) {
    throw DimensionError("state vector has " + std::to_string(x.size()) +
                         " coordinates, network has " + std::to_string(net.arc_count()));
  }
}

}  // namespace

LayerTrace plsa_connected(const Network& net, const StateVector& x) {
  check_width(net, x);
  LayerTrace trace;
  std::vector<bool> visited(net.node_count() + 1, false);
  visited[net.source()] = true;
  trace.layers.push_back({net.source()});

  while (true) {
    const auto& current = trace.layers.back();
    std::vector<NodeId> next;
    for (NodeId u : current) {
      for (const Incidence& inc : net.incident(u)) {
        if (x[inc.arc] && !visited[inc.node]) {
          visited[inc.node] = true;
          next.push_back(inc.node);
        }
      }
    }
    if (next.empty()) {
      trace.connected = false;
      return trace;
    }
    std::sort(next.begin(), next.end());
    const bool reached = std::binary_search(next.begin(), next.end(), net.sink());
    trace.layers.push_back(std::move(next));
    if (reached) {
      trace.connected = true;
      return trace;
    }
  }
}

ConnectivityChecker::ConnectivityChecker(const Network& net)
    : net_(&net), stamp_(net.node_count() + 1, 0) {
  frontier_.reserve(net.node_count());
  next_.reserve(net.node_count());
}

bool ConnectivityChecker::operator()(const StateVector& x) {
  check_width(*net_, x);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  const NodeId sink = net_->sink();
  frontier_.assign(1, net_->source());
  stamp_[net_->source()] = epoch_;
  while (!frontier_.empty()) {
    next_.clear();
    for (NodeId u : frontier_) {
      for (const Incidence& inc : net_->incident(u)) {
        if (x[inc.arc] && stamp_[inc.node] != epoch_) {
          if (inc.node == sink) {
            return true;
          }
          stamp_[inc.node] = epoch_;
          next_.push_back(inc.node);
        }
      }
    }
    frontier_.swap(next_);
  }
  return false;
}

bool is_connected(const Network& net, const StateVector& x) {
  return ConnectivityChecker(net)(x);
}

const char* to_string(SuperVectorClass c) noexcept {
  switch (c) {
    case SuperVectorClass::LowerConnected:
      return "LOWER_CONNECTED";
    case SuperVectorClass::UpperDisconnected:
      return "UPPER_DISCONNECTED";
    case SuperVectorClass::Free:
      return "FREE";
  }
  return "?";
}

SuperVectorClass classify_super_vector(const Network& net, const SuperVector& s) {
  ConnectivityChecker connected(net);
  if (connected(lower_bound_vector(s, net.arc_count()))) {
    return SuperVectorClass::LowerConnected;
  }
  if (!connected(upper_bound_vector(s, net.arc_count()))) {
    return SuperVectorClass::UpperDisconnected;
  }
  return SuperVectorClass::Free;
}

}  // namespace batrel
