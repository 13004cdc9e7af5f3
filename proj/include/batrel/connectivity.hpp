// Source-sink connectivity of G(X) by layered breadth expansion, and
// classification of super vectors through their bound vectors.
#pragma once

#include <vector>

#include "batrel/network.hpp"

namespace batrel {

struct LayerTrace {
  /// layers[0] = {source}; each later layer holds the not-yet-visited nodes
  /// adjacent to the previous layer through working arcs, in ascending id.
  std::vector<std::vector<NodeId>> layers;
  bool connected = false;
};

/// Full layered search with the trace. Stops at the first layer containing
/// the sink, or when a layer comes out empty.
LayerTrace plsa_connected(const Network& net, const StateVector& x);

/// Verdict only. Same search; buffers are reused across calls.
class ConnectivityChecker {
 public:
  explicit ConnectivityChecker(const Network& net);
  bool operator()(const StateVector& x);

 private:
  const Network* net_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> next_;
};

bool is_connected(const Network& net, const StateVector& x);

enum class SuperVectorClass {
  LowerConnected,     // L(S) connected: every completion works
  UpperDisconnected,  // U(S) disconnected: no completion works
  Free,
};

const char* to_string(SuperVectorClass c) noexcept;

/// L(S) is tested first, then U(S).
SuperVectorClass classify_super_vector(const Network& net, const SuperVector& s);

}  // namespace batrel
