// Binary-state network model: topology, arc distributions, state vectors
// and super-vector prefixes.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "batrel/errors.hpp"

namespace batrel {

/// Node ids are 1-based everywhere outside this library.
using NodeId = std::uint32_t;

struct Arc {
  NodeId u;
  NodeId v;
};

/// Neighbor reached through an arc; `arc` is the 0-based coordinate index.
struct Incidence {
  NodeId node;
  std::size_t arc;
};

/// Undirected simple graph with an ordered arc list and two terminals.
/// Arc order is the coordinate order of every state vector.
class Network {
 public:
  Network(NodeId node_count, std::vector<Arc> arcs, NodeId source, NodeId sink);

  NodeId node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  const Arc& arc(std::size_t i) const { return arcs_.at(i); }
  NodeId source() const noexcept { return source_; }
  NodeId sink() const noexcept { return sink_; }

  /// Incident arcs of `node`, sorted by neighbor id.
  std::span<const Incidence> incident(NodeId node) const;

 private:
  NodeId node_count_;
  std::vector<Arc> arcs_;
  NodeId source_;
  NodeId sink_;
  std::vector<std::vector<Incidence>> adjacency_;  // indexed by node id
};

/// Pr(a_i works) for every arc, in coordinate order.
class ArcDistribution {
 public:
  ArcDistribution() = default;
  explicit ArcDistribution(std::vector<double> probabilities);

  static ArcDistribution uniform(std::size_t m, double p);

  std::size_t size() const noexcept { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }

 private:
  std::vector<double> probabilities_;
};

/// Bit-packed binary vector. Coordinate 0 (a_1) is the least-significant bit
/// of the canonical integer encoding.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t width);
  StateVector(std::initializer_list<int> bits);

  /// Lowest `width` bits of `code`, coordinate 0 first. width <= 64.
  static StateVector from_code(std::uint64_t code, std::size_t width);

  std::size_t size() const noexcept { return width_; }
  bool operator[](std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }
  void set(std::size_t i, bool on) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (on) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }
  void fill(bool on);
  std::size_t count_ones() const noexcept;

  /// Canonical integer encoding; requires size() <= 64.
  std::uint64_t code() const;

  /// Coordinatewise <=.
  bool dominated_by(const StateVector& other) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

std::ostream& operator<<(std::ostream& os, const StateVector& x);

/// Fixed assignment of the first delta coordinates. Stored as a StateVector
/// of width delta; delta == 0 is the empty prefix.
class SuperVector {
 public:
  SuperVector() = default;
  explicit SuperVector(StateVector prefix) : prefix_(std::move(prefix)) {}
  SuperVector(std::initializer_list<int> bits) : prefix_(bits) {}

  std::size_t delta() const noexcept { return prefix_.size(); }
  bool operator[](std::size_t i) const { return prefix_[i]; }
  const StateVector& bits() const noexcept { return prefix_; }

  friend bool operator==(const SuperVector&, const SuperVector&) = default;

 private:
  StateVector prefix_;
};

/// Base distribution with the prefix coordinates pinned to 0 or 1.
class ConditionedDistribution {
 public:
  ConditionedDistribution(const ArcDistribution& base, SuperVector prefix);

  /// Unconditioned view (empty prefix).
  explicit ConditionedDistribution(const ArcDistribution& base)
      : ConditionedDistribution(base, SuperVector{}) {}

  std::size_t size() const noexcept { return effective_.size(); }
  const SuperVector& prefix() const noexcept { return prefix_; }
  double effective(std::size_t j) const { return effective_[j]; }
  std::span<const double> effective() const noexcept { return effective_; }

 private:
  SuperVector prefix_;
  std::vector<double> effective_;
};

/// Pr(X) = prod over arcs of p_i if X(a_i)=1 else 1-p_i.
double probability_of_vector(const Network& net, const ArcDistribution& dist,
                             const StateVector& x);

/// Product over the delta fixed coordinates only; 1 for the empty prefix.
double probability_of_prefix(const ArcDistribution& dist, const SuperVector& s);

/// Completion of s with zeros / ones on the free coordinates.
StateVector lower_bound_vector(const SuperVector& s, std::size_t m);
StateVector upper_bound_vector(const SuperVector& s, std::size_t m);

// ---------------------------------------------------------------------------
// Network files

struct NetworkSpec {
  Network network;
  ArcDistribution distribution;
};

/// Reads the line format:
///   nodes <n>
///   source <id>
///   sink <id>
///   arc <u> <v> <p>     (one per arc, in coordinate order)
/// Blank lines and lines starting with '#' are ignored.
NetworkSpec parse_network(std::istream& in, std::string_view origin = "<stream>");
NetworkSpec load_network_file(const std::string& path);

void write_network(std::ostream& out, const NetworkSpec& spec);

/// The four-node bridge: arcs (1,2),(1,3),(2,3),(2,4),(3,4), source 1,
/// sink 4, probabilities 0.9, 0.8, 0.7, 0.6, 0.5.
NetworkSpec bridge_network();

/// "bridge" or a file path.
NetworkSpec resolve_network(const std::string& name_or_path);

/// Copy of `spec` with every arc probability set to `p`.
NetworkSpec with_uniform_probability(const NetworkSpec& spec, double p);

}  // namespace batrel
