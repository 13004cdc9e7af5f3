#include "batrel/network.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace batrel {

namespace {

std::size_t words_for(std::size_t width) { return (width + 63) / 64; }

void check_probability(double p, const std::string& where) {
  // Written as a negated range test so that NaN is rejected too.
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError(where + ": probability must lie in [0,1]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Network

Network::Network(NodeId node_count, std::vector<Arc> arcs, NodeId source, NodeId sink)
    : node_count_(node_count), arcs_(std::move(arcs)), source_(source), sink_(sink) {
  if (node_count_ == 0) {
    throw ArgumentError("network must have at least one node");
  }
  auto in_range = [this](NodeId v) { return v >= 1 && v <= node_count_; };
  if (!in_range(source_) || !in_range(sink_)) {
    throw ArgumentError("source and sink must be node ids in 1.." +
                        std::to_string(node_count_));
  }
  if (source_ == sink_) {
    throw ArgumentError("source and sink must differ");
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  adjacency_.resize(node_count_ + 1);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    const std::string label = "arc " + std::to_string(i + 1);
    if (!in_range(a.u) || !in_range(a.v)) {
      throw ArgumentError(label + " references a node outside 1.." +
                          std::to_string(node_count_));
    }
    if (a.u == a.v) {
      throw ArgumentError(label + " is a self-loop");
    }
    if (!seen.emplace(std::min(a.u, a.v), std::max(a.u, a.v)).second) {
      throw ArgumentError(label + " duplicates an earlier arc");
    }
    adjacency_[a.u].push_back({a.v, i});
    adjacency_[a.v].push_back({a.u, i});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Incidence& x, const Incidence& y) {
      return x.node < y.node;
    });
  }
}

std::span<const Incidence> Network::incident(NodeId node) const {
  return adjacency_.at(node);
}

// ---------------------------------------------------------------------------
// ArcDistribution

ArcDistribution::ArcDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    check_probability(probabilities_[i], "arc " + std::to_string(i + 1));
  }
}

ArcDistribution ArcDistribution::uniform(std::size_t m, double p) {
  return ArcDistribution(std::vector<double>(m, p));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t width) : width_(width), words_(words_for(width), 0) {}

StateVector::StateVector(std::initializer_list<int> bits) : StateVector(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) {
    set(i++, b != 0);
  }
}

StateVector StateVector::from_code(std::uint64_t code, std::size_t width) {
  if (width > 64) {
    throw DimensionError("from_code supports at most 64 coordinates");
  }
  StateVector x(width);
  if (width > 0) {
    x.words_[0] = width == 64 ? code : code & ((std::uint64_t{1} << width) - 1);
  }
  return x;
}

void StateVector::fill(bool on) {
  std::fill(words_.begin(), words_.end(), on ? ~std::uint64_t{0} : 0);
  if (on && width_ % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
  }
}

std::size_t StateVector::count_ones() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

std::uint64_t StateVector::code() const {
  if (width_ > 64) {
    throw DimensionError("code() supports at most 64 coordinates");
  }
  return words_.empty() ? 0 : words_[0];
}

bool StateVector::dominated_by(const StateVector& other) const {
  if (other.width_ != width_) {
    throw DimensionError("dominated_by: width mismatch");
  }
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & ~other.words_[k]) != 0) {
      return false;
    }
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const StateVector& x) {
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << (i ? ", " : "") << (x[i] ? 1 : 0);
  }
  return os << ')';
}

// ---------------------------------------------------------------------------
// ConditionedDistribution

ConditionedDistribution::ConditionedDistribution(const ArcDistribution& base,
                                                 SuperVector prefix)
    : prefix_(std::move(prefix)) {
  if (prefix_.delta() > base.size()) {
    throw DimensionError("prefix longer than the distribution");
  }
  effective_.assign(base.probabilities().begin(), base.probabilities().end());
  for (std::size_t j = 0; j < prefix_.delta(); ++j) {
    effective_[j] = prefix_[j] ? 1.0 : 0.0;
  }
}

// ---------------------------------------------------------------------------
// Probabilities and bound vectors

double probability_of_vector(const Network& net, const ArcDistribution& dist,
                             const StateVector& x) {
  if (x.size() != net.arc_count() || dist.size() != net.arc_count()) {
    throw DimensionError("state vector has " + std::to_string(x.size()) +
                         " coordinates, network has " +
                         std::to_string(net.arc_count()));
  }
  double pr = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    pr *= x[i] ? dist[i] : 1.0 - dist[i];
  }
  return pr;
}

double probability_of_prefix(const ArcDistribution& dist, const SuperVector& s) {
  if (s.delta() > dist.size()) {
    throw DimensionError("prefix longer than the distribution");
  }
  double pr = 1.0;
  for (std::size_t i = 0; i < s.delta(); ++i) {
    pr *= s[i] ? dist[i] : 1.0 - dist[i];
  }
  return pr;
}

namespace {

StateVector complete(const SuperVector& s, std::size_t m, bool fill_value) {
  if (s.delta() > m) {
    throw DimensionError("prefix of length " + std::to_string(s.delta()) +
                         " exceeds m = " + std::to_string(m));
  }
  StateVector x(m);
  x.fill(fill_value);
  for (std::size_t i = 0; i < s.delta(); ++i) {
    x.set(i, s[i]);
  }
  return x;
}

}  // namespace

StateVector lower_bound_vector(const SuperVector& s, std::size_t m) {
  return complete(s, m, false);
}

StateVector upper_bound_vector(const SuperVector& s, std::size_t m) {
  return complete(s, m, true);
}

// ---------------------------------------------------------------------------
// Files

NetworkSpec parse_network(std::istream& in, std::string_view origin) {
  std::optional<long long> nodes, source, sink;
  std::vector<Arc> arcs;
  std::vector<double> probs;

  auto fail = [&](std::size_t line_no, const std::string& msg) -> ParseError {
    return ParseError(std::string(origin) + ":" + std::to_string(line_no) + ": " + msg);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key.front() == '#') {
      continue;
    }
    auto read_id = [&](const char* what) {
      long long v;
      if (!(ls >> v) || v < 1) {
        throw fail(line_no, std::string("expected a positive ") + what);
      }
      return v;
    };
    if (key == "nodes") {
      nodes = read_id("node count");
    } else if (key == "source") {
      source = read_id("source id");
    } else if (key == "sink") {
      sink = read_id("sink id");
    } else if (key == "arc") {
      const long long u = read_id("node id");
      const long long v = read_id("node id");
      double p;
      if (!(ls >> p)) {
        throw fail(line_no, "expected an arc probability");
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw fail(line_no, "arc probability outside [0,1]");
      }
      arcs.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      probs.push_back(p);
    } else {
      throw fail(line_no, "unknown directive '" + key + "'");
    }
    std::string extra;
    if (ls >> extra && extra.front() != '#') {
      throw fail(line_no, "trailing token '" + extra + "'");
    }
  }
  if (!nodes || !source || !sink) {
    throw ParseError(std::string(origin) + ": missing nodes/source/sink directive");
  }
  try {
    return NetworkSpec{Network(static_cast<NodeId>(*nodes), std::move(arcs),
                               static_cast<NodeId>(*source), static_cast<NodeId>(*sink)),
                       ArcDistribution(std::move(probs))};
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
}

NetworkSpec load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open network file");
  }
  return parse_network(in, path);
}

void write_network(std::ostream& out, const NetworkSpec& spec) {
  const Network& net = spec.network;
  out << "nodes " << net.node_count() << '\n'
      << "source " << net.source() << '\n'
      << "sink " << net.sink() << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < net.arc_count(); ++i) {
    out << "arc " << net.arc(i).u << ' ' << net.arc(i).v << ' ' << spec.distribution[i]
        << '\n';
  }
  out.precision(old_precision);
}

NetworkSpec bridge_network() {
  return NetworkSpec{Network(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}, 1, 4),
                     ArcDistribution({0.9, 0.8, 0.7, 0.6, 0.5})};
}

NetworkSpec resolve_network(const std::string& name_or_path) {
  if (name_or_path == "bridge") {
    return bridge_network();
  }
  return load_network_file(name_or_path);
}

NetworkSpec with_uniform_probability(const NetworkSpec& spec, double p) {
  return NetworkSpec{spec.network, ArcDistribution::uniform(spec.network.arc_count(), p)};
}

}  // namespace batrel
