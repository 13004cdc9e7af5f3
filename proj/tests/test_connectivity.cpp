#include <random>

#include "batrel/connectivity.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace batrel;

TEST_CASE("layered search on the bridge") {
  const Network net = bridge_network().network;

  const LayerTrace all = plsa_connected(net, StateVector{1, 1, 1, 1, 1});
  CHECK(all.connected);
  REQUIRE(all.layers.size() == 3);
  CHECK(all.layers[0] == std::vector<NodeId>{1});
  CHECK(all.layers[1] == std::vector<NodeId>{2, 3});
  CHECK(all.layers[2] == std::vector<NodeId>{4});

  CHECK_FALSE(plsa_connected(net, StateVector{1, 1, 0, 0, 0}).connected);
  CHECK_FALSE(plsa_connected(net, StateVector{0, 0, 0, 0, 0}).connected);
  CHECK(plsa_connected(net, StateVector{1, 0, 1, 1, 0}).connected);
  CHECK_THROWS_AS(plsa_connected(net, StateVector{1, 1}), DimensionError);
}

TEST_CASE("super vector classification on the bridge") {
  const Network net = bridge_network().network;
  CHECK(classify_super_vector(net, SuperVector{0, 0}) == SuperVectorClass::UpperDisconnected);
  CHECK(classify_super_vector(net, SuperVector{1, 0, 0, 1}) ==
        SuperVectorClass::LowerConnected);
  CHECK(classify_super_vector(net, SuperVector{0, 1, 0}) == SuperVectorClass::Free);
  CHECK(std::string(to_string(SuperVectorClass::Free)) == "FREE");
}

TEST_CASE("layered search agrees with depth-first reachability") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::Graph g = oracle::random_graph(rng, 8, 28);
    const Network net = oracle::to_network(g);
    const std::size_t m = g.arcs.size();
    const std::uint64_t code =
        m == 0 ? 0 : std::uniform_int_distribution<std::uint64_t>(0, (1ull << m) - 1)(rng);
    const StateVector x = StateVector::from_code(code, m);
    const LayerTrace trace = plsa_connected(net, x);
    const bool expected = oracle::reachable(g, code);
    REQUIRE(trace.connected == expected);
    CHECK(is_connected(net, x) == expected);

    // Layers: start at source, pairwise disjoint, at most n of them.
    CHECK(trace.layers.front() == std::vector<NodeId>{net.source()});
    CHECK(trace.layers.size() <= net.node_count());
    std::vector<int> hits(net.node_count() + 1, 0);
    for (const auto& layer : trace.layers) {
      CHECK(std::is_sorted(layer.begin(), layer.end()));
      for (NodeId v : layer) {
        ++hits[v];
      }
    }
    CHECK(*std::max_element(hits.begin(), hits.end()) <= 1);
  }
}

TEST_CASE("connectivity is monotone in the state vector") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const oracle::Graph g = oracle::random_graph(rng, 8, 20);
    const Network net = oracle::to_network(g);
    const std::size_t m = g.arcs.size();
    if (m == 0) {
      continue;
    }
    const std::uint64_t mask = (1ull << m) - 1;
    const std::uint64_t x = std::uniform_int_distribution<std::uint64_t>(0, mask)(rng);
    const std::uint64_t y =
        x | std::uniform_int_distribution<std::uint64_t>(0, mask)(rng);
    if (is_connected(net, StateVector::from_code(x, m))) {
      CHECK(is_connected(net, StateVector::from_code(y, m)));
    }
  }
}

TEST_CASE("classification follows the bound vectors, lower bound first") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::Graph g = oracle::random_graph(rng, 7, 12);
    const Network net = oracle::to_network(g);
    const std::size_t m = g.arcs.size();
    const std::size_t delta = std::uniform_int_distribution<std::size_t>(0, m)(rng);
    const std::uint64_t prefix =
        std::uniform_int_distribution<std::uint64_t>(0, (1ull << delta) - 1)(rng);
    const SuperVector s(StateVector::from_code(prefix, delta));

    // Brute-force the family: all completions connected / none connected.
    bool any = false, all = true;
    for (std::uint64_t tail = 0; tail < (1ull << (m - delta)); ++tail) {
      const bool c = oracle::reachable(g, prefix | (tail << delta));
      any = any || c;
      all = all && c;
    }
    const SuperVectorClass cls = classify_super_vector(net, s);
    if (all) {
      CHECK(cls == SuperVectorClass::LowerConnected);
    } else if (!any) {
      CHECK(cls == SuperVectorClass::UpperDisconnected);
    } else {
      CHECK(cls == SuperVectorClass::Free);
    }
  }
}
