#include <random>
#include <sstream>

#include "batrel/network.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace batrel;

TEST_CASE("bridge network topology") {
  const NetworkSpec b = bridge_network();
  CHECK(b.network.node_count() == 4);
  CHECK(b.network.arc_count() == 5);
  CHECK(b.network.source() == 1);
  CHECK(b.network.sink() == 4);
  CHECK(b.network.arc(2).u == 2);
  CHECK(b.network.arc(2).v == 3);
  CHECK(b.distribution[4] == 0.5);
}

TEST_CASE("network invariants are enforced") {
  CHECK_THROWS_AS(Network(3, {{1, 1}}, 1, 3), ArgumentError);
  CHECK_THROWS_AS(Network(3, {{1, 2}, {2, 1}}, 1, 3), ArgumentError);
  CHECK_THROWS_AS(Network(3, {{1, 4}}, 1, 3), ArgumentError);
  CHECK_THROWS_AS(Network(3, {{1, 2}}, 2, 2), ArgumentError);
  CHECK_THROWS_AS(Network(3, {{1, 2}}, 0, 2), ArgumentError);
  CHECK_THROWS_AS(ArcDistribution({0.5, 1.5}), ArgumentError);
  CHECK_NOTHROW(ArcDistribution({0.0, 1.0}));
}

TEST_CASE("probability of a full vector") {
  const NetworkSpec b = bridge_network();
  const auto p9 = ArcDistribution::uniform(5, 0.9);
  CHECK(probability_of_vector(b.network, p9, StateVector{1, 0, 0, 0, 0}) ==
        doctest::Approx(0.00009).epsilon(1e-12));
  CHECK(probability_of_vector(b.network, ArcDistribution::uniform(5, 1.0),
                              StateVector{1, 1, 1, 1, 1}) == 1.0);
  CHECK_THROWS_AS(probability_of_vector(b.network, p9, StateVector{1, 0}), DimensionError);

  double total = 0.0;
  for (std::uint64_t code = 0; code < 32; ++code) {
    total += probability_of_vector(b.network, b.distribution, StateVector::from_code(code, 5));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probability of a prefix") {
  const NetworkSpec b = bridge_network();
  CHECK(probability_of_prefix(b.distribution, SuperVector{1, 0}) ==
        doctest::Approx(0.18).epsilon(1e-12));
  CHECK(probability_of_prefix(b.distribution, SuperVector{1, 0, 0, 1}) ==
        doctest::Approx(0.0324).epsilon(1e-12));
  CHECK(probability_of_prefix(b.distribution, SuperVector{}) == 1.0);
  CHECK_THROWS_AS(probability_of_prefix(b.distribution, SuperVector{1, 1, 1, 1, 1, 1}),
                  DimensionError);
}

TEST_CASE("bound vectors") {
  CHECK(lower_bound_vector(SuperVector{0, 0, 0}, 5) == StateVector{0, 0, 0, 0, 0});
  CHECK(lower_bound_vector(SuperVector{1, 0, 0, 1}, 5) == StateVector{1, 0, 0, 1, 0});
  CHECK(upper_bound_vector(SuperVector{0, 0, 0}, 5) == StateVector{0, 0, 0, 1, 1});
  CHECK(upper_bound_vector(SuperVector{0, 0}, 5) == StateVector{0, 0, 1, 1, 1});
  const SuperVector full{1, 0, 1, 1, 0};
  CHECK(lower_bound_vector(full, 5) == full.bits());
  CHECK(upper_bound_vector(full, 5) == full.bits());
  CHECK_THROWS_AS(lower_bound_vector(full, 4), DimensionError);
}

TEST_CASE("prefix mass equals the mass of its family; bounds bracket the family") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto p = oracle::random_probabilities(rng, m);
    const ArcDistribution dist(p);
    const std::size_t delta = std::uniform_int_distribution<std::size_t>(0, m)(rng);
    const std::uint64_t prefix_code =
        std::uniform_int_distribution<std::uint64_t>(0, (1ull << delta) - 1)(rng);
    const SuperVector s(StateVector::from_code(prefix_code, delta));
    const StateVector lo = lower_bound_vector(s, m);
    const StateVector hi = upper_bound_vector(s, m);

    double family = 0.0;
    for (std::uint64_t code = 0; code < (1ull << m); ++code) {
      if ((code & ((1ull << delta) - 1)) != prefix_code) {
        continue;
      }
      const StateVector x = StateVector::from_code(code, m);
      CHECK(lo.dominated_by(x));
      CHECK(x.dominated_by(hi));
      family += oracle::vector_probability(p, code);
    }
    CHECK(probability_of_prefix(dist, s) == doctest::Approx(family).epsilon(1e-12));
  }
}

TEST_CASE("conditioned distribution pins the prefix") {
  const NetworkSpec b = bridge_network();
  const ConditionedDistribution c(b.distribution, SuperVector{1, 0});
  CHECK(c.effective(0) == 1.0);
  CHECK(c.effective(1) == 0.0);
  CHECK(c.effective(2) == 0.7);
  CHECK(c.effective(4) == 0.5);
}

TEST_CASE("state vector encoding puts coordinate 1 in the lowest bit") {
  const StateVector x{1, 0, 1, 1, 0};
  CHECK(x.code() == 0b01101);
  CHECK(StateVector::from_code(0b01101, 5) == x);
  StateVector wide(130);
  wide.set(129, true);
  wide.set(64, true);
  CHECK(wide.count_ones() == 2);
  wide.fill(true);
  CHECK(wide.count_ones() == 130);
  std::ostringstream os;
  os << x;
  CHECK(os.str() == "(1, 0, 1, 1, 0)");
}

TEST_CASE("network file round trip and diagnostics") {
  std::stringstream ss;
  write_network(ss, bridge_network());
  const NetworkSpec back = parse_network(ss);
  CHECK(back.network.arc_count() == 5);
  CHECK(back.distribution[0] == 0.9);

  std::istringstream commented(
      "# bridge\nnodes 4\nsource 1\nsink 4\n\narc 1 2 0.9\narc 1 3 0.8 # trailing\n");
  CHECK(parse_network(commented).network.arc_count() == 2);

  std::istringstream bad_key("nodes 3\nsource 1\nsink 3\nedge 1 2 0.5\n");
  CHECK_THROWS_AS(parse_network(bad_key), ParseError);
  std::istringstream bad_prob("nodes 3\nsource 1\nsink 3\narc 1 2 1.5\n");
  CHECK_THROWS_AS(parse_network(bad_prob), ParseError);
  std::istringstream missing("nodes 3\nsource 1\narc 1 2 0.5\n");
  CHECK_THROWS_AS(parse_network(missing), ParseError);
  std::istringstream loop("nodes 3\nsource 1\nsink 3\narc 2 2 0.5\n");
  CHECK_THROWS_AS(parse_network(loop), ParseError);
  CHECK_THROWS_AS(load_network_file("/nonexistent/net.txt"), ParseError);
}
