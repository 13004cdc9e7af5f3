// Stratified reliability estimation over super-vector prefixes.
//
// The first delta arcs are enumerated in binary-addition order. Each prefix S
// is decided by its bound vectors: if the all-zero completion L(S) already
// connects source and sink, every completion does and Pr(S) is added to the
// exact lower mass; if the all-one completion U(S) does not, no completion
// does and S is dropped. The remaining free prefixes are sampled by
// conditional Monte Carlo, with the budget split in proportion to Pr(S)
// (or evenly, with adaptive allocation off), and the estimate is
//
//   R = lower_mass + sum over free S of Pr(S) * n_pass(S) / n_sim(S).
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "batrel/enumeration.hpp"
#include "batrel/network.hpp"
#include "batrel/random.hpp"

namespace batrel {

struct FreeStratum {
  SuperVector prefix;
  double probability = 0.0;
  std::uint64_t emission_index = 0;  // position in BAT order == canonical code
};

struct SuperFamilyPartition {
  std::size_t delta = 0;
  double lower_mass = 0.0;
  double upper_mass = 0.0;
  std::vector<FreeStratum> free;  // BAT emission order
  std::uint64_t lower_count = 0;
  std::uint64_t upper_count = 0;

  std::uint64_t total_count() const noexcept { return std::uint64_t{1} << delta; }
  std::uint64_t free_count() const noexcept { return free.size(); }
  /// Sum of Pr(S) over free strata, accumulated in emission order.
  double free_mass() const noexcept;
};

struct PartitionOptions {
  /// partition enumerates 2^delta prefixes; delta above this is refused.
  std::size_t max_delta = kDefaultEnumerationLimit;
};

SuperFamilyPartition partition_super_family(const Network& net, const ArcDistribution& dist,
                                            std::size_t delta,
                                            const PartitionOptions& options = {});

struct AllocationPlan {
  std::vector<std::uint64_t> n_sim;  // parallel to partition.free
  std::uint64_t total = 0;
};

/// Proportional floors, with the leftover budget given to the most probable
/// free stratum (earliest in emission order on ties). Empty when no stratum
/// is free.
AllocationPlan allocate_simulations(const SuperFamilyPartition& partition,
                                    std::uint64_t n_sim_total);

/// floor(n_sim_total / 2^delta) for every free stratum.
AllocationPlan allocate_uniform(const SuperFamilyPartition& partition,
                                std::uint64_t n_sim_total);

struct BatMcsOptions {
  std::size_t delta = 0;
  std::uint64_t n_sim_total = 0;
  bool adaptive = true;
  /// Raise every free stratum to at least this many simulations. 0 = off.
  std::uint64_t min_sims = 0;
  /// Worker threads for seeded sources; scripted sources always run serially.
  unsigned threads = 1;
  std::size_t max_delta = kDefaultEnumerationLimit;
};

struct StratumResult {
  SuperVector prefix;
  double probability = 0.0;
  std::uint64_t emission_index = 0;
  std::uint64_t n_sim = 0;
  std::uint64_t n_pass = 0;
};

struct BatMcsEstimate {
  double estimate = 0.0;
  double deterministic_floor = 0.0;    // lower mass
  double deterministic_ceiling = 0.0;  // lower mass + free mass
  double plug_in_variance = 0.0;
  std::vector<StratumResult> strata;   // free strata, emission order

  std::size_t delta = 0;
  std::uint64_t lower_count = 0;
  std::uint64_t upper_count = 0;
  std::uint64_t skipped_strata = 0;    // free strata allocated zero simulations
  std::uint64_t discarded_budget = 0;  // budget left unassigned by the plan
  std::uint64_t simulations = 0;       // sum of n_sim over strata
  std::uint64_t uniforms_drawn = 0;
};

/// Stratum S draws from rng.stream(emission index of S), so a seeded run is
/// identical for any thread count.
BatMcsEstimate estimate_reliability(const Network& net, const ArcDistribution& dist,
                                    const BatMcsOptions& options, RandomSource& rng);

/// Same, with an already computed partition and an explicit plan.
BatMcsEstimate estimate_with_plan(const Network& net, const ArcDistribution& dist,
                                  const SuperFamilyPartition& partition,
                                  const AllocationPlan& plan, RandomSource& rng,
                                  unsigned threads = 1);

/// 1 / (2^delta + 1): the reliability level above which equal-allocation
/// stratification is claimed to beat crude sampling. delta >= 1.
double theoretical_variance_threshold(int delta);

}  // namespace batrel
