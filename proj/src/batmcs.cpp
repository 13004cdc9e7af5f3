#include "batrel/batmcs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "batrel/connectivity.hpp"
#include "batrel/montecarlo.hpp"

namespace batrel {

double SuperFamilyPartition::free_mass() const noexcept {
  double mass = 0.0;
  for (const auto& s : free) {
    mass += s.probability;
  }
  return mass;
}

SuperFamilyPartition partition_super_family(const Network& net, const ArcDistribution& dist,
                                            std::size_t delta,
                                            const PartitionOptions& options) {
  const std::size_t m = net.arc_count();
  if (dist.size() != m) {
    throw DimensionError("distribution does not match the network's arc count");
  }
  if (delta > m) {
    throw ArgumentError("delta = " + std::to_string(delta) + " exceeds m = " +
                        std::to_string(m));
  }
  const std::size_t limit = std::min<std::size_t>(options.max_delta, 62);
  if (delta > limit) {
    throw CapacityError("delta = " + std::to_string(delta) +
                            " is above the enumeration limit of " + std::to_string(limit),
                        limit);
  }

  SuperFamilyPartition part;
  part.delta = delta;
  ConnectivityChecker connected(net);
  StateVector lower(m);
  StateVector upper(m);
  BatCursor cursor(delta);
  std::uint64_t index = 0;
  while (const StateVector* prefix_bits = cursor.next()) {
    // Bound vectors share the prefix and differ only in the free tail.
    lower.fill(false);
    upper.fill(true);
    for (std::size_t i = 0; i < delta; ++i) {
      lower.set(i, (*prefix_bits)[i]);
      upper.set(i, (*prefix_bits)[i]);
    }
    SuperVector prefix(*prefix_bits);
    const double pr = probability_of_prefix(dist, prefix);
    if (connected(lower)) {
      part.lower_mass += pr;
      ++part.lower_count;
    } else if (!connected(upper)) {
      part.upper_mass += pr;
      ++part.upper_count;
    } else {
      part.free.push_back({std::move(prefix), pr, index});
    }
    ++index;
  }
  return part;
}

AllocationPlan allocate_simulations(const SuperFamilyPartition& partition,
                                    std::uint64_t n_sim_total) {
  AllocationPlan plan;
  if (partition.free.empty()) {
    return plan;
  }
  const double mass = partition.free_mass();
  const double budget = static_cast<double>(n_sim_total);
  std::size_t largest = 0;
  std::uint64_t assigned = 0;
  plan.n_sim.reserve(partition.free.size());
  for (std::size_t k = 0; k < partition.free.size(); ++k) {
    const double pr = partition.free[k].probability;
    const double share = mass > 0.0 ? budget * pr / mass : 0.0;
    auto floor_k = static_cast<std::uint64_t>(std::floor(share));
    plan.n_sim.push_back(floor_k);
    assigned += floor_k;
    if (pr > partition.free[largest].probability) {
      largest = k;
    }
  }
  // Rounding in budget * pr / mass can, in principle, overshoot by one.
  while (assigned > n_sim_total) {
    auto it = std::max_element(plan.n_sim.begin(), plan.n_sim.end());
    --*it;
    --assigned;
  }
  plan.n_sim[largest] += n_sim_total - assigned;
  plan.total = n_sim_total;
  return plan;
}

AllocationPlan allocate_uniform(const SuperFamilyPartition& partition,
                                std::uint64_t n_sim_total) {
  AllocationPlan plan;
  if (partition.free.empty()) {
    return plan;
  }
  const std::uint64_t each = n_sim_total >> partition.delta;
  plan.n_sim.assign(partition.free.size(), each);
  plan.total = each * partition.free.size();
  return plan;
}

namespace {

void run_strata(const Network& net, const ArcDistribution& dist,
                std::vector<StratumResult>& strata, RandomSource& rng, unsigned threads,
                std::uint64_t& uniforms_drawn) {
  std::vector<std::uint64_t> drawn(strata.size(), 0);
  auto simulate = [&](std::size_t k, UniformStream stream) {
    StratumResult& s = strata[k];
    if (s.n_sim > 0) {
      s.n_pass = count_connected_samples(net, ConditionedDistribution(dist, s.prefix),
                                         s.n_sim, stream);
    }
    drawn[k] = stream.drawn();
  };

  if (rng.is_scripted() || threads <= 1 || strata.size() <= 1) {
    for (std::size_t k = 0; k < strata.size(); ++k) {
      simulate(k, rng.stream(strata[k].emission_index));
    }
  } else {
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, strata.size()));
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::size_t k = cursor++; k < strata.size(); k = cursor++) {
              simulate(k, rng.stream(strata[k].emission_index));
            }
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }
  uniforms_drawn = 0;
  for (auto d : drawn) {
    uniforms_drawn += d;
  }
}

}  // namespace

BatMcsEstimate estimate_with_plan(const Network& net, const ArcDistribution& dist,
                                  const SuperFamilyPartition& partition,
                                  const AllocationPlan& plan, RandomSource& rng,
                                  unsigned threads) {
  if (plan.n_sim.size() != partition.free.size()) {
    throw ArgumentError("allocation plan does not match the partition");
  }
  BatMcsEstimate out;
  out.delta = partition.delta;
  out.lower_count = partition.lower_count;
  out.upper_count = partition.upper_count;
  out.strata.reserve(partition.free.size());
  for (std::size_t k = 0; k < partition.free.size(); ++k) {
    const FreeStratum& f = partition.free[k];
    out.strata.push_back({f.prefix, f.probability, f.emission_index, plan.n_sim[k], 0});
    out.simulations += plan.n_sim[k];
    if (plan.n_sim[k] == 0) {
      ++out.skipped_strata;
    }
  }

  run_strata(net, dist, out.strata, rng, threads, out.uniforms_drawn);

  // Ordered reduction keeps the result independent of scheduling.
  out.deterministic_floor = partition.lower_mass;
  out.estimate = partition.lower_mass;
  out.deterministic_ceiling = partition.lower_mass;
  for (const StratumResult& s : out.strata) {
    out.deterministic_ceiling += s.probability;
    if (s.n_sim == 0) {
      continue;
    }
    const double n = static_cast<double>(s.n_sim);
    const double ratio = static_cast<double>(s.n_pass) / n;
    out.estimate += s.probability * ratio;
    out.plug_in_variance += s.probability * s.probability * (ratio * (1.0 - ratio) / n);
  }
  return out;
}

BatMcsEstimate estimate_reliability(const Network& net, const ArcDistribution& dist,
                                    const BatMcsOptions& options, RandomSource& rng) {
  const SuperFamilyPartition partition =
      partition_super_family(net, dist, options.delta, {options.max_delta});
  AllocationPlan plan = options.adaptive
                            ? allocate_simulations(partition, options.n_sim_total)
                            : allocate_uniform(partition, options.n_sim_total);
  const std::uint64_t planned = plan.total;
  if (options.min_sims > 0) {
    for (auto& n : plan.n_sim) {
      n = std::max(n, options.min_sims);
    }
  }
  BatMcsEstimate out = estimate_with_plan(net, dist, partition, plan, rng, options.threads);
  out.discarded_budget =
      partition.free.empty() ? options.n_sim_total
                             : options.n_sim_total - std::min(planned, options.n_sim_total);
  return out;
}

double theoretical_variance_threshold(int delta) {
  if (delta < 1) {
    throw ArgumentError("variance threshold needs delta >= 1");
  }
  if (delta > 1023) {
    return 0.0;
  }
  return 1.0 / (std::ldexp(1.0, delta) + 1.0);
}

}  // namespace batrel
