// Crude Monte Carlo estimation of two-terminal reliability.
#pragma once

#include <cstdint>

#include "batrel/connectivity.hpp"
#include "batrel/network.hpp"
#include "batrel/random.hpp"

namespace batrel {

struct McsResult {
  double estimate = 0.0;  // n_pass / n_sim
  std::uint64_t n_pass = 0;
  std::uint64_t n_sim = 0;
  double plug_in_variance = 0.0;  // estimate (1 - estimate) / n_sim
  std::uint64_t uniforms_drawn = 0;
};

/// Fills `out` (resized to m): prefix coordinates are copied without drawing;
/// each free coordinate j, in ascending order, draws one uniform rho and works
/// iff rho < effective(j).
void sample_vector(const ConditionedDistribution& cond, UniformStream& rng,
                   StateVector& out);

StateVector sample_vector(const Network& net, const ConditionedDistribution& cond,
                          UniformStream& rng);

/// Draws n_sim conditioned vectors and counts the connected ones.
std::uint64_t count_connected_samples(const Network& net,
                                      const ConditionedDistribution& cond,
                                      std::uint64_t n_sim, UniformStream& rng);

/// Crude MCS on stream 0 of `rng`.
McsResult crude_mcs(const Network& net, const ArcDistribution& dist, std::uint64_t n_sim,
                    RandomSource& rng);

/// Smallest N with N >= z^2 / (4 epsilon^2). Values within 1e-12 (relative)
/// of an integer are taken as that integer, so decimal inputs such as
/// epsilon = 0.01, z = 1.96 give 9604 rather than a rounding artefact.
std::uint64_t required_sample_size(double epsilon, double z);

}  // namespace batrel
