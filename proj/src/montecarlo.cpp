#include "batrel/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace batrel {

void sample_vector(const ConditionedDistribution& cond, UniformStream& rng,
                   StateVector& out) {
  const std::size_t m = cond.size();
  if (out.size() != m) {
    out = StateVector(m);
  }
  const SuperVector& prefix = cond.prefix();
  const std::size_t delta = prefix.delta();
  for (std::size_t j = 0; j < delta; ++j) {
    out.set(j, prefix[j]);
  }
  for (std::size_t j = delta; j < m; ++j) {
    const double rho = rng.next();
    out.set(j, rho < cond.effective(j));
  }
}

StateVector sample_vector(const Network& net, const ConditionedDistribution& cond,
                          UniformStream& rng) {
  if (cond.size() != net.arc_count()) {
    throw DimensionError("distribution does not match the network's arc count");
  }
  StateVector x(net.arc_count());
  sample_vector(cond, rng, x);
  return x;
}

std::uint64_t count_connected_samples(const Network& net,
                                      const ConditionedDistribution& cond,
                                      std::uint64_t n_sim, UniformStream& rng) {
  if (cond.size() != net.arc_count()) {
    throw DimensionError("distribution does not match the network's arc count");
  }
  ConnectivityChecker connected(net);
  StateVector x(net.arc_count());
  std::uint64_t n_pass = 0;
  for (std::uint64_t k = 0; k < n_sim; ++k) {
    sample_vector(cond, rng, x);
    if (connected(x)) {
      ++n_pass;
    }
  }
  return n_pass;
}

McsResult crude_mcs(const Network& net, const ArcDistribution& dist, std::uint64_t n_sim,
                    RandomSource& rng) {
  if (n_sim < 1) {
    throw ArgumentError("n_sim must be at least 1");
  }
  UniformStream stream = rng.stream(0);
  McsResult r;
  r.n_sim = n_sim;
  r.n_pass = count_connected_samples(net, ConditionedDistribution(dist), n_sim, stream);
  r.estimate = static_cast<double>(r.n_pass) / static_cast<double>(r.n_sim);
  r.plug_in_variance = r.estimate * (1.0 - r.estimate) / static_cast<double>(r.n_sim);
  r.uniforms_drawn = stream.drawn();
  return r;
}

std::uint64_t required_sample_size(double epsilon, double z) {
  if (!(epsilon > 0.0)) {
    throw ArgumentError("epsilon must be positive");
  }
  if (!(z > 0.0)) {
    throw ArgumentError("z must be positive");
  }
  const double bound = z * z / (4.0 * epsilon * epsilon);
  if (!std::isfinite(bound) || bound >= 0x1.0p63) {
    throw ArgumentError("sample size bound overflows");
  }
  const double nearest = std::round(bound);
  if (std::abs(bound - nearest) <= 1e-12 * std::max(1.0, nearest)) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(nearest));
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(bound)));
}

}  // namespace batrel
