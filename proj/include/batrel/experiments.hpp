// Replicated estimator runs over a grid of (delta, n_sim, p) cells.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "batrel/network.hpp"

namespace batrel {

enum class Method { Mcs, BatMcs };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& name);

struct ExperimentConfig {
  NetworkSpec network = bridge_network();
  Method method = Method::BatMcs;
  std::vector<std::size_t> deltas{0};  // ignored for Method::Mcs
  std::vector<std::uint64_t> n_sims;
  /// Uniform arc probabilities to sweep. Empty: one cell per (delta, n_sim)
  /// using the network's own distribution.
  std::vector<double> uniform_ps;
  std::size_t n_run = 30;
  std::uint64_t master_seed = 0;
  bool adaptive = true;
  std::uint64_t min_sims = 0;
  unsigned threads = 1;
  /// Exact reference values are computed when m is within this limit.
  std::size_t exact_limit = 30;
};

struct RunRecord {
  Method method;
  std::size_t delta;
  std::uint64_t n_sim;
  std::optional<double> p;
  std::size_t run;
  std::uint64_t seed;
  double estimate;
  std::optional<double> exact;
  std::optional<double> abs_error;
  double seconds;
  std::uint64_t skipped_strata;
};

struct CellSummary {
  Method method;
  std::size_t delta;
  std::uint64_t n_sim;
  std::optional<double> p;
  std::size_t n_run;
  double mean_estimate;
  double std_estimate;  // sample standard deviation, 0 when n_run == 1
  std::optional<double> exact;
  std::optional<double> abs_error;  // |exact - mean_estimate|
  double mean_seconds;
  double std_seconds;
  double mean_skipped_strata;
};

struct ExperimentReport {
  std::vector<RunRecord> runs;      // ordered by (delta, n_sim, p, run)
  std::vector<CellSummary> cells;   // ordered by (delta, n_sim, p)
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Per-run rows followed by per-cell rows whose run column is "mean" or "std".
/// Columns: method,delta,n_sim,p,run,estimate,exact,abs_error,seconds,skipped_strata
void write_csv(std::ostream& out, const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);

struct TheoreticalVariances {
  double mcs;           // R (1 - R) / n_sim
  double batmcs_bound;  // (R - omega R^2) / lambda, omega = 2^delta, lambda = n_sim / omega
};

TheoreticalVariances theoretical_variances(double reliability, std::uint64_t n_sim,
                                           std::size_t delta);

}  // namespace batrel
