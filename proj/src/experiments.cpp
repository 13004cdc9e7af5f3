#include "batrel/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "batrel/batmcs.hpp"
#include "batrel/enumeration.hpp"
#include "batrel/montecarlo.hpp"
#include "batrel/random.hpp"

namespace batrel {

const char* to_string(Method m) noexcept {
  return m == Method::Mcs ? "mcs" : "batmcs";
}

Method parse_method(const std::string& name) {
  if (name == "mcs") {
    return Method::Mcs;
  }
  if (name == "batmcs") {
    return Method::BatMcs;
  }
  throw ArgumentError("unknown method '" + name + "' (expected mcs or batmcs)");
}

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments out;
  if (xs.empty()) {
    return out;
  }
  for (double x : xs) {
    out.mean += x;
  }
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) {
      ss += (x - out.mean) * (x - out.mean);
    }
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.n_run < 1) {
    throw ArgumentError("n_run must be at least 1");
  }
  if (config.n_sims.empty()) {
    throw ArgumentError("at least one n_sim value is required");
  }
  for (double p : config.uniform_ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ArgumentError("uniform probabilities must lie in [0,1]");
    }
  }
  const Network& net = config.network.network;
  const std::vector<std::size_t> deltas =
      config.method == Method::Mcs ? std::vector<std::size_t>{0} : config.deltas;
  if (deltas.empty()) {
    throw ArgumentError("at least one delta value is required");
  }

  // One cell per override value, or a single cell on the file's distribution.
  std::vector<std::optional<double>> ps;
  if (config.uniform_ps.empty()) {
    ps.emplace_back();
  } else {
    ps.assign(config.uniform_ps.begin(), config.uniform_ps.end());
  }
  std::vector<ArcDistribution> dists;
  std::vector<std::optional<double>> exacts;
  for (const auto& p : ps) {
    dists.push_back(p ? ArcDistribution::uniform(net.arc_count(), *p)
                      : config.network.distribution);
    try {
      exacts.emplace_back(
          exact_reliability_enumeration(net, dists.back(), {config.exact_limit}));
    } catch (const CapacityError&) {
      exacts.emplace_back();
    }
  }

  ExperimentReport report;
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    for (std::size_t ni = 0; ni < config.n_sims.size(); ++ni) {
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const std::uint64_t cell_seed =
            derive_seed(derive_seed(derive_seed(config.master_seed, di), ni), pi);
        std::vector<double> estimates, seconds, skipped;
        for (std::size_t run = 0; run < config.n_run; ++run) {
          const std::uint64_t run_seed = derive_seed(cell_seed, run);
          RandomSource rng = RandomSource::seeded(run_seed);
          const auto start = std::chrono::steady_clock::now();
          double estimate = 0.0;
          std::uint64_t skipped_strata = 0;
          if (config.method == Method::Mcs) {
            estimate = crude_mcs(net, dists[pi], config.n_sims[ni], rng).estimate;
          } else {
            BatMcsOptions opts;
            opts.delta = deltas[di];
            opts.n_sim_total = config.n_sims[ni];
            opts.adaptive = config.adaptive;
            opts.min_sims = config.min_sims;
            opts.threads = config.threads;
            const BatMcsEstimate est = estimate_reliability(net, dists[pi], opts, rng);
            estimate = est.estimate;
            skipped_strata = est.skipped_strata;
          }
          const double elapsed =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                  .count();
          std::optional<double> abs_error;
          if (exacts[pi]) {
            abs_error = std::abs(*exacts[pi] - estimate);
          }
          report.runs.push_back({config.method, deltas[di], config.n_sims[ni], ps[pi], run,
                                 run_seed, estimate, exacts[pi], abs_error, elapsed,
                                 skipped_strata});
          estimates.push_back(estimate);
          seconds.push_back(elapsed);
          skipped.push_back(static_cast<double>(skipped_strata));
        }
        const Moments est = moments(estimates);
        const Moments sec = moments(seconds);
        std::optional<double> cell_error;
        if (exacts[pi]) {
          cell_error = std::abs(*exacts[pi] - est.mean);
        }
        report.cells.push_back({config.method, deltas[di], config.n_sims[ni], ps[pi],
                                config.n_run, est.mean, est.std, exacts[pi], cell_error,
                                sec.mean, sec.std, moments(skipped).mean});
      }
    }
  }
  return report;
}

namespace {

std::string full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string three_sig(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

std::string optional_full(const std::optional<double>& v) { return v ? full(*v) : ""; }

}  // namespace

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "method,delta,n_sim,p,run,estimate,exact,abs_error,seconds,skipped_strata\n";
  for (const RunRecord& r : report.runs) {
    out << to_string(r.method) << ',' << r.delta << ',' << r.n_sim << ','
        << optional_full(r.p) << ',' << r.run << ',' << full(r.estimate) << ','
        << optional_full(r.exact) << ',' << optional_full(r.abs_error) << ','
        << three_sig(r.seconds) << ',' << r.skipped_strata << '\n';
  }
  for (const CellSummary& c : report.cells) {
    const std::string key = std::string(to_string(c.method)) + ',' +
                            std::to_string(c.delta) + ',' + std::to_string(c.n_sim) + ',' +
                            optional_full(c.p) + ',';
    out << key << "mean," << full(c.mean_estimate) << ',' << optional_full(c.exact) << ','
        << optional_full(c.abs_error) << ',' << three_sig(c.mean_seconds) << ','
        << full(c.mean_skipped_strata) << '\n';
    out << key << "std," << full(c.std_estimate) << ',' << optional_full(c.exact) << ",,"
        << three_sig(c.std_seconds) << ",\n";
  }
}

nlohmann::json to_json(const ExperimentReport& report) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const RunRecord& r : report.runs) {
    rows.push_back({{"method", to_string(r.method)},
                    {"delta", r.delta},
                    {"n_sim", r.n_sim},
                    {"p", opt(r.p)},
                    {"run", r.run},
                    {"seed", r.seed},
                    {"estimate", r.estimate},
                    {"exact", opt(r.exact)},
                    {"abs_error", opt(r.abs_error)},
                    {"seconds", r.seconds},
                    {"skipped_strata", r.skipped_strata}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const CellSummary& c : report.cells) {
    summary.push_back({{"method", to_string(c.method)},
                       {"delta", c.delta},
                       {"n_sim", c.n_sim},
                       {"p", opt(c.p)},
                       {"n_run", c.n_run},
                       {"mean", c.mean_estimate},
                       {"std", c.std_estimate},
                       {"exact", opt(c.exact)},
                       {"abs_error", opt(c.abs_error)},
                       {"mean_seconds", c.mean_seconds},
                       {"std_seconds", c.std_seconds},
                       {"mean_skipped_strata", c.mean_skipped_strata}});
  }
  return {{"rows", rows}, {"summary", summary}};
}

TheoreticalVariances theoretical_variances(double reliability, std::uint64_t n_sim,
                                           std::size_t delta) {
  if (!(reliability >= 0.0 && reliability <= 1.0)) {
    throw ArgumentError("reliability must lie in [0,1]");
  }
  if (n_sim < 1) {
    throw ArgumentError("n_sim must be at least 1");
  }
  const double omega = std::ldexp(1.0, static_cast<int>(delta));
  const double lambda = static_cast<double>(n_sim) / omega;
  if (lambda < 1.0) {
    throw ArgumentError("n_sim / 2^delta must be at least 1");
  }
  return {reliability * (1.0 - reliability) / static_cast<double>(n_sim),
          (reliability - omega * reliability * reliability) / lambda};
}

}  // namespace batrel
