#include "batrel/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "batrel/batmcs.hpp"
#include "batrel/enumeration.hpp"
#include "batrel/experiments.hpp"
#include "batrel/montecarlo.hpp"
#include "batrel/network.hpp"
#include "batrel/random.hpp"

namespace batrel {

namespace {

struct NetworkArgs {
  std::string network;
  std::optional<double> p;

  void attach(CLI::App& cmd) {
    cmd.add_option("--network", network, "network file, or 'bridge'")->required();
    cmd.add_option("--p", p, "override every arc probability")
        ->check(CLI::Range(0.0, 1.0));
  }
  NetworkSpec load() const {
    NetworkSpec spec = resolve_network(network);
    return p ? with_uniform_probability(spec, *p) : spec;
  }
};

struct SeedArgs {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> replay;

  void attach(CLI::App& cmd) {
    auto* s = cmd.add_option("--seed", seed, "master seed");
    auto* r = cmd.add_option("--replay", replay, "file of scripted uniforms, one per line");
    s->excludes(r);
  }
  std::uint64_t effective_seed() const {
    if (seed) {
      return *seed;
    }
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) ^ rd();
  }
};

unsigned default_threads() {
  if (const char* env = std::getenv("BATREL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) {
        return static_cast<unsigned>(v);
      }
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string human(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string percent(std::uint64_t part, std::uint64_t whole) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4)
     << 100.0 * static_cast<double>(part) / static_cast<double>(whole) << '%';
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-terminal reliability of binary-state networks", "batrel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  unsigned threads = default_threads();
  std::size_t limit = kDefaultEnumerationLimit;

  // exact
  auto* exact = app.add_subcommand("exact", "exact reliability by enumeration or factoring");
  NetworkArgs exact_net;
  exact_net.attach(*exact);
  std::string exact_method = "enumerate";
  exact->add_option("--method", exact_method)
      ->check(CLI::IsMember({"enumerate", "factoring"}));
  exact->add_option("--limit", limit, "largest arc count accepted (cost is 2^m)");

  // mcs
  auto* mcs = app.add_subcommand("mcs", "crude Monte Carlo estimate");
  NetworkArgs mcs_net;
  mcs_net.attach(*mcs);
  SeedArgs mcs_seed;
  mcs_seed.attach(*mcs);
  std::uint64_t mcs_nsim = 0;
  std::size_t mcs_runs = 1;
  mcs->add_option("--nsim", mcs_nsim)->required()->check(CLI::PositiveNumber);
  mcs->add_option("--runs", mcs_runs)->check(CLI::PositiveNumber);

  // batmcs
  auto* bat = app.add_subcommand("batmcs", "stratified super-vector estimate");
  NetworkArgs bat_net;
  bat_net.attach(*bat);
  SeedArgs bat_seed;
  bat_seed.attach(*bat);
  std::size_t bat_delta = 0;
  std::uint64_t bat_nsim = 0;
  std::size_t bat_runs = 1;
  bool bat_no_adaptive = false;
  std::uint64_t bat_min_sims = 0;
  bool bat_verbose = false;
  bat->add_option("--delta", bat_delta)->required();
  bat->add_option("--nsim", bat_nsim)->required();
  bat->add_option("--runs", bat_runs)->check(CLI::PositiveNumber);
  bat->add_flag("--no-adaptive", bat_no_adaptive, "equal allocation floor(N / 2^delta)");
  bat->add_option("--min-sims", bat_min_sims, "minimum simulations per free stratum");
  bat->add_flag("--verbose", bat_verbose, "print the per-stratum table");
  bat->add_option("--threads", threads);
  bat->add_option("--limit", limit, "largest delta accepted (cost is 2^delta)");

  // partition
  auto* part = app.add_subcommand("partition", "count decided and free super vectors");
  NetworkArgs part_net;
  part_net.attach(*part);
  std::size_t part_delta = 0;
  part->add_option("--delta", part_delta)->required();
  part->add_option("--limit", limit, "largest delta accepted (cost is 2^delta)");

  // experiment
  auto* expt = app.add_subcommand("experiment", "replicated runs over a parameter grid");
  std::string expt_network;
  std::vector<std::size_t> expt_deltas{0};
  std::vector<std::uint64_t> expt_nsims;
  std::vector<double> expt_ps;
  std::size_t expt_runs = 30;
  std::optional<std::uint64_t> expt_seed;
  std::string expt_out = "-";
  std::string expt_method = "batmcs";
  bool expt_json = false;
  bool expt_no_adaptive = false;
  std::uint64_t expt_min_sims = 0;
  expt->add_option("--network", expt_network, "network file, or 'bridge'")->required();
  expt->add_option("--deltas", expt_deltas)->delimiter(',');
  expt->add_option("--nsims", expt_nsims)->delimiter(',')->required();
  expt->add_option("--ps", expt_ps)->delimiter(',')->check(CLI::Range(0.0, 1.0));
  expt->add_option("--runs", expt_runs)->check(CLI::PositiveNumber);
  expt->add_option("--seed", expt_seed);
  expt->add_option("--out", expt_out, "output path, '-' for standard output");
  expt->add_option("--method", expt_method)->check(CLI::IsMember({"mcs", "batmcs"}));
  expt->add_flag("--json", expt_json, "write JSON instead of CSV");
  expt->add_flag("--no-adaptive", expt_no_adaptive);
  expt->add_option("--min-sims", expt_min_sims);
  expt->add_option("--threads", threads);
  expt->add_option("--limit", limit, "largest arc count for exact reference values");

  // samplesize
  auto* ss = app.add_subcommand("samplesize", "crude MCS sample size for a target error");
  double ss_epsilon = 0.0;
  double ss_z = 1.96;
  ss->add_option("--epsilon", ss_epsilon)->required();
  ss->add_option("--z", ss_z);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (exact->parsed()) {
      const NetworkSpec spec = exact_net.load();
      const double r = exact_method == "factoring"
                           ? exact_reliability_factoring(spec.network, spec.distribution, {limit})
                           : exact_reliability_enumeration(spec.network, spec.distribution,
                                                           {limit});
      out << human(r) << '\n';
    } else if (mcs->parsed()) {
      const NetworkSpec spec = mcs_net.load();
      std::optional<RandomSource> replay;
      std::uint64_t seed = 0;
      std::ostringstream lines;  // emitted only if every run completes
      if (mcs_seed.replay) {
        replay.emplace(RandomSource::scripted(load_uniforms_file(*mcs_seed.replay)));
        lines << "replay " << *mcs_seed.replay << '\n';
      } else {
        seed = mcs_seed.effective_seed();
        lines << "seed " << seed << '\n';
      }
      for (std::size_t run = 0; run < mcs_runs; ++run) {
        RandomSource seeded = RandomSource::seeded(seed + run);
        RandomSource& rng = replay ? *replay : seeded;
        const McsResult r = crude_mcs(spec.network, spec.distribution, mcs_nsim, rng);
        lines << "run " << run;
        if (!replay) {
          lines << " seed " << seed + run;
        }
        lines << " estimate " << human(r.estimate) << " variance "
              << human(r.plug_in_variance) << " n_pass " << r.n_pass << " n_sim "
              << r.n_sim << '\n';
      }
      out << lines.str();
    } else if (bat->parsed()) {
      const NetworkSpec spec = bat_net.load();
      std::optional<RandomSource> replay;
      std::uint64_t seed = 0;
      std::ostringstream lines;  // emitted only if every run completes
      if (bat_seed.replay) {
        replay.emplace(RandomSource::scripted(load_uniforms_file(*bat_seed.replay)));
        lines << "replay " << *bat_seed.replay << '\n';
      } else {
        seed = bat_seed.effective_seed();
        lines << "seed " << seed << '\n';
      }
      BatMcsOptions opts;
      opts.delta = bat_delta;
      opts.n_sim_total = bat_nsim;
      opts.adaptive = !bat_no_adaptive;
      opts.min_sims = bat_min_sims;
      opts.threads = std::max(1u, threads);
      opts.max_delta = limit;
      for (std::size_t run = 0; run < bat_runs; ++run) {
        RandomSource seeded = RandomSource::seeded(seed + run);
        RandomSource& rng = replay ? *replay : seeded;
        const BatMcsEstimate r = estimate_reliability(spec.network, spec.distribution, opts, rng);
        lines << "run " << run;
        if (!replay) {
          lines << " seed " << seed + run;
        }
        lines << " estimate " << human(r.estimate) << " floor "
              << human(r.deterministic_floor) << " ceiling "
              << human(r.deterministic_ceiling) << " variance "
              << human(r.plug_in_variance) << " simulations " << r.simulations
              << " skipped_strata " << r.skipped_strata << " discarded "
              << r.discarded_budget << '\n';
        if (bat_verbose) {
          for (const StratumResult& s : r.strata) {
            lines << "  stratum " << s.emission_index << ' ' << s.prefix.bits() << " pr "
                  << human(s.probability) << " n_sim " << s.n_sim << " n_pass " << s.n_pass
                  << '\n';
          }
        }
      }
      out << lines.str();
    } else if (part->parsed()) {
      const NetworkSpec spec = part_net.load();
      const SuperFamilyPartition p =
          partition_super_family(spec.network, spec.distribution, part_delta, {limit});
      out << p.total_count() << ' ' << p.lower_count << ' ' << p.upper_count << ' '
          << p.free_count() << ' ' << percent(p.free_count(), p.total_count()) << '\n';
    } else if (expt->parsed()) {
      ExperimentConfig config;
      config.network = resolve_network(expt_network);
      config.method = parse_method(expt_method);
      config.deltas = expt_deltas;
      config.n_sims = expt_nsims;
      config.uniform_ps = expt_ps;
      config.n_run = expt_runs;
      config.master_seed = expt_seed ? *expt_seed : SeedArgs{}.effective_seed();
      config.adaptive = !expt_no_adaptive;
      config.min_sims = expt_min_sims;
      config.threads = std::max(1u, threads);
      config.exact_limit = limit;
      err << "seed " << config.master_seed << '\n';
      const ExperimentReport report = run_experiment(config);
      std::ofstream file;
      std::ostream* sink = &out;
      if (expt_out != "-") {
        file.open(expt_out);
        if (!file) {
          err << "error: cannot write " << expt_out << '\n';
          return kExitFile;
        }
        sink = &file;
      }
      if (expt_json) {
        *sink << to_json(report).dump(2) << '\n';
      } else {
        write_csv(*sink, report);
      }
    } else if (ss->parsed()) {
      out << required_sample_size(ss_epsilon, ss_z) << '\n';
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const ReplayUnderrun& e) {
    err << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace batrel
