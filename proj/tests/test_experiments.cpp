#include <algorithm>
#include <cmath>
#include <sstream>

#include "batrel/experiments.hpp"
#include "doctest.h"

using namespace batrel;

TEST_CASE("bridge experiment cell brackets the exact value") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.deltas = {2};
  cfg.n_sims = {1024};
  cfg.n_run = 30;
  cfg.master_seed = 17;
  const ExperimentReport rep = run_experiment(cfg);
  REQUIRE(rep.cells.size() == 1);
  REQUIRE(rep.runs.size() == 30);
  const CellSummary& c = rep.cells[0];
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == doctest::Approx(0.766).epsilon(1e-12));
  CHECK(std::abs(c.mean_estimate - 0.766) <= 3 * c.std_estimate);
  CHECK(c.std_estimate >= 0.0);
  CHECK(*c.abs_error == std::abs(*c.exact - c.mean_estimate));
}

TEST_CASE("delta = m cell has zero error") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.deltas = {5};
  cfg.n_sims = {100};
  cfg.n_run = 1;
  const ExperimentReport rep = run_experiment(cfg);
  CHECK(*rep.cells[0].abs_error == 0.0);
  CHECK(rep.cells[0].std_estimate == 0.0);
}

TEST_CASE("report is deterministic apart from timing") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.deltas = {0, 2};
  cfg.n_sims = {256, 1024};
  cfg.uniform_ps = {0.5, 0.9};
  cfg.n_run = 5;
  cfg.master_seed = 1234;
  const ExperimentReport a = run_experiment(cfg);
  cfg.threads = 3;
  const ExperimentReport b = run_experiment(cfg);
  REQUIRE(a.runs.size() == 2 * 2 * 2 * 5);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].estimate == b.runs[i].estimate);
    CHECK(a.runs[i].seed == b.runs[i].seed);
    CHECK(a.runs[i].delta == b.runs[i].delta);
    CHECK(a.runs[i].p == b.runs[i].p);
  }
  // Ordering (delta, n_sim, p, run).
  CHECK(a.runs[0].delta == 0);
  CHECK(a.runs[0].n_sim == 256);
  CHECK(*a.runs[0].p == 0.5);
  CHECK(a.runs[5].p == 0.9);
  CHECK(a.runs[10].n_sim == 1024);
  CHECK(a.runs[20].delta == 2);
}

TEST_CASE("stratified runs have lower spread than crude runs at p = 0.9") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.n_sims = {1 << 13};
  cfg.uniform_ps = {0.9};
  cfg.n_run = 30;
  cfg.master_seed = 2718;
  cfg.method = Method::Mcs;
  const ExperimentReport crude = run_experiment(cfg);
  cfg.method = Method::BatMcs;
  cfg.deltas = {2};
  const ExperimentReport strat = run_experiment(cfg);
  CHECK(*crude.cells[0].exact == doctest::Approx(0.97848).epsilon(1e-12));
  CHECK(strat.cells[0].std_estimate < crude.cells[0].std_estimate);
}

TEST_CASE("error shrinks as the budget grows") {
  int better = 0;
  for (std::uint64_t meta = 0; meta < 10; ++meta) {
    ExperimentConfig cfg;
    cfg.network = bridge_network();
    cfg.deltas = {2};
    cfg.n_sims = {1 << 8, 1 << 16};
    cfg.n_run = 10;
    cfg.master_seed = 1000 + meta;
    const ExperimentReport rep = run_experiment(cfg);
    if (*rep.cells[1].abs_error < *rep.cells[0].abs_error) {
      ++better;
    }
  }
  CHECK(better >= 9);
}

TEST_CASE("exact column is blank beyond the limit") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.deltas = {1};
  cfg.n_sims = {64};
  cfg.n_run = 2;
  cfg.exact_limit = 3;
  const ExperimentReport rep = run_experiment(cfg);
  CHECK_FALSE(rep.cells[0].exact.has_value());
  CHECK_FALSE(rep.runs[0].abs_error.has_value());

  std::ostringstream csv;
  write_csv(csv, rep);
  std::istringstream lines(csv.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "method,delta,n_sim,p,run,estimate,exact,abs_error,seconds,skipped_strata");
  std::getline(lines, row);
  CHECK(row.rfind("batmcs,1,64,,0,", 0) == 0);
  CHECK(row.find(",,,") != std::string::npos);
}

TEST_CASE("csv and json share the schema") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.deltas = {2};
  cfg.n_sims = {128};
  cfg.uniform_ps = {0.5};
  cfg.n_run = 3;
  const ExperimentReport rep = run_experiment(cfg);
  std::ostringstream csv;
  write_csv(csv, rep);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 + 2);
  CHECK(text.find("batmcs,2,128,0.5,mean,") != std::string::npos);
  CHECK(text.find("batmcs,2,128,0.5,std,") != std::string::npos);

  const auto json = to_json(rep);
  CHECK(json["rows"].size() == 3);
  CHECK(json["summary"].size() == 1);
  CHECK(json["rows"][0]["method"] == "batmcs");
  CHECK(json["summary"][0]["exact"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("invalid configurations") {
  ExperimentConfig cfg;
  cfg.network = bridge_network();
  cfg.n_sims = {10};
  cfg.n_run = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ArgumentError);
  cfg.n_run = 1;
  cfg.uniform_ps = {1.2};
  CHECK_THROWS_AS(run_experiment(cfg), ArgumentError);
  CHECK_THROWS_AS(parse_method("dfs"), ArgumentError);
}

TEST_CASE("theoretical variances") {
  CHECK(theoretical_variances(0.5, 1000, 0).mcs == doctest::Approx(0.00025));
  CHECK(theoretical_variances(0.766, 1024, 2).mcs ==
        doctest::Approx(0.766 * 0.234 / 1024).epsilon(1e-12));
  CHECK(theoretical_variances(0.766, 1024, 2).mcs == doctest::Approx(1.7507e-4).epsilon(1e-4));
  CHECK(theoretical_variances(1.0, 77, 3).mcs == 0.0);
  // lambda = 1024 / 4 = 256, omega = 4
  CHECK(theoretical_variances(0.1, 1024, 2).batmcs_bound ==
        doctest::Approx((0.1 - 4 * 0.01) / 256));
  CHECK_THROWS_AS(theoretical_variances(0.5, 3, 2), ArgumentError);
  CHECK_THROWS_AS(theoretical_variances(1.5, 10, 0), ArgumentError);
}
