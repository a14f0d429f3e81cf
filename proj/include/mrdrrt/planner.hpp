#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrdrrt/composite.hpp"
#include "mrdrrt/drrt.hpp"
#include "mrdrrt/oracle.hpp"
#include "mrdrrt/plan_io.hpp"
#include "mrdrrt/scenario.hpp"

namespace mrdrrt {

/// One roadmap per robot; robot i is seeded with derive_seed(seed, i).
std::vector<Roadmap> build_roadmaps(const Scenario& scenario, std::size_t n,
                                    std::size_t k, std::uint64_t seed);

/// Throws ScenarioError unless the roadmaps belong to the scenario (count,
/// start and target positions).
void check_roadmaps_match(const Scenario& scenario,
                          std::span<const Roadmap> roadmaps);

CompositeRoadmap make_composite(const Scenario& scenario,
                                std::span<const Roadmap> roadmaps,
                                ProductMode mode);

struct PlannerOptions {
  DrrtParams drrt;
  ProductMode mode = ProductMode::tensor;
};

/// Called for every successful local connection (from, to, connector output).
using ConnectObserver = std::function<void(
    const CompositeVertex&, const CompositeVertex&, const CompositePath&)>;

struct PlanRun {
  RunReport report;
  std::optional<CompositePath> path;
  ValidationReport validation;
};

/// Runs the multi-robot search and validates any path it returns; a path
/// that fails validation is reported as a failure, never as a success.
PlanRun run_planner(const Scenario& scenario, std::span<const Roadmap> roadmaps,
                    const PlannerOptions& options,
                    const ConnectObserver& observer = {});

std::string status_name(PlanStatus status);

struct BenchOptions {
  std::size_t prm_n = 200;
  std::size_t prm_k = 8;
  std::uint64_t base_seed = 0;
  PlannerOptions planner;
  ConnectObserver observer;
};

struct BenchRow {
  std::string scenario;
  std::size_t seeds = 0;
  std::size_t successes = 0;
  double mean_visited = 0.0;
  double mean_expand_ms = 0.0;
  double mean_connect_ms = 0.0;
  double mean_total_ms = 0.0;
  std::vector<RunReport> runs;

  double success_rate() const {
    return seeds == 0 ? 0.0 : 100.0 * static_cast<double>(successes) /
                                  static_cast<double>(seeds);
  }
};

/// Every *.json scenario in `dir`, each run with seeds base_seed ..
/// base_seed+seeds-1 (the seed drives both roadmap construction and search).
/// Rows are sorted by scenario name; means are over successful runs only.
std::vector<BenchRow> run_bench(const std::filesystem::path& dir,
                                std::size_t seeds, const BenchOptions& options);

/// Header: scenario,seeds,success_rate,mean_visited,mean_expand_ms,
/// mean_connect_ms,mean_total_ms. With timing off the time columns hold "na".
std::string bench_csv(std::span<const BenchRow> rows, bool timing = true);

}  // namespace mrdrrt
