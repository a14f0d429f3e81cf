#include "mrdrrt/planner.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

#include "mrdrrt/connector.hpp"
#include "mrdrrt/random.hpp"

namespace mrdrrt {

std::vector<Roadmap> build_roadmaps(const Scenario& scenario, std::size_t n,
                                    std::size_t k, std::uint64_t seed) {
  std::vector<Roadmap> out;
  for (std::size_t i = 0; i < scenario.robot_count(); ++i) {
    PrmOptions options;
    options.n = n;
    options.k = k;
    options.seed = derive_seed(seed, i);
    out.push_back(build_roadmap(scenario.robots[i], scenario.workspace,
                                scenario.obstacles, options));
  }
  return out;
}

void check_roadmaps_match(const Scenario& scenario,
                          std::span<const Roadmap> roadmaps) {
  if (roadmaps.size() != scenario.robot_count()) {
    throw ScenarioError("expected " + std::to_string(scenario.robot_count()) +
                        " roadmaps, got " + std::to_string(roadmaps.size()));
  }
  for (std::size_t i = 0; i < roadmaps.size(); ++i) {
    const auto& g = roadmaps[i];
    if (g.position(g.start_id) != scenario.robots[i].start ||
        g.position(g.target_id) != scenario.robots[i].target) {
      throw ScenarioError("roadmap " + std::to_string(i) +
                          " does not match the scenario's start/target");
    }
  }
}

CompositeRoadmap make_composite(const Scenario& scenario,
                                std::span<const Roadmap> roadmaps,
                                ProductMode mode) {
  check_roadmaps_match(scenario, roadmaps);
  return CompositeRoadmap({roadmaps.begin(), roadmaps.end()}, scenario.discs(),
                          bounding_box(scenario.workspace), mode);
}

std::string status_name(PlanStatus status) {
  switch (status) {
    case PlanStatus::success:
      return "success";
    case PlanStatus::max_iterations:
      return "max_iterations";
    case PlanStatus::time_budget:
      return "time_budget";
    case PlanStatus::exhausted:
      return "exhausted";
  }
  return "unknown";
}

PlanRun run_planner(const Scenario& scenario, std::span<const Roadmap> roadmaps,
                    const PlannerOptions& options,
                    const ConnectObserver& observer) {
  const CompositeRoadmap graph = make_composite(scenario, roadmaps, options.mode);
  LocalConnector<CompositeVertex> connector =
      [&](const CompositeVertex& from, const CompositeVertex& to) {
        auto path = local_connect(graph, from, to);
        if (path && observer) {
          observer(from, to, *path);
        }
        return path;
      };

  const auto t0 = std::chrono::steady_clock::now();
  auto outcome =
      plan(graph, graph.start(), graph.target(), options.drrt, connector);
  const double total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

  PlanRun run;
  run.report.scenario = scenario.name;
  run.report.seed = options.drrt.seed;
  run.report.status = status_name(outcome.status);
  run.report.iterations = outcome.iterations;
  run.report.visited = outcome.tree.size();
  run.report.expand_ms = outcome.expand_ms;
  run.report.connect_ms = outcome.connect_ms;
  run.report.total_ms = total_ms;
  if (outcome.path) {
    run.validation = validate_path(scenario, roadmaps, *outcome.path);
    if (run.validation.ok()) {
      run.report.success = true;
      run.report.path_steps = outcome.path->step_count();
      run.path = std::move(outcome.path);
    } else {
      run.report.status = "validation_failed";
    }
  }
  return run;
}

std::vector<BenchRow> run_bench(const std::filesystem::path& dir,
                                std::size_t seeds, const BenchOptions& options) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::vector<Scenario> scenarios;
  for (const auto& f : files) {
    scenarios.push_back(load_scenario(f));
  }
  std::sort(scenarios.begin(), scenarios.end(),
            [](const Scenario& a, const Scenario& b) { return a.name < b.name; });

  std::vector<BenchRow> rows;
  for (const auto& scenario : scenarios) {
    BenchRow row;
    row.scenario = scenario.name;
    row.seeds = seeds;
    for (std::size_t r = 0; r < seeds; ++r) {
      const std::uint64_t seed = options.base_seed + r;
      RunReport report;
      report.scenario = scenario.name;
      report.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      std::vector<Roadmap> roadmaps;
      try {
        roadmaps = build_roadmaps(scenario, options.prm_n, options.prm_k, seed);
      } catch (const RoadmapError& e) {
        report.status = "roadmap_failed";
        row.runs.push_back(report);
        continue;
      }
      const double roadmap_ms = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
      PlannerOptions planner = options.planner;
      planner.drrt.seed = seed;
      PlanRun run = run_planner(scenario, roadmaps, planner, options.observer);
      run.report.roadmap_ms = roadmap_ms;
      row.runs.push_back(run.report);
    }
    for (const auto& run : row.runs) {
      if (run.success) {
        ++row.successes;
        row.mean_visited += static_cast<double>(run.visited);
        row.mean_expand_ms += run.expand_ms;
        row.mean_connect_ms += run.connect_ms;
        row.mean_total_ms += run.total_ms;
      }
    }
    if (row.successes > 0) {
      const auto n = static_cast<double>(row.successes);
      row.mean_visited /= n;
      row.mean_expand_ms /= n;
      row.mean_connect_ms /= n;
      row.mean_total_ms /= n;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(std::span<const BenchRow> rows, bool timing) {
  std::string out =
      "scenario,seeds,success_rate,mean_visited,mean_expand_ms,mean_connect_ms,"
      "mean_total_ms\n";
  for (const auto& row : rows) {
    const bool any = row.successes > 0;
    auto time = [&](double v) {
      return timing && any ? fmt::format("{:.1f}", v) : std::string("na");
    };
    out += fmt::format("{},{},{:.1f},{},{},{},{}\n", row.scenario, row.seeds,
                       row.success_rate(),
                       any ? fmt::format("{:.1f}", row.mean_visited) : "na",
                       time(row.mean_expand_ms), time(row.mean_connect_ms),
                       time(row.mean_total_ms));
  }
  return out;
}

}  // namespace mrdrrt
