#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mrdrrt/composite.hpp"
#include "mrdrrt/oracle.hpp"
#include "mrdrrt/scenario.hpp"

namespace mrdrrt {

/// One motion of the plan: every robot's position once the step completes.
struct PlanStep {
  Step step;
  std::vector<Point2> targets;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

/// On-disk plan. The initial configuration is the scenario's start tuple.
struct PlanDocument {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<PlanStep> steps;

  friend bool operator==(const PlanDocument&, const PlanDocument&) = default;
};

PlanDocument make_plan_document(const Scenario& scenario,
                                std::span<const Roadmap> roadmaps,
                                const CompositePath& path, std::uint64_t seed);

/// {scenario, seed, steps:[{kind:"simultaneous"|"single", mover?, targets}]}
nlohmann::json plan_to_json(const PlanDocument& plan);
PlanDocument plan_from_json(const nlohmann::json& j);

/// Maps waypoints back to roadmap vertex ids by exact coordinate match. A
/// waypoint that is not a roadmap vertex is reported as an `off_roadmap`
/// violation at its step.
struct DecodedPlan {
  std::optional<CompositePath> path;
  ValidationReport report;
};
DecodedPlan decode_plan(const PlanDocument& plan, const Scenario& scenario,
                        std::span<const Roadmap> roadmaps);

/// decode_plan followed by validate_path.
ValidationReport validate_plan(const PlanDocument& plan,
                               const Scenario& scenario,
                               std::span<const Roadmap> roadmaps);

/// Per-run summary; times are whole milliseconds.
struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  bool success = false;
  std::string status;
  std::size_t iterations = 0;
  std::size_t visited = 0;
  std::size_t path_steps = 0;
  double roadmap_ms = 0.0;
  double expand_ms = 0.0;
  double connect_ms = 0.0;
  double total_ms = 0.0;

  nlohmann::json to_json() const;
};

}  // namespace mrdrrt
