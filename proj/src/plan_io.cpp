#include "mrdrrt/plan_io.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace mrdrrt {

PlanDocument make_plan_document(const Scenario& scenario,
                                std::span<const Roadmap> roadmaps,
                                const CompositePath& path, std::uint64_t seed) {
  PlanDocument doc{scenario.name, seed, {}};
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    PlanStep step{path.steps[k], {}};
    const auto& ids = path.vertices[k + 1].ids;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      step.targets.push_back(roadmaps[i].position(ids[i]));
    }
    doc.steps.push_back(std::move(step));
  }
  return doc;
}

nlohmann::json plan_to_json(const PlanDocument& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : plan.steps) {
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& p : s.targets) {
      targets.push_back({p.x, p.y});
    }
    nlohmann::json entry;
    if (s.step.kind == Step::Kind::single) {
      entry = {{"kind", "single"}, {"mover", s.step.mover}};
    } else {
      entry = {{"kind", "simultaneous"}};
    }
    entry["targets"] = std::move(targets);
    steps.push_back(std::move(entry));
  }
  return {{"scenario", plan.scenario},
          {"seed", plan.seed},
          {"steps", std::move(steps)}};
}

PlanDocument plan_from_json(const nlohmann::json& j) {
  try {
    PlanDocument plan;
    plan.scenario = j.at("scenario").get<std::string>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& s : j.at("steps")) {
      PlanStep step;
      const auto kind = s.at("kind").get<std::string>();
      if (kind == "single") {
        step.step = Step::single(s.at("mover").get<std::size_t>());
      } else if (kind == "simultaneous") {
        step.step = Step::simultaneous();
      } else {
        throw std::invalid_argument("unknown step kind '" + kind + "'");
      }
      for (const auto& p : s.at("targets")) {
        if (!p.is_array() || p.size() != 2) {
          throw std::invalid_argument("step target must be [x, y]");
        }
        step.targets.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      plan.steps.push_back(std::move(step));
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed plan JSON: ") + e.what());
  }
}

DecodedPlan decode_plan(const PlanDocument& plan, const Scenario& scenario,
                        std::span<const Roadmap> roadmaps) {
  DecodedPlan out;
  const std::size_t m = scenario.robot_count();
  if (roadmaps.size() != m) {
    out.report.violations.push_back(
        {0, "roadmap_count", {}, "expected one roadmap per robot"});
    return out;
  }
  std::vector<std::map<std::pair<double, double>, VertexId>> lookup(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (VertexId v = 0; v < roadmaps[i].size(); ++v) {
      const Point2 p = roadmaps[i].vertices[v];
      lookup[i].emplace(std::pair{p.x, p.y}, v);
    }
  }

  CompositePath path;
  CompositeVertex current;
  for (const auto& g : roadmaps) {
    current.ids.push_back(g.start_id);
  }
  path.vertices.push_back(current);
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const auto& step = plan.steps[k];
    if (step.targets.size() != m) {
      out.report.violations.push_back(
          {k, "malformed_step", {}, "step must list one target per robot"});
      return out;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Point2 p = step.targets[i];
      const auto it = lookup[i].find({p.x, p.y});
      if (it == lookup[i].end()) {
        out.report.violations.push_back(
            {k, "off_roadmap", {i},
             "robot " + std::to_string(i) + " waypoint is not a roadmap vertex"});
        return out;
      }
      current.ids[i] = it->second;
    }
    path.vertices.push_back(current);
    path.steps.push_back(step.step);
  }
  out.path = std::move(path);
  return out;
}

ValidationReport validate_plan(const PlanDocument& plan,
                               const Scenario& scenario,
                               std::span<const Roadmap> roadmaps) {
  auto decoded = decode_plan(plan, scenario, roadmaps);
  if (!decoded.path) {
    return decoded.report;
  }
  return validate_path(scenario, roadmaps, *decoded.path);
}

nlohmann::json RunReport::to_json() const {
  auto ms = [](double v) { return static_cast<std::int64_t>(std::llround(v)); };
  return {{"scenario", scenario},
          {"seed", seed},
          {"success", success},
          {"status", status},
          {"iterations", iterations},
          {"visited", visited},
          {"path_steps", path_steps},
          {"roadmap_ms", ms(roadmap_ms)},
          {"expand_ms", ms(expand_ms)},
          {"connect_ms", ms(connect_ms)},
          {"total_ms", ms(total_ms)}};
}

}  // namespace mrdrrt
