#include "mrdrrt/scenario.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace mrdrrt {

std::vector<Disc> Scenario::discs() const {
  std::vector<Disc> out;
  out.reserve(robots.size());
  for (const auto& r : robots) {
    out.push_back(r.disc);
  }
  return out;
}

void validate_scenario(const Scenario& s) {
  try {
    validate_polygon(s.workspace);
    for (const auto& obstacle : s.obstacles) {
      validate_polygon(obstacle);
    }
  } catch (const GeometryError& e) {
    throw ScenarioError(std::string("scenario '") + s.name + "': " + e.what());
  }
  if (s.robots.empty()) {
    throw ScenarioError("scenario '" + s.name + "' has no robots");
  }
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    const auto& r = s.robots[i];
    const std::string who = "robot " + std::to_string(i);
    try {
      validate_disc(r.disc);
    } catch (const GeometryError& e) {
      throw ScenarioError(who + ": " + e.what());
    }
    if (!is_finite(r.start) || !is_finite(r.target)) {
      throw ScenarioError(who + ": non-finite start or target");
    }
    if (!disc_free_at(r.start, r.disc, s.workspace, s.obstacles)) {
      throw ScenarioError(who + ": start is in collision");
    }
    if (!disc_free_at(r.target, r.disc, s.workspace, s.obstacles)) {
      throw ScenarioError(who + ": target is in collision");
    }
  }
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    for (std::size_t j = i + 1; j < s.robots.size(); ++j) {
      const auto& a = s.robots[i];
      const auto& b = s.robots[j];
      const std::string pair =
          "robots " + std::to_string(i) + " and " + std::to_string(j);
      if (!moving_discs_clear(a.start, a.start, a.disc, b.start, b.start,
                              b.disc)) {
        throw ScenarioError(pair + " overlap at their starts");
      }
      if (!moving_discs_clear(a.target, a.target, a.disc, b.target, b.target,
                              b.disc)) {
        throw ScenarioError(pair + " overlap at their targets");
      }
    }
  }
}

namespace {

Point2 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ScenarioError("expected a point [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polygon2 polygon_from_json(const nlohmann::json& j) {
  Polygon2 poly;
  for (const auto& p : j) {
    poly.vertices.push_back(point_from_json(p));
  }
  return poly;
}

nlohmann::json polygon_to_json(const Polygon2& poly) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : poly.vertices) {
    out.push_back({p.x, p.y});
  }
  return out;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.workspace = polygon_from_json(j.at("workspace"));
    for (const auto& obstacle : j.value("obstacles", nlohmann::json::array())) {
      s.obstacles.push_back(polygon_from_json(obstacle));
    }
    for (const auto& r : j.at("robots")) {
      s.robots.push_back({Disc{r.at("radius").get<double>()},
                          point_from_json(r.at("start")),
                          point_from_json(r.at("target"))});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("malformed scenario JSON: ") + e.what());
  }
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json obstacles = nlohmann::json::array();
  for (const auto& o : s.obstacles) {
    obstacles.push_back(polygon_to_json(o));
  }
  nlohmann::json robots = nlohmann::json::array();
  for (const auto& r : s.robots) {
    robots.push_back({{"radius", r.disc.radius},
                      {"start", {r.start.x, r.start.y}},
                      {"target", {r.target.x, r.target.y}}});
  }
  return {{"name", s.name},
          {"workspace", polygon_to_json(s.workspace)},
          {"obstacles", std::move(obstacles)},
          {"robots", std::move(robots)}};
}

nlohmann::json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file,
                     const nlohmann::json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + file.string());
  }
  out << j.dump(2) << '\n';
}

Scenario load_scenario(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = read_json_file(file);
  } catch (const std::runtime_error& e) {
    throw ScenarioError(e.what());
  }
  Scenario s = scenario_from_json(j);
  validate_scenario(s);
  return s;
}

}  // namespace mrdrrt
