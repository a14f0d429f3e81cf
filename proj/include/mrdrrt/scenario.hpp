#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mrdrrt/geometry.hpp"
#include "mrdrrt/roadmap.hpp"

namespace mrdrrt {

/// Workspace, obstacles and one (radius, start, target) per robot.
struct Scenario {
  std::string name;
  Polygon2 workspace;
  std::vector<Polygon2> obstacles;
  std::vector<RobotSpec> robots;

  std::size_t robot_count() const { return robots.size(); }
  std::vector<Disc> discs() const;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ScenarioError unless every polygon and disc is well formed, every
/// start and target is individually free, and the start tuple and target tuple
/// are each pairwise clear.
void validate_scenario(const Scenario& s);

/// {name, workspace:[[x,y],...], obstacles:[[[x,y],...],...],
///  robots:[{radius, start:[x,y], target:[x,y]},...]}
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Parses and validates. Throws ScenarioError on I/O or content problems.
Scenario load_scenario(const std::filesystem::path& file);

nlohmann::json read_json_file(const std::filesystem::path& file);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& file,
                     const nlohmann::json& j);

}  // namespace mrdrrt
