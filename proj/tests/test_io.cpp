#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mrdrrt/plan_io.hpp"
#include "mrdrrt/planner.hpp"
#include "mrdrrt/svg.hpp"
#include "support.hpp"

using namespace mrdrrt;
using nlohmann::json;
using testing::rect;

namespace {

const char* kTwoRooms = R"({
  "name": "two-rooms",
  "workspace": [[0,0],[10,0],[10,10],[0,10]],
  "obstacles": [[[4.8,0],[5.2,0],[5.2,4],[4.8,4]], [[4.8,6],[5.2,6],[5.2,10],[4.8,10]]],
  "robots": [
    {"radius": 0.4, "start": [2,5], "target": [8,5]},
    {"radius": 0.4, "start": [8,5], "target": [2,5]}
  ]
})";

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mrdrrt_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct Solved {
  Scenario scenario;
  std::vector<Roadmap> roadmaps;
  PlanDocument plan;
  CompositePath path;
};

Solved solve_two_rooms(std::uint64_t seed) {
  Solved out;
  out.scenario = scenario_from_json(json::parse(kTwoRooms));
  validate_scenario(out.scenario);
  out.roadmaps = build_roadmaps(out.scenario, 60, 6, seed);
  PlannerOptions options;
  options.drrt.seed = seed;
  const PlanRun run = run_planner(out.scenario, out.roadmaps, options);
  REQUIRE(run.report.success);
  out.path = *run.path;
  out.plan = make_plan_document(out.scenario, out.roadmaps, out.path, seed);
  return out;
}

}  // namespace

TEST_CASE("scenario JSON") {
  const Scenario s = scenario_from_json(json::parse(kTwoRooms));
  CHECK(s.name == "two-rooms");
  CHECK(s.robot_count() == 2);
  CHECK(s.obstacles.size() == 2);
  CHECK(s.robots[1].target == Point2{2, 5});
  CHECK_NOTHROW(validate_scenario(s));
  const Scenario back = scenario_from_json(scenario_to_json(s));
  CHECK(scenario_to_json(back) == scenario_to_json(s));
  CHECK(back.workspace.vertices == s.workspace.vertices);

  SUBCASE("invalid scenarios") {
    Scenario bad = s;
    bad.robots[0].start = {5, 2};
    CHECK_THROWS_AS(validate_scenario(bad), ScenarioError);
    bad = s;
    bad.robots[1].start = {2.5, 5};
    CHECK_THROWS_AS(validate_scenario(bad), ScenarioError);
    bad = s;
    bad.robots[1].target = {7.5, 5};
    CHECK_THROWS_AS(validate_scenario(bad), ScenarioError);
    bad = s;
    bad.robots.clear();
    CHECK_THROWS_AS(validate_scenario(bad), ScenarioError);
    bad = s;
    std::reverse(bad.workspace.vertices.begin(), bad.workspace.vertices.end());
    CHECK_THROWS_AS(validate_scenario(bad), ScenarioError);
  }
  SUBCASE("malformed documents") {
    auto j = json::parse(kTwoRooms);
    j["robots"][0].erase("radius");
    CHECK_THROWS(scenario_from_json(j));
    auto k = json::parse(kTwoRooms);
    k["workspace"][0] = {1};
    CHECK_THROWS(scenario_from_json(k));
  }
  SUBCASE("files") {
    const auto dir = temp_dir("scenario");
    write_json_file(dir / "s.json", scenario_to_json(s));
    CHECK(scenario_to_json(load_scenario(dir / "s.json")) == scenario_to_json(s));
    CHECK_THROWS(load_scenario(dir / "missing.json"));
  }
}

TEST_CASE("plan JSON") {
  const Solved solved = solve_two_rooms(1);
  const json j = plan_to_json(solved.plan);
  CHECK(j.at("scenario") == "two-rooms");
  CHECK(j.at("seed") == 1);
  for (const auto& step : j.at("steps")) {
    const std::string kind = step.at("kind");
    CHECK((kind == "single" || kind == "simultaneous"));
    CHECK(step.contains("mover") == (kind == "single"));
    CHECK(step.at("targets").size() == 2);
  }
  CHECK(plan_from_json(j) == solved.plan);
  CHECK(plan_from_json(json::parse(j.dump(2))) == solved.plan);
  CHECK(plan_to_json(plan_from_json(j)).dump() == j.dump());

  SUBCASE("decoding recovers the path") {
    const DecodedPlan d = decode_plan(solved.plan, solved.scenario, solved.roadmaps);
    REQUIRE(d.path.has_value());
    CHECK(*d.path == solved.path);
    CHECK(validate_plan(solved.plan, solved.scenario, solved.roadmaps).ok());
  }
  SUBCASE("tampered waypoint") {
    PlanDocument bad = solved.plan;
    bad.steps[0].targets[0].x += 0.01;
    const auto r = validate_plan(bad, solved.scenario, solved.roadmaps);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().step == 0);
    CHECK(r.violations.front().kind == "off_roadmap");
  }
  SUBCASE("waypoint moved to another roadmap vertex") {
    PlanDocument bad = solved.plan;
    const std::size_t last = bad.steps.size() - 1;
    bad.steps[last].targets[0] = solved.roadmaps[0].position(solved.roadmaps[0].start_id);
    const auto r = validate_plan(bad, solved.scenario, solved.roadmaps);
    CHECK_FALSE(r.ok());
  }
  SUBCASE("empty plan with distinct endpoints") {
    PlanDocument empty = solved.plan;
    empty.steps.clear();
    const auto r = validate_plan(empty, solved.scenario, solved.roadmaps);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == "target_mismatch");
  }
  SUBCASE("malformed plan documents") {
    json bad = j;
    bad["steps"][0]["kind"] = "teleport";
    CHECK_THROWS(plan_from_json(bad));
    json no_mover = j;
    no_mover["steps"][0] = {{"kind", "single"}, {"targets", j["steps"][0]["targets"]}};
    CHECK_THROWS(plan_from_json(no_mover));
  }
}

TEST_CASE("start equal to target gives an empty-motion plan") {
  Scenario s = scenario_from_json(json::parse(kTwoRooms));
  s.robots[0].target = s.robots[0].start;
  s.robots[1].target = s.robots[1].start;
  const auto maps = build_roadmaps(s, 30, 5, 0);
  const PlanRun run = run_planner(s, maps, PlannerOptions{});
  REQUIRE(run.report.success);
  CHECK(run.report.path_steps == 0);
  const PlanDocument doc = make_plan_document(s, maps, *run.path, 0);
  CHECK(doc.steps.empty());
  CHECK(validate_plan(doc, s, maps).ok());
}

TEST_CASE("run report") {
  RunReport r;
  r.scenario = "x";
  r.seed = 3;
  r.success = true;
  r.status = "success";
  r.iterations = 2;
  r.visited = 10;
  r.path_steps = 4;
  r.expand_ms = 1.6;
  r.connect_ms = 0.4;
  r.roadmap_ms = 12.2;
  r.total_ms = 2.0;
  const json j = r.to_json();
  CHECK(j.at("expand_ms") == 2);
  CHECK(j.at("connect_ms") == 0);
  CHECK(j.at("roadmap_ms") == 12);
  CHECK(j.at("expand_ms").is_number_integer());
  CHECK(j.at("visited") == 10);
  CHECK(j.at("success") == true);
}

TEST_CASE("svg rendering") {
  const Solved solved = solve_two_rooms(2);
  const std::string map_only = render_svg(solved.scenario);
  const std::string with_plan = render_svg(solved.scenario, &solved.plan);
  CHECK(map_only.rfind("<?xml", 0) == 0);
  CHECK(map_only.find("version=\"1.1\"") != std::string::npos);
  CHECK(map_only.find("<polyline") == std::string::npos);
  auto count = [](const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) {
      ++n;
    }
    return n;
  };
  CHECK(count(map_only, "<polygon") == 3);
  CHECK(count(with_plan, "<polyline") == 2);
  CHECK(render_svg(solved.scenario, &solved.plan) == with_plan);
  CHECK(with_plan.substr(with_plan.size() - 7) == "</svg>\n");

  Scenario odd = solved.scenario;
  odd.name = "a<b & \"c\"";
  CHECK(render_svg(odd).find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
}

TEST_CASE("bench over a directory") {
  const auto dir = temp_dir("bench");
  Scenario open = scenario_from_json(json::parse(kTwoRooms));
  write_json_file(dir / "b.json", scenario_to_json(open));
  // Start and target on opposite sides of a full wall.
  Scenario walled = open;
  walled.name = "walled";
  walled.obstacles = {rect(4.8, 0, 5.2, 10)};
  write_json_file(dir / "a.json", scenario_to_json(walled));
  std::ofstream(dir / "notes.txt") << "ignored";

  BenchOptions options;
  options.prm_n = 40;
  options.prm_k = 6;
  options.base_seed = 5;
  const auto rows = run_bench(dir, 3, options);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scenario == "two-rooms");
  CHECK(rows[0].successes == 3);
  CHECK(rows[0].success_rate() == 100.0);
  CHECK(rows[0].runs.size() == 3);
  CHECK(rows[0].runs[2].seed == 7);
  CHECK(rows[1].scenario == "walled");
  CHECK(rows[1].successes == 0);
  CHECK(rows[1].runs.front().status == "roadmap_failed");

  const std::string csv = bench_csv(rows, false);
  std::istringstream lines(csv);
  std::string header, first, second, extra;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header ==
        "scenario,seeds,success_rate,mean_visited,mean_expand_ms,mean_connect_ms,"
        "mean_total_ms");
  CHECK(first.rfind("two-rooms,3,100.0,", 0) == 0);
  CHECK(first.substr(first.size() - 9) == ",na,na,na");
  CHECK(second == "walled,3,0.0,na,na,na,na");
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(bench_csv(run_bench(dir, 3, options), false) == csv);
  const std::string timed = bench_csv(rows, true);
  CHECK(timed.find("two-rooms,3,100.0,") != std::string::npos);
  CHECK(timed.find(",na,na,na\ntwo") == std::string::npos);
}
