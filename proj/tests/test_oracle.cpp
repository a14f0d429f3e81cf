#include <doctest.h>

#include <nlohmann/json.hpp>

#include "mrdrrt/oracle.hpp"
#include "mrdrrt/planner.hpp"
#include "support.hpp"

using namespace mrdrrt;
using testing::make_roadmap;
using testing::rect;

namespace {

const Box2 kBox{{0, 0}, {10, 10}};

bool has_kind(const ValidationReport& r, const std::string& kind, std::size_t step) {
  for (const auto& v : r.violations) {
    if (v.kind == kind && v.step == step) {
      return true;
    }
  }
  return false;
}

// Two bars joined by a one-disc-wide shaft. Robots at opposite ends swap,
// passing each other by using the spare end of a bar.
testing::CorridorSwap h_corridor() {
  const Polygon2 ws{{{0, 0}, {10, 0}, {10, 1}, {5.6, 1}, {5.6, 4}, {10, 4}, {10, 5},
                     {0, 5}, {0, 4}, {4.4, 4}, {4.4, 1}, {0, 1}}};
  // 0,1: ends of the bottom bar; 2,3: ends of the top bar; 4-7: the shaft.
  const std::vector<Point2> pts = {{1, 0.5}, {9, 0.5}, {1, 4.5}, {9, 4.5},
                                   {5, 0.5}, {5, 1.8}, {5, 3.2}, {5, 4.5}};
  const std::vector<std::pair<VertexId, VertexId>> edges = {
      {0, 4}, {4, 1}, {4, 5}, {5, 6}, {6, 7}, {2, 7}, {7, 3}};
  testing::CorridorSwap out;
  out.roadmaps.push_back(make_roadmap(pts, edges, 0, 3));
  out.roadmaps.push_back(make_roadmap(pts, edges, 3, 0));
  out.scenario = testing::scenario_for(ws, {}, out.roadmaps, {0.4, 0.4});
  return out;
}

}  // namespace

TEST_CASE("single robot product mirrors its roadmap") {
  const Roadmap a = make_roadmap({{1, 1}, {4, 1}, {4, 4}, {8, 8}}, {{0, 1}, {1, 2}, {0, 2}}, 0, 2);
  const CompositeRoadmap g({a}, {Disc{0.5}}, kBox);
  for (const ProductMode mode : {ProductMode::tensor, ProductMode::cartesian}) {
    const auto ex = build_explicit_composite(g, mode);
    CHECK(ex.size() == a.size());
    CHECK(ex.edge_count() == a.edge_count());
    for (VertexId u = 0; u < a.size(); ++u) {
      for (VertexId v = 0; v < a.size(); ++v) {
        CHECK(ex.has_edge({{u}}, {{v}}) == a.has_edge(u, v));
      }
    }
  }
}

TEST_CASE("2x2 product of distant single edges") {
  const Roadmap a = make_roadmap({{1, 1}, {4, 1}}, {{0, 1}}, 0, 1);
  const Roadmap b = make_roadmap({{1, 8}, {4, 8}}, {{0, 1}}, 0, 1);
  const CompositeRoadmap g({a, b}, {Disc{0.5}, Disc{0.5}}, kBox);
  // Hand enumeration: 4 vertices. Tensor (with stays): every pair differs in
  // at least one robot along its edge, so K4 = 6 edges. Cartesian: the 4-cycle.
  const auto tensor = build_explicit_composite(g, ProductMode::tensor);
  CHECK(tensor.size() == 4);
  CHECK(tensor.edge_count() == 6);
  CHECK(tensor.has_edge({{0, 0}}, {{1, 1}}));
  CHECK(tensor.has_edge({{0, 1}}, {{1, 0}}));
  const auto cart = build_explicit_composite(g, ProductMode::cartesian);
  CHECK(cart.size() == 4);
  CHECK(cart.edge_count() == 4);
  CHECK_FALSE(cart.has_edge({{0, 0}}, {{1, 1}}));
  CHECK(cart.has_edge({{0, 0}}, {{0, 1}}));
  CHECK(tensor.vertices.front() == CompositeVertex{{0, 0}});
  CHECK(tensor.vertices.back() == CompositeVertex{{1, 1}});
}

TEST_CASE("robots that always overlap give no vertices") {
  const Roadmap a = make_roadmap({{5, 5}, {5.5, 5}}, {{0, 1}}, 0, 1);
  const CompositeRoadmap g({a, a}, {Disc{1}, Disc{1}}, kBox);
  const auto ex = build_explicit_composite(g, ProductMode::tensor);
  CHECK(ex.size() == 0);
  CHECK(ex.edge_count() == 0);
}

TEST_CASE("vertex cap") {
  const Roadmap a = make_roadmap({{1, 1}, {4, 1}, {7, 1}}, {{0, 1}}, 0, 1);
  const CompositeRoadmap g({a, a, a}, {Disc{0.1}, Disc{0.1}, Disc{0.1}}, kBox);
  CHECK_THROWS_AS(build_explicit_composite(g, ProductMode::tensor, 26), OracleError);
  CHECK_NOTHROW(build_explicit_composite(g, ProductMode::tensor, 27));
}

TEST_CASE("explicit_search") {
  SUBCASE("start equals target") {
    const Roadmap a = make_roadmap({{1, 1}, {4, 1}}, {{0, 1}}, 0, 0);
    const CompositeRoadmap g({a}, {Disc{0.5}}, kBox);
    const auto ex = build_explicit_composite(g, ProductMode::tensor);
    const auto p = explicit_search(ex, {{0}}, {{0}});
    REQUIRE(p.has_value());
    CHECK(p->vertices == std::vector<CompositeVertex>{{{0}}});
  }
  SUBCASE("disconnected") {
    const Roadmap a = make_roadmap({{1, 1}, {4, 1}}, {}, 0, 1);
    const CompositeRoadmap g({a}, {Disc{0.5}}, kBox);
    const auto ex = build_explicit_composite(g, ProductMode::tensor);
    CHECK_FALSE(explicit_search(ex, {{0}}, {{1}}).has_value());
    CHECK_THROWS_AS(explicit_search(ex, {{0}}, {{5}}), std::invalid_argument);
  }
  SUBCASE("swap through an H-shaped corridor") {
    const auto inst = h_corridor();
    const CompositeRoadmap g = inst.graph();
    for (const ProductMode mode : {ProductMode::tensor, ProductMode::cartesian}) {
      const auto ex = build_explicit_composite(g, mode);
      const auto p = explicit_search(ex, g.start(), g.target());
      REQUIRE(p.has_value());
      CHECK(validate_path(inst.scenario, inst.roadmaps, *p).ok());
      for (std::size_t k = 0; k < p->step_count(); ++k) {
        CHECK(g.edge_valid(p->vertices[k], p->vertices[k + 1], mode));
        if (mode == ProductMode::cartesian) {
          CHECK(p->steps[k].kind == Step::Kind::single);
        }
      }
    }
    // The head-on shortest paths cross in the shaft.
    CHECK_FALSE(local_connect(g, g.start(), g.target()).has_value());
  }
}

TEST_CASE("validate_path") {
  const auto inst = h_corridor();
  const CompositeRoadmap g = inst.graph();
  const auto ex = build_explicit_composite(g, ProductMode::tensor);
  const CompositePath good = *explicit_search(ex, g.start(), g.target());
  REQUIRE(validate_path(inst.scenario, inst.roadmaps, good).ok());

  SUBCASE("teleport") {
    CompositePath bad = good;
    // Robot 0 jumps from its start straight to the top-right end.
    bad.vertices[1].ids[0] = 3;
    const auto r = validate_path(inst.scenario, inst.roadmaps, bad);
    CHECK_FALSE(r.ok());
    CHECK(has_kind(r, "non_edge", 0));
    CHECK(r.to_json().at("ok") == false);
    CHECK(r.to_json().at("violations").at(0).at("step") == 0);
  }
  SUBCASE("endpoints") {
    CompositePath truncated = good;
    truncated.vertices.pop_back();
    truncated.steps.pop_back();
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, truncated),
                   "target_mismatch", truncated.step_count() - 1));
    const CompositePath only_start{{g.start()}, {}};
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, only_start),
                   "target_mismatch", 0));
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, CompositePath{}),
                   "empty_path", 0));
  }
  SUBCASE("head-on swap in one step") {
    const auto straight = testing::corridor_swap(false);
    // Both robots move along the same edge toward each other.
    CompositePath p{{{{2, 3}}, {{3, 2}}}, {Step::simultaneous()}};
    auto s = straight.scenario;
    s.robots[0].start = straight.roadmaps[0].position(2);
    s.robots[1].start = straight.roadmaps[1].position(3);
    s.robots[0].target = straight.roadmaps[0].position(3);
    s.robots[1].target = straight.roadmaps[1].position(2);
    const auto r = validate_path(s, straight.roadmaps, p);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == "robot_collision");
    CHECK(r.violations[0].robots == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("wrong single-mover annotation") {
    CompositePath bad = good;
    std::size_t k = 0;
    while (bad.vertices[k].ids[0] == bad.vertices[k + 1].ids[0]) {
      ++k;
    }
    bad.steps[k] = Step::single(1);
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, bad), "not_single_mover", k));
  }
  SUBCASE("annotation count and malformed vertices") {
    CompositePath bad = good;
    bad.steps.pop_back();
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, bad), "annotation_count", 0));
    CompositePath wide = good;
    wide.vertices[2].ids.push_back(0);
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, wide), "malformed_vertex", 1));
    CompositePath out_of_range = good;
    out_of_range.vertices[1].ids[1] = 99;
    CHECK(has_kind(validate_path(inst.scenario, inst.roadmaps, out_of_range),
                   "malformed_vertex", 0));
  }
  SUBCASE("roadmap through an obstacle") {
    auto blocked = inst.scenario;
    blocked.obstacles = {rect(4.8, 2.3, 5.2, 2.7)};
    const auto r = validate_path(blocked, inst.roadmaps, good);
    CHECK_FALSE(r.ok());
    CHECK(r.violations.front().kind == "obstacle_collision");
  }
}

TEST_CASE("sequential orderings") {
  const auto straight = testing::corridor_swap(false);
  const CompositeRoadmap g = straight.graph();
  CHECK_FALSE(sequential_ordering_exists(g, g.start(), g.target(),
                                         {{0, 2, 3, 4, 1}, {1, 4, 3, 2, 0}}));
  const auto pocket = testing::corridor_swap(true);
  const CompositeRoadmap gp = pocket.graph();
  CHECK(sequential_ordering_exists(gp, {{5, 1}}, gp.target(), {{5, 3, 4, 1}, {1, 4, 3, 2, 0}}));
  CHECK_THROWS_AS(sequential_ordering_exists(gp, {{5, 1}}, gp.target(), {{5, 3, 4, 1}}),
                  std::invalid_argument);
}

TEST_CASE("validator flags contact only when clearances are violated") {
  // Robot 1 parks beside robot 0's straight run at varying offsets.
  const Roadmap a = make_roadmap({{1, 5}, {9, 5}}, {{0, 1}}, 0, 1);
  for (const double gap : {0.79, 0.8, 0.81}) {
    const Roadmap b = make_roadmap({{5, 5 + gap}, {5, 9}}, {{0, 1}}, 0, 0);
    const std::vector<Roadmap> maps = {a, b};
    const auto s = testing::scenario_for(rect(0, 0, 10, 10), {}, maps, {0.4, 0.4});
    const CompositePath p{{{{0, 0}}, {{1, 0}}}, {Step::single(0)}};
    CHECK(validate_path(s, maps, p).ok() == (gap > 0.8));
  }
}
