#include "mrdrrt/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <nlohmann/json.hpp>

namespace mrdrrt {

std::size_t ExplicitComposite::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency) {
    twice += adj.size();
  }
  return twice / 2;
}

std::optional<std::size_t> ExplicitComposite::find(
    const CompositeVertex& c) const {
  const auto it = index.find(c);
  if (it == index.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool ExplicitComposite::has_edge(const CompositeVertex& a,
                                 const CompositeVertex& b) const {
  const auto ia = find(a);
  const auto ib = find(b);
  if (!ia || !ib) {
    return false;
  }
  const auto& adj = adjacency[*ia];
  return std::binary_search(adj.begin(), adj.end(), *ib);
}

ExplicitComposite build_explicit_composite(const CompositeRoadmap& graph,
                                           ProductMode mode, std::size_t cap) {
  const std::size_t m = graph.robot_count();
  std::size_t product = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = graph.roadmap(i).size();
    if (n == 0 || product > cap / n) {
      throw OracleError("explicit composite exceeds the vertex cap of " +
                        std::to_string(cap));
    }
    product *= n;
  }

  ExplicitComposite g;
  g.mode = mode;
  CompositeVertex c{std::vector<VertexId>(m, 0)};
  for (std::size_t code = 0; code < product; ++code) {
    std::size_t rest = code;
    // Robot 0 is the most significant digit, so vertices come out sorted.
    for (std::size_t i = m; i-- > 0;) {
      const std::size_t n = graph.roadmap(i).size();
      c.ids[i] = static_cast<VertexId>(rest % n);
      rest /= n;
    }
    if (graph.vertex_valid(c)) {
      g.index.emplace(c, g.vertices.size());
      g.vertices.push_back(c);
    }
  }
  g.adjacency.assign(g.vertices.size(), {});

  // Neighbour candidates: each robot stays or moves along one roadmap edge.
  for (std::size_t a = 0; a < g.vertices.size(); ++a) {
    const CompositeVertex& from = g.vertices[a];
    std::vector<std::vector<VertexId>> choices(m);
    for (std::size_t i = 0; i < m; ++i) {
      choices[i].push_back(from.ids[i]);
      for (const VertexId u : graph.roadmap(i).neighbors(from.ids[i])) {
        choices[i].push_back(u);
      }
    }
    std::vector<std::size_t> digit(m, 0);
    while (true) {
      std::size_t i = 0;
      while (i < m && ++digit[i] == choices[i].size()) {
        digit[i] = 0;
        ++i;
      }
      if (i == m) {
        break;
      }
      CompositeVertex to{std::vector<VertexId>(m)};
      for (std::size_t r = 0; r < m; ++r) {
        to.ids[r] = choices[r][digit[r]];
      }
      const auto b = g.find(to);
      if (!b || *b <= a) {
        continue;
      }
      if (graph.edge_valid(from, to, mode)) {
        g.adjacency[a].push_back(*b);
        g.adjacency[*b].push_back(a);
      }
    }
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
  }
  return g;
}

std::optional<CompositePath> explicit_search(const ExplicitComposite& g,
                                             const CompositeVertex& start,
                                             const CompositeVertex& target) {
  const auto s = g.find(start);
  const auto t = g.find(target);
  if (!s || !t) {
    throw std::invalid_argument("explicit_search: endpoint not in graph");
  }
  const std::size_t none = g.size();
  std::vector<std::size_t> parent(g.size(), none);
  std::deque<std::size_t> frontier{*s};
  parent[*s] = *s;
  while (!frontier.empty() && parent[*t] == none) {
    const std::size_t v = frontier.front();
    frontier.pop_front();
    for (const std::size_t u : g.adjacency[v]) {
      if (parent[u] == none) {
        parent[u] = v;
        frontier.push_back(u);
      }
    }
  }
  if (parent[*t] == none) {
    return std::nullopt;
  }
  std::vector<std::size_t> chain{*t};
  while (chain.back() != *s) {
    chain.push_back(parent[chain.back()]);
  }
  std::reverse(chain.begin(), chain.end());

  CompositePath path;
  for (const std::size_t v : chain) {
    path.vertices.push_back(g.vertices[v]);
  }
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    if (g.mode == ProductMode::cartesian) {
      const auto& a = path.vertices[k].ids;
      const auto& b = path.vertices[k + 1].ids;
      const auto mover = static_cast<std::size_t>(
          std::mismatch(a.begin(), a.end(), b.begin()).first - a.begin());
      path.steps.push_back(Step::single(mover));
    } else {
      path.steps.push_back(Step::simultaneous());
    }
  }
  return path;
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    list.push_back({{"step", v.step},
                    {"kind", v.kind},
                    {"robots", v.robots},
                    {"message", v.message}});
  }
  return {{"ok", ok()}, {"violations", std::move(list)}};
}

namespace {

// Do two discs with combined reach `reach` touch at any t in [0,1] while
// moving linearly? Solved from the roots of |r0 + t*dr|^2 = reach^2 rather
// than by clamping the minimiser.
bool linear_motions_touch(Point2 a1, Point2 b1, Point2 a2, Point2 b2,
                          double reach) {
  const double r0x = a1.x - a2.x;
  const double r0y = a1.y - a2.y;
  const double drx = (b1.x - a1.x) - (b2.x - a2.x);
  const double dry = (b1.y - a1.y) - (b2.y - a2.y);
  const double qa = drx * drx + dry * dry;
  const double qb = r0x * drx + r0y * dry;
  const double qc = r0x * r0x + r0y * r0y - reach * reach;
  if (qc <= 0.0) {
    return true;  // touching at t = 0
  }
  if (qa == 0.0) {
    return false;  // constant separation
  }
  const double end = qa + 2.0 * qb + qc;  // value at t = 1
  if (end <= 0.0) {
    return true;
  }
  // Interior contact needs a real root inside (0,1): discriminant >= 0 and the
  // parabola's vertex -qb/qa inside the interval.
  const double disc = qb * qb - qa * qc;
  return disc >= 0.0 && qb < 0.0 && -qb < qa;
}

std::string robot_label(std::size_t i) { return "robot " + std::to_string(i); }

}  // namespace

ValidationReport validate_path(const Scenario& scenario,
                               std::span<const Roadmap> roadmaps,
                               const CompositePath& path) {
  ValidationReport report;
  auto flag = [&](std::size_t step, std::string kind,
                  std::vector<std::size_t> robots, std::string message) {
    report.violations.push_back(
        {step, std::move(kind), std::move(robots), std::move(message)});
  };

  const std::size_t m = scenario.robot_count();
  if (roadmaps.size() != m) {
    flag(0, "roadmap_count", {}, "expected one roadmap per robot");
    return report;
  }
  if (path.vertices.empty()) {
    flag(0, "empty_path", {}, "path has no vertices");
    return report;
  }
  if (path.steps.size() + 1 != path.vertices.size()) {
    flag(0, "annotation_count", {},
         "expected one step annotation per consecutive vertex pair");
    return report;
  }
  for (std::size_t k = 0; k < path.vertices.size(); ++k) {
    const auto& ids = path.vertices[k].ids;
    const std::size_t step = k == 0 ? 0 : k - 1;
    if (ids.size() != m) {
      flag(step, "malformed_vertex", {}, "vertex has wrong robot count");
      return report;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (ids[i] >= roadmaps[i].size()) {
        flag(step, "malformed_vertex", {i}, "vertex id out of range");
        return report;
      }
    }
  }

  auto pos = [&](std::size_t k, std::size_t i) {
    return roadmaps[i].vertices[path.vertices[k].ids[i]];
  };
  const std::size_t last = path.vertices.size() - 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (pos(0, i) != scenario.robots[i].start) {
      flag(0, "start_mismatch", {i},
           robot_label(i) + " does not begin at its start");
    }
    if (pos(last, i) != scenario.robots[i].target) {
      flag(last == 0 ? 0 : last - 1, "target_mismatch", {i},
           robot_label(i) + " does not end at its target");
    }
  }

  for (std::size_t k = 0; k < last; ++k) {
    const Step& step = path.steps[k];
    std::vector<std::size_t> movers;
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId a = path.vertices[k].ids[i];
      const VertexId b = path.vertices[k + 1].ids[i];
      if (a == b) {
        continue;
      }
      movers.push_back(i);
      const auto& adj = roadmaps[i].adjacency[a];
      if (!std::binary_search(adj.begin(), adj.end(), b)) {
        flag(k, "non_edge", {i},
             robot_label(i) + " jumps between non-adjacent roadmap vertices");
      }
      if (!swept_disc_free(pos(k, i), pos(k + 1, i), scenario.robots[i].disc,
                           scenario.workspace, scenario.obstacles)) {
        flag(k, "obstacle_collision", {i},
             robot_label(i) + " hits the workspace boundary or an obstacle");
      }
    }
    if (step.kind == Step::Kind::single &&
        !(movers.empty() || (movers.size() == 1 && movers[0] == step.mover))) {
      flag(k, "not_single_mover", movers,
           "single-mover step moves robots other than robot " +
               std::to_string(step.mover));
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double reach = scenario.robots[i].disc.radius +
                             scenario.robots[j].disc.radius;
        if (linear_motions_touch(pos(k, i), pos(k + 1, i), pos(k, j),
                                 pos(k + 1, j), reach)) {
          flag(k, "robot_collision", {i, j},
               robot_label(i) + " and " + robot_label(j) + " come into contact");
        }
      }
    }
  }
  if (last == 0) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double reach = scenario.robots[i].disc.radius +
                             scenario.robots[j].disc.radius;
        if (linear_motions_touch(pos(0, i), pos(0, i), pos(0, j), pos(0, j),
                                 reach)) {
          flag(0, "robot_collision", {i, j},
               robot_label(i) + " and " + robot_label(j) + " overlap");
        }
      }
    }
  }
  return report;
}

bool sequential_ordering_exists(const CompositeRoadmap& graph,
                                const CompositeVertex& from,
                                const CompositeVertex& to,
                                const RobotPaths& paths) {
  const std::size_t m = graph.robot_count();
  if (paths.size() != m) {
    throw std::invalid_argument("expected one path per robot");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (paths[i].empty() || paths[i].front() != from.ids[i] ||
        paths[i].back() != to.ids[i]) {
      throw std::invalid_argument("path does not join the endpoints");
    }
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    std::vector<Point2> parked;
    for (std::size_t i = 0; i < m; ++i) {
      parked.push_back(graph.position(from, i));
    }
    bool ok = true;
    for (const std::size_t robot : order) {
      const auto& path = paths[robot];
      for (std::size_t s = 1; ok && s < path.size(); ++s) {
        const Point2 a = graph.roadmap(robot).position(path[s - 1]);
        const Point2 b = graph.roadmap(robot).position(path[s]);
        for (std::size_t j = 0; j < m; ++j) {
          const double reach = graph.disc(robot).radius + graph.disc(j).radius;
          if (j != robot &&
              linear_motions_touch(a, b, parked[j], parked[j], reach)) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        break;
      }
      parked[robot] = graph.roadmap(robot).position(path.back());
    }
    if (ok) {
      return true;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace mrdrrt
