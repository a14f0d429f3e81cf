#include "mrdrrt/connector.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace mrdrrt {

bool PriorityDigraph::has_edge(std::size_t after, std::size_t before) const {
  return std::find(edges.begin(), edges.end(), std::pair{after, before}) !=
         edges.end();
}

std::optional<std::vector<std::size_t>> PriorityDigraph::topological_order()
    const {
  std::vector<std::size_t> waiting(robot_count, 0);
  std::vector<std::vector<std::size_t>> unblocks(robot_count);
  for (const auto& [after, before] : edges) {
    ++waiting[after];
    unblocks[before].push_back(after);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t i = 0; i < robot_count; ++i) {
    if (waiting[i] == 0) {
      ready.push(i);
    }
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (const std::size_t j : unblocks[i]) {
      if (--waiting[j] == 0) {
        ready.push(j);
      }
    }
  }
  if (order.size() != robot_count) {
    return std::nullopt;
  }
  return order;
}

namespace {

void check_paths(const CompositeRoadmap& graph, const CompositeVertex& from,
                 const CompositeVertex& to, const RobotPaths& paths) {
  if (paths.size() != graph.robot_count()) {
    throw std::invalid_argument("expected one path per robot");
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    if (p.empty() || p.front() != from.ids[i] || p.back() != to.ids[i]) {
      throw std::invalid_argument("path of robot " + std::to_string(i) +
                                  " does not join its endpoints");
    }
    for (std::size_t s = 0; s + 1 < p.size(); ++s) {
      if (!graph.roadmap(i).has_edge(p[s], p[s + 1])) {
        throw std::invalid_argument("path of robot " + std::to_string(i) +
                                    " leaves its roadmap");
      }
    }
  }
}

bool sweep_hits(const CompositeRoadmap& graph, std::size_t mover,
                const std::vector<VertexId>& path, std::size_t parked,
                Point2 parked_at) {
  const Roadmap& g = graph.roadmap(mover);
  const Disc& d = graph.disc(mover);
  const Disc& other = graph.disc(parked);
  if (path.size() == 1) {
    const Point2 p = g.position(path.front());
    return !moving_discs_clear(p, p, d, parked_at, parked_at, other);
  }
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    if (!moving_discs_clear(g.position(path[s]), g.position(path[s + 1]), d,
                            parked_at, parked_at, other)) {
      return true;
    }
  }
  return false;
}

}  // namespace

PriorityDigraph build_priority_digraph(const CompositeRoadmap& graph,
                                       const CompositeVertex& from,
                                       const CompositeVertex& to,
                                       const RobotPaths& paths) {
  check_paths(graph, from, to, paths);
  PriorityDigraph digraph{graph.robot_count(), {}};
  for (std::size_t i = 0; i < graph.robot_count(); ++i) {
    for (std::size_t j = 0; j < graph.robot_count(); ++j) {
      if (i == j) {
        continue;
      }
      if (sweep_hits(graph, i, paths[i], j, graph.position(from, j)) &&
          !digraph.has_edge(i, j)) {
        digraph.edges.emplace_back(i, j);
      }
      if (sweep_hits(graph, i, paths[i], j, graph.position(to, j)) &&
          !digraph.has_edge(j, i)) {
        digraph.edges.emplace_back(j, i);
      }
    }
  }
  return digraph;
}

std::optional<CompositePath> local_connect(const CompositeRoadmap& graph,
                                           const CompositeVertex& from,
                                           const CompositeVertex& to) {
  if (from == to) {
    return CompositePath{{from}, {}};
  }
  RobotPaths paths;
  for (std::size_t i = 0; i < graph.robot_count(); ++i) {
    auto p = shortest_path(graph.roadmap(i), from.ids[i], to.ids[i]);
    if (!p) {
      return std::nullopt;
    }
    paths.push_back(std::move(*p));
  }
  return local_connect(graph, from, to, paths);
}

std::optional<CompositePath> local_connect(const CompositeRoadmap& graph,
                                           const CompositeVertex& from,
                                           const CompositeVertex& to,
                                           const RobotPaths& paths) {
  const PriorityDigraph digraph = build_priority_digraph(graph, from, to, paths);
  const auto order = digraph.topological_order();
  if (!order) {
    return std::nullopt;
  }
  CompositePath out{{from}, {}};
  CompositeVertex current = from;
  for (const std::size_t robot : *order) {
    const auto& path = paths[robot];
    for (std::size_t s = 1; s < path.size(); ++s) {
      const Point2 a = graph.roadmap(robot).position(path[s - 1]);
      const Point2 b = graph.roadmap(robot).position(path[s]);
      for (std::size_t j = 0; j < graph.robot_count(); ++j) {
        if (j == robot) {
          continue;
        }
        const Point2 p = graph.position(current, j);
        if (!moving_discs_clear(a, b, graph.disc(robot), p, p, graph.disc(j))) {
          return std::nullopt;
        }
      }
      current.ids[robot] = path[s];
      out.vertices.push_back(current);
      out.steps.push_back(Step::single(robot));
    }
  }
  return out;
}

}  // namespace mrdrrt
