#include "mrdrrt/roadmap.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "mrdrrt/kd_tree.hpp"

namespace mrdrrt {

std::size_t Roadmap::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency) {
    twice += adj.size();
  }
  return twice / 2;
}

std::span<const VertexId> Roadmap::neighbors(VertexId v) const {
  if (v >= adjacency.size()) {
    throw std::out_of_range("roadmap vertex id " + std::to_string(v) +
                            " out of range");
  }
  return adjacency[v];
}

bool Roadmap::has_edge(VertexId u, VertexId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

const Point2& Roadmap::position(VertexId v) const {
  if (v >= vertices.size()) {
    throw std::out_of_range("roadmap vertex id " + std::to_string(v) +
                            " out of range");
  }
  return vertices[v];
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[std::max(a, b)] = std::min(a, b);
    }
  }

 private:
  std::vector<std::size_t> parent_;
};

std::array<double, 2> as_array(Point2 p) { return {p.x, p.y}; }

// Rebuilds the whole edge set over the current vertex list. Pairs already
// checked in earlier batches are answered from `checked`.
void connect_k_nearest(Roadmap& g, std::size_t k, const Disc& disc,
                       const Polygon2& workspace,
                       std::span<const Polygon2> obstacles,
                       std::set<std::pair<VertexId, VertexId>>& free_pairs,
                       std::set<std::pair<VertexId, VertexId>>& checked) {
  KdTree index(2);
  for (const auto& p : g.vertices) {
    index.insert(as_array(p));
  }
  g.adjacency.assign(g.vertices.size(), {});
  for (VertexId v = 0; v < g.vertices.size(); ++v) {
    const auto query = as_array(g.vertices[v]);
    for (const std::size_t u_index : index.k_nearest(query, k + 1)) {
      const auto u = static_cast<VertexId>(u_index);
      if (u == v) {
        continue;
      }
      const auto key = std::minmax(u, v);
      if (checked.insert(key).second &&
          swept_disc_free(g.vertices[key.first], g.vertices[key.second], disc,
                          workspace, obstacles)) {
        free_pairs.insert(key);
      }
    }
  }
  for (const auto& [a, b] : free_pairs) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

}  // namespace

bool same_component(const Roadmap& g, VertexId a, VertexId b) {
  UnionFind uf(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    for (const VertexId u : g.adjacency[v]) {
      uf.unite(u, v);
    }
  }
  return uf.find(a) == uf.find(b);
}

Roadmap build_roadmap(const RobotSpec& robot, const Polygon2& workspace,
                      std::span<const Polygon2> obstacles,
                      const PrmOptions& options) {
  if (options.n < 2 || options.k < 1) {
    throw std::invalid_argument("build_roadmap: need n >= 2 and k >= 1");
  }
  if (!disc_free_at(robot.start, robot.disc, workspace, obstacles)) {
    throw RoadmapError(RoadmapError::Kind::invalid_endpoint,
                       "start configuration is in collision");
  }
  if (!disc_free_at(robot.target, robot.disc, workspace, obstacles)) {
    throw RoadmapError(RoadmapError::Kind::invalid_endpoint,
                       "target configuration is in collision");
  }

  Roadmap g;
  g.vertices.push_back(robot.start);
  g.start_id = 0;
  if (robot.target == robot.start) {
    g.target_id = 0;
  } else {
    g.vertices.push_back(robot.target);
    g.target_id = 1;
  }

  const Box2 box = bounding_box(workspace);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> sample_x(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> sample_y(box.lo.y, box.hi.y);
  const std::size_t attempts_per_sample = 10000;

  std::set<std::pair<VertexId, VertexId>> free_pairs;
  std::set<std::pair<VertexId, VertexId>> checked;
  for (std::size_t batch = 0; batch < options.max_batches; ++batch) {
    const std::size_t wanted = (batch + 1) * options.n;
    std::size_t attempts = 0;
    while (g.vertices.size() < wanted) {
      if (++attempts > attempts_per_sample * options.n) {
        throw RoadmapError(RoadmapError::Kind::sampling_exhausted,
                           "rejection sampling found too few free samples");
      }
      const Point2 p{sample_x(rng), sample_y(rng)};
      if (!disc_free_at(p, robot.disc, workspace, obstacles)) {
        continue;
      }
      if (std::find(g.vertices.begin(), g.vertices.end(), p) !=
          g.vertices.end()) {
        continue;
      }
      g.vertices.push_back(p);
    }
    connect_k_nearest(g, options.k, robot.disc, workspace, obstacles,
                      free_pairs, checked);
    if (same_component(g, g.start_id, g.target_id)) {
      return g;
    }
  }
  throw RoadmapError(RoadmapError::Kind::disconnected,
                     "roadmap disconnected: start and target not connected "
                     "after " +
                         std::to_string(options.max_batches) + " batches");
}

std::optional<std::vector<VertexId>> shortest_path(const Roadmap& g,
                                                   VertexId from, VertexId to) {
  (void)g.position(from);
  (void)g.position(to);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.size(), inf);
  std::vector<VertexId> parent(g.size(), from);
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[from] = 0.0;
  open.emplace(0.0, from);
  while (!open.empty()) {
    const auto [d, v] = open.top();
    open.pop();
    if (d > dist[v]) {
      continue;
    }
    if (v == to) {
      break;
    }
    for (const VertexId u : g.adjacency[v]) {
      const double nd = d + distance(g.vertices[v], g.vertices[u]);
      if (nd < dist[u]) {
        dist[u] = nd;
        parent[u] = v;
        open.emplace(nd, u);
      }
    }
  }
  if (dist[to] == inf) {
    return std::nullopt;
  }
  std::vector<VertexId> path{to};
  while (path.back() != from) {
    path.push_back(parent[path.back()]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

nlohmann::json roadmap_to_json(const Roadmap& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& p : g.vertices) {
    vertices.push_back({p.x, p.y});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (VertexId v = 0; v < g.size(); ++v) {
    for (const VertexId u : g.adjacency[v]) {
      if (v < u) {
        edges.push_back({v, u});
      }
    }
  }
  return {{"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"start", g.start_id},
          {"target", g.target_id}};
}

Roadmap roadmap_from_json(const nlohmann::json& j) {
  Roadmap g;
  for (const auto& v : j.at("vertices")) {
    if (v.size() != 2) {
      throw std::invalid_argument("roadmap vertex must be [x, y]");
    }
    g.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  g.adjacency.assign(g.vertices.size(), {});
  for (const auto& e : j.at("edges")) {
    const auto u = e.at(0).get<VertexId>();
    const auto v = e.at(1).get<VertexId>();
    if (u >= g.size() || v >= g.size() || u == v) {
      throw std::invalid_argument("roadmap edge [" + std::to_string(u) + ", " +
                                  std::to_string(v) + "] is invalid");
    }
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  g.start_id = j.at("start").get<VertexId>();
  g.target_id = j.at("target").get<VertexId>();
  if (g.start_id >= g.size() || g.target_id >= g.size()) {
    throw std::invalid_argument("roadmap start/target id out of range");
  }
  return g;
}

}  // namespace mrdrrt
