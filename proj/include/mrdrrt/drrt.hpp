#pragma once

// Discrete RRT over an implicitly represented, geometrically embedded graph.
//
// The tree only ever contains vertices and edges of the searched graph. Growth
// is driven by uniform samples in the embedding box: the nearest tree node is
// extended along the graph edge chosen by the direction oracle. After each
// round of expansion a local connector is tried from the K tree nodes nearest
// the target.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrdrrt/embedded_graph.hpp"
#include "mrdrrt/kd_tree.hpp"
#include "mrdrrt/path.hpp"

namespace mrdrrt {

/// Rooted search tree. Node 0 is the root; parents precede children; every
/// vertex appears at most once.
template <class Vertex, class Hash>
class DrrtTree {
 public:
  struct Node {
    Vertex vertex;
    std::optional<std::size_t> parent;
  };

  DrrtTree(Vertex root, std::span<const double> root_point)
      : index_(root_point.size()) {
    insert(std::move(root), root_point, std::nullopt);
  }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  const Vertex& vertex(std::size_t i) const { return nodes_.at(i).vertex; }
  std::span<const double> point(std::size_t i) const { return index_.point(i); }

  bool contains(const Vertex& v) const { return lookup_.contains(v); }
  std::optional<std::size_t> find(const Vertex& v) const {
    const auto it = lookup_.find(v);
    if (it == lookup_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  /// Precondition: !contains(v), parent < size().
  std::size_t add(Vertex v, std::span<const double> point,
                  std::size_t parent) {
    if (parent >= size()) {
      throw std::out_of_range("DrrtTree::add: unknown parent");
    }
    if (contains(v)) {
      throw std::logic_error("DrrtTree::add: vertex already in tree");
    }
    return insert(std::move(v), point, parent);
  }

  std::size_t nearest(std::span<const double> query) const {
    return index_.nearest(query);
  }
  std::vector<std::size_t> k_nearest(std::span<const double> query,
                                     std::size_t k) const {
    return index_.k_nearest(query, k);
  }

  std::size_t edge_count() const { return nodes_.size() - 1; }

  // Completeness-mode bookkeeping: per-node cursor into the graph's edge
  // enumeration and the queue of nodes that may still have unexposed edges.
  std::size_t& edge_cursor(std::size_t i) { return cursor_.at(i); }
  std::deque<std::size_t>& exposed_queue() { return exposed_; }
  const std::deque<std::size_t>& exposed_queue() const { return exposed_; }

 private:
  std::size_t insert(Vertex v, std::span<const double> point,
                     std::optional<std::size_t> parent) {
    const std::size_t i = index_.insert(point);
    lookup_.emplace(v, i);
    nodes_.push_back({std::move(v), parent});
    cursor_.push_back(0);
    exposed_.push_back(i);
    return i;
  }

  KdTree index_;
  std::vector<Node> nodes_;
  std::unordered_map<Vertex, std::size_t, Hash> lookup_;
  std::vector<std::size_t> cursor_;
  std::deque<std::size_t> exposed_;
};

template <EmbeddedGraph G>
using TreeFor = DrrtTree<typename G::vertex_type, typename G::vertex_hash>;

/// Optional wall-clock cut-off shared by the planner loops.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget) {
    if (budget.count() > 0) {
      at_ = std::chrono::steady_clock::now() + budget;
    }
  }
  bool expired() const {
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

struct ExpandStats {
  std::size_t samples = 0;
  std::size_t added = 0;
};

/// Runs up to N expansion iterations. Iterations where the oracle declines
/// the sample, or proposes a vertex already in the tree, add nothing.
template <EmbeddedGraph G>
ExpandStats expand(TreeFor<G>& tree, const G& graph, std::size_t iterations,
                   std::mt19937_64& rng, const Deadline& deadline = {}) {
  const EmbeddingBox box = graph.bounds();
  std::vector<std::uniform_real_distribution<double>> axes;
  for (std::size_t d = 0; d < graph.dimension(); ++d) {
    axes.emplace_back(box.lower[d], box.upper[d]);
  }
  std::vector<double> sample(graph.dimension());
  ExpandStats stats;
  for (std::size_t it = 0; it < iterations; ++it) {
    if ((it & 63) == 63 && deadline.expired()) {
      break;
    }
    for (std::size_t d = 0; d < sample.size(); ++d) {
      sample[d] = axes[d](rng);
    }
    ++stats.samples;
    const std::size_t near = tree.nearest(sample);
    auto next = graph.direction_oracle(tree.vertex(near), sample);
    if (!next || tree.contains(*next)) {
      continue;
    }
    const std::vector<double> p = graph.embed(*next);
    tree.add(std::move(*next), p, near);
    ++stats.added;
  }
  return stats;
}

template <class Vertex>
using LocalConnector = std::function<std::optional<GraphPath<Vertex>>(
    const Vertex& from, const Vertex& to)>;

template <class Vertex>
struct ConnectAttempt {
  std::optional<std::size_t> node;  // tree node the suffix starts from
  GraphPath<Vertex> suffix;
  std::size_t tried = 0;
};

/// Tries the connector from the K tree nodes nearest to `target` (ascending
/// distance) and stops at the first success. K is clamped to the tree size.
template <EmbeddedGraph G>
ConnectAttempt<typename G::vertex_type> connect_to_target(
    const TreeFor<G>& tree, const G& graph,
    const typename G::vertex_type& target, std::size_t k,
    const LocalConnector<typename G::vertex_type>& connector) {
  ConnectAttempt<typename G::vertex_type> attempt;
  const std::vector<double> goal = graph.embed(target);
  for (const std::size_t node : tree.k_nearest(goal, k)) {
    ++attempt.tried;
    auto suffix = connector(tree.vertex(node), target);
    if (suffix && !suffix->empty()) {
      attempt.node = node;
      attempt.suffix = std::move(*suffix);
      return attempt;
    }
  }
  return attempt;
}

/// Root-to-node tree path followed by `suffix`; the junction vertex appears
/// once. Throws std::invalid_argument if the suffix does not start at the node.
template <class Vertex, class Hash>
GraphPath<Vertex> retrieve_path(const DrrtTree<Vertex, Hash>& tree,
                                std::size_t node,
                                const GraphPath<Vertex>& suffix) {
  if (suffix.vertices.empty() || !(suffix.vertices.front() == tree.vertex(node))) {
    throw std::invalid_argument("retrieve_path: suffix must start at the node");
  }
  GraphPath<Vertex> path;
  for (std::optional<std::size_t> cur = node; cur; cur = tree.node(*cur).parent) {
    path.vertices.push_back(tree.vertex(*cur));
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  path.steps.assign(path.vertices.size() - 1, Step::simultaneous());
  path.vertices.insert(path.vertices.end(), suffix.vertices.begin() + 1,
                       suffix.vertices.end());
  path.steps.insert(path.steps.end(), suffix.steps.begin(), suffix.steps.end());
  return path;
}

/// Exposes one not-yet-exposed graph edge of some tree node, brute force.
/// Returns whether its endpoint was new and got added.
template <EmbeddedGraph G>
bool expose_fallback_edge(TreeFor<G>& tree, const G& graph) {
  auto& queue = tree.exposed_queue();
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    const auto& v = tree.vertex(node);
    const std::size_t count = graph.edge_candidate_count(v);
    std::size_t& cursor = tree.edge_cursor(node);
    while (cursor < count) {
      auto next = graph.edge_candidate(v, cursor++);
      if (!next) {
        continue;
      }
      if (cursor == count) {
        queue.pop_front();
      }
      if (tree.contains(*next)) {
        return false;
      }
      const std::vector<double> p = graph.embed(*next);
      tree.add(std::move(*next), p, node);
      return true;
    }
    queue.pop_front();
  }
  return false;
}

/// Fallback queue drained: every edge of every tree node has been exposed, so
/// the tree spans the connected component of its root.
template <class Vertex, class Hash>
bool fallback_exhausted(const DrrtTree<Vertex, Hash>& tree) {
  return tree.exposed_queue().empty();
}

struct DrrtParams {
  std::size_t max_iterations = 30;
  std::uint64_t seed = 0;
  bool fallback = false;
  /// Upper bound on expansion samples per main-loop iteration; 0 = none.
  std::size_t expand_cap = 0;
  std::chrono::milliseconds time_budget{0};

  /// N at main-loop iteration i (1-based): 2^i, optionally capped.
  std::size_t expand_samples(std::size_t iteration) const {
    const std::size_t n = iteration >= 63 ? ~std::size_t{0}
                                          : std::size_t{1} << iteration;
    return expand_cap > 0 ? std::min(n, expand_cap) : n;
  }
  /// K at main-loop iteration i, before clamping to the tree size.
  std::size_t connect_candidates(std::size_t iteration) const {
    return iteration;
  }
};

struct IterationStats {
  std::size_t iteration = 0;
  std::size_t expand_samples = 0;
  std::size_t expand_added = 0;
  std::size_t connect_k = 0;
  std::size_t connect_tried = 0;
  bool fallback_added = false;
};

enum class PlanStatus { success, max_iterations, time_budget, exhausted };

template <EmbeddedGraph G>
struct PlanOutcome {
  using Vertex = typename G::vertex_type;

  PlanStatus status = PlanStatus::max_iterations;
  std::optional<GraphPath<Vertex>> path;
  TreeFor<G> tree;
  std::size_t iterations = 0;
  double expand_ms = 0.0;
  double connect_ms = 0.0;
  std::vector<IterationStats> trace;

  bool success() const { return status == PlanStatus::success; }
};

/// Main loop: expand, try to connect, optionally expose one fallback edge,
/// until a path is found or a budget runs out. Throws std::invalid_argument if
/// s or t is not a vertex of the graph.
template <EmbeddedGraph G>
PlanOutcome<G> plan(const G& graph, const typename G::vertex_type& start,
                    const typename G::vertex_type& target,
                    const DrrtParams& params,
                    const LocalConnector<typename G::vertex_type>& connector) {
  using Vertex = typename G::vertex_type;
  using Clock = std::chrono::steady_clock;
  if (!graph.contains(start) || !graph.contains(target)) {
    throw std::invalid_argument("plan: start or target is not a graph vertex");
  }
  const std::vector<double> root_point = graph.embed(start);
  PlanOutcome<G> out{PlanStatus::max_iterations, std::nullopt,
                     TreeFor<G>(start, root_point), 0, 0.0, 0.0, {}};
  if (start == target) {
    out.status = PlanStatus::success;
    out.path = GraphPath<Vertex>{{start}, {}};
    return out;
  }

  auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };
  const Deadline deadline(params.time_budget);
  std::mt19937_64 rng(params.seed);
  for (std::size_t i = 1; i <= params.max_iterations; ++i) {
    if (deadline.expired()) {
      out.status = PlanStatus::time_budget;
      return out;
    }
    out.iterations = i;
    IterationStats stats;
    stats.iteration = i;

    auto t0 = Clock::now();
    const ExpandStats grown =
        expand(out.tree, graph, params.expand_samples(i), rng, deadline);
    out.expand_ms += ms_since(t0);
    stats.expand_samples = grown.samples;
    stats.expand_added = grown.added;

    t0 = Clock::now();
    stats.connect_k = std::min(params.connect_candidates(i), out.tree.size());
    auto attempt =
        connect_to_target(out.tree, graph, target, stats.connect_k, connector);
    out.connect_ms += ms_since(t0);
    stats.connect_tried = attempt.tried;

    if (attempt.node) {
      out.trace.push_back(stats);
      out.path = retrieve_path(out.tree, *attempt.node, attempt.suffix);
      out.status = PlanStatus::success;
      return out;
    }

    if (params.fallback) {
      t0 = Clock::now();
      stats.fallback_added = expose_fallback_edge(out.tree, graph);
      out.expand_ms += ms_since(t0);
      if (fallback_exhausted(out.tree)) {
        out.trace.push_back(stats);
        if (const auto node = out.tree.find(target)) {
          out.path = retrieve_path(out.tree, *node, GraphPath<Vertex>{{target}, {}});
          out.status = PlanStatus::success;
        } else {
          out.status = PlanStatus::exhausted;
        }
        return out;
      }
    }
    out.trace.push_back(stats);
  }
  out.status = PlanStatus::max_iterations;
  return out;
}

}  // namespace mrdrrt
