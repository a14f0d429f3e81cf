#include "mrdrrt/explicit_graph.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mrdrrt/geometry.hpp"
#include "mrdrrt/kd_tree.hpp"

namespace mrdrrt {

ExplicitGraph::ExplicitGraph(std::size_t dimension, EmbeddingBox box)
    : dim_(dimension), box_(std::move(box)) {
  if (box_.lower.size() != dim_ || box_.upper.size() != dim_) {
    throw std::invalid_argument("ExplicitGraph: box dimension mismatch");
  }
}

ExplicitGraph::vertex_type ExplicitGraph::add_vertex(
    std::span<const double> point) {
  if (point.size() != dim_) {
    throw std::invalid_argument("ExplicitGraph: point dimension mismatch");
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
  adjacency_.emplace_back();
  return static_cast<vertex_type>(adjacency_.size() - 1);
}

void ExplicitGraph::add_edge(vertex_type u, vertex_type v) {
  if (u >= size() || v >= size() || u == v) {
    throw std::invalid_argument("ExplicitGraph: invalid edge");
  }
  if (has_edge(u, v)) {
    return;
  }
  auto insert_sorted = [](std::vector<vertex_type>& adj, vertex_type x) {
    adj.insert(std::lower_bound(adj.begin(), adj.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
}

std::size_t ExplicitGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) {
    twice += adj.size();
  }
  return twice / 2;
}

std::span<const ExplicitGraph::vertex_type> ExplicitGraph::neighbors(
    vertex_type v) const {
  if (v >= size()) {
    throw std::out_of_range("ExplicitGraph: vertex " + std::to_string(v) +
                            " out of range");
  }
  return adjacency_[v];
}

bool ExplicitGraph::has_edge(vertex_type u, vertex_type v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::span<const double> ExplicitGraph::point(vertex_type v) const {
  if (v >= size()) {
    throw std::out_of_range("ExplicitGraph: vertex out of range");
  }
  return {coords_.data() + v * dim_, dim_};
}

std::vector<double> ExplicitGraph::embed(vertex_type v) const {
  const auto p = point(v);
  return {p.begin(), p.end()};
}

std::optional<ExplicitGraph::vertex_type> ExplicitGraph::direction_oracle(
    vertex_type v, std::span<const double> sample) const {
  const auto origin = point(v);
  double sample_sq = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    sample_sq += (sample[d] - origin[d]) * (sample[d] - origin[d]);
  }
  const bool degenerate = sample_sq <= kDegeneracyEps * kDegeneracyEps;
  std::optional<vertex_type> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (const vertex_type u : neighbors(v)) {
    double score = 0.0;
    if (degenerate) {
      const auto p = point(u);
      for (std::size_t d = 0; d < dim_; ++d) {
        score += (p[d] - sample[d]) * (p[d] - sample[d]);
      }
    } else {
      const auto angle = angle_between(origin, sample, point(u));
      if (!angle) {
        continue;  // neighbour embedded on top of v
      }
      score = *angle;
    }
    if (score < best_score) {
      best_score = score;
      best = u;
    }
  }
  return best;
}

ExplicitGraph random_connected_graph(std::size_t count, std::uint64_t seed,
                                     std::size_t k) {
  ExplicitGraph g(2, {{0.0, 0.0}, {1.0, 1.0}});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  KdTree index(2);
  for (std::size_t i = 0; i < count; ++i) {
    const double p[2] = {unit(rng), unit(rng)};
    g.add_vertex(p);
    index.insert(p);
  }
  for (std::uint32_t v = 0; v < count; ++v) {
    for (const std::size_t u : index.k_nearest(g.point(v), k + 1)) {
      if (u != v) {
        g.add_edge(v, static_cast<std::uint32_t>(u));
      }
    }
  }
  // Spanning augmentation: grow the component of vertex 0 by its closest
  // outside vertex until everything is reached.
  while (true) {
    std::vector<bool> reached(count, false);
    std::vector<std::uint32_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto u : g.neighbors(v)) {
        if (!reached[u]) {
          reached[u] = true;
          stack.push_back(u);
        }
      }
    }
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::uint32_t, std::uint32_t> link{0, 0};
    for (std::uint32_t a = 0; a < count; ++a) {
      if (!reached[a]) {
        continue;
      }
      for (std::uint32_t b = 0; b < count; ++b) {
        if (reached[b]) {
          continue;
        }
        const auto pa = g.point(a);
        const auto pb = g.point(b);
        const double d = (pa[0] - pb[0]) * (pa[0] - pb[0]) +
                         (pa[1] - pb[1]) * (pa[1] - pb[1]);
        if (d < best) {
          best = d;
          link = {a, b};
        }
      }
    }
    if (best == std::numeric_limits<double>::infinity()) {
      break;
    }
    g.add_edge(link.first, link.second);
  }
  return g;
}

}  // namespace mrdrrt
