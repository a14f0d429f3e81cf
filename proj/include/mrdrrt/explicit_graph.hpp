#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mrdrrt/embedded_graph.hpp"

namespace mrdrrt {

/// A fully materialised graph with vertices embedded in R^d. Used to run the
/// tree search on small hand-built or random instances.
class ExplicitGraph {
 public:
  using vertex_type = std::uint32_t;
  using vertex_hash = std::hash<std::uint32_t>;

  ExplicitGraph(std::size_t dimension, EmbeddingBox box);

  vertex_type add_vertex(std::span<const double> point);
  /// Undirected; duplicate edges and self-loops are rejected.
  void add_edge(vertex_type u, vertex_type v);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  std::span<const vertex_type> neighbors(vertex_type v) const;
  bool has_edge(vertex_type u, vertex_type v) const;
  std::span<const double> point(vertex_type v) const;

  std::size_t dimension() const { return dim_; }
  EmbeddingBox bounds() const { return box_; }
  std::vector<double> embed(vertex_type v) const;
  bool contains(vertex_type v) const { return v < size(); }

  /// Angle argmin over neighbours; lowest id wins ties. A sample that
  /// coincides with v falls back to the neighbour nearest the sample.
  std::optional<vertex_type> direction_oracle(
      vertex_type v, std::span<const double> sample) const;

  std::size_t edge_candidate_count(vertex_type v) const {
    return neighbors(v).size();
  }
  std::optional<vertex_type> edge_candidate(vertex_type v,
                                            std::size_t index) const {
    return neighbors(v)[index];
  }

 private:
  std::size_t dim_;
  EmbeddingBox box_;
  std::vector<double> coords_;
  std::vector<std::vector<vertex_type>> adjacency_;
};

static_assert(EmbeddedGraph<ExplicitGraph>);

/// `count` points uniform in [0,1]^2 joined to their 4 nearest neighbours,
/// plus extra edges until the graph is connected (nearest pair between the
/// component of vertex 0 and the rest, repeatedly).
ExplicitGraph random_connected_graph(std::size_t count, std::uint64_t seed,
                                     std::size_t k = 4);

}  // namespace mrdrrt
