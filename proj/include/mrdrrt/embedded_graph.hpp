#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mrdrrt {

/// Axis-aligned sampling region of an embedding space.
struct EmbeddingBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// A graph whose vertices are embedded as points in R^d and which can be
/// explored only through local queries.
///
///   direction_oracle(v, q)  neighbour of v best aligned with the ray v->q, or
///                           empty when the graph declines the sample;
///   edge_candidate(v, i)    i-th entry of a fixed enumeration of v's potential
///                           neighbours (i < edge_candidate_count(v)), empty when
///                           that candidate is not an actual edge.
template <class G>
concept EmbeddedGraph =
    requires(const G& g, const typename G::vertex_type& v,
             std::span<const double> q, std::size_t i) {
      typename G::vertex_type;
      typename G::vertex_hash;
      { g.dimension() } -> std::convertible_to<std::size_t>;
      { g.bounds() } -> std::convertible_to<EmbeddingBox>;
      { g.embed(v) } -> std::convertible_to<std::vector<double>>;
      { g.contains(v) } -> std::convertible_to<bool>;
      {
        g.direction_oracle(v, q)
      } -> std::same_as<std::optional<typename G::vertex_type>>;
      { g.edge_candidate_count(v) } -> std::convertible_to<std::size_t>;
      {
        g.edge_candidate(v, i)
      } -> std::same_as<std::optional<typename G::vertex_type>>;
    };

}  // namespace mrdrrt
