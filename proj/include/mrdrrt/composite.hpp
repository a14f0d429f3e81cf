#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mrdrrt/embedded_graph.hpp"
#include "mrdrrt/geometry.hpp"
#include "mrdrrt/path.hpp"
#include "mrdrrt/roadmap.hpp"

namespace mrdrrt {

/// One roadmap vertex per robot; robot i's id indexes roadmap i.
struct CompositeVertex {
  std::vector<VertexId> ids;

  friend bool operator==(const CompositeVertex&,
                         const CompositeVertex&) = default;
  friend auto operator<=>(const CompositeVertex&,
                          const CompositeVertex&) = default;
};

struct CompositeVertexHash {
  std::size_t operator()(const CompositeVertex& c) const noexcept;
};

enum class ProductMode { tensor, cartesian };

using CompositePath = GraphPath<CompositeVertex>;

/// Implicit product of per-robot roadmaps. Nothing is materialised: vertices
/// and edges are checked on demand against the robot-robot constraints only,
/// since robot-obstacle validity is inherited from the roadmaps.
///
/// In tensor mode a robot whose id is unchanged across an edge is treated as
/// staying in place, so one-robot-at-a-time motions are also tensor edges.
class CompositeRoadmap {
 public:
  using vertex_type = CompositeVertex;
  using vertex_hash = CompositeVertexHash;

  CompositeRoadmap(std::vector<Roadmap> roadmaps, std::vector<Disc> discs,
                   Box2 sample_box, ProductMode mode = ProductMode::tensor);

  std::size_t robot_count() const { return roadmaps_.size(); }
  const Roadmap& roadmap(std::size_t robot) const { return roadmaps_[robot]; }
  std::span<const Roadmap> roadmaps() const { return roadmaps_; }
  const Disc& disc(std::size_t robot) const { return discs_[robot]; }
  ProductMode mode() const { return mode_; }

  CompositeVertex start() const;
  CompositeVertex target() const;
  Point2 position(const CompositeVertex& c, std::size_t robot) const;

  /// Pairwise static clearance. Throws std::out_of_range on a malformed tuple.
  bool vertex_valid(const CompositeVertex& c) const;

  /// Throws std::invalid_argument if either endpoint is not a valid vertex.
  bool edge_valid(const CompositeVertex& from, const CompositeVertex& to,
                  ProductMode mode) const;
  bool edge_valid(const CompositeVertex& from,
                  const CompositeVertex& to) const {
    return edge_valid(from, to, mode_);
  }

  /// Combines the per-robot angle-argmin neighbours into one candidate and
  /// returns it only if the resulting motion is a valid edge.
  std::optional<CompositeVertex> direction_oracle(
      const CompositeVertex& c, std::span<const double> sample) const;

  // EmbeddedGraph surface.
  std::size_t dimension() const { return 2 * robot_count(); }
  EmbeddingBox bounds() const;
  std::vector<double> embed(const CompositeVertex& c) const;
  bool contains(const CompositeVertex& c) const;
  std::size_t edge_candidate_count(const CompositeVertex& c) const;
  std::optional<CompositeVertex> edge_candidate(const CompositeVertex& c,
                                                std::size_t index) const;

 private:
  void check_shape(const CompositeVertex& c) const;
  bool motion_clear(const CompositeVertex& from, const CompositeVertex& to,
                    ProductMode mode) const;
  std::optional<CompositeVertex> tensor_oracle(
      const CompositeVertex& c, std::span<const double> sample) const;
  std::optional<CompositeVertex> cartesian_oracle(
      const CompositeVertex& c, std::span<const double> sample) const;

  std::vector<Roadmap> roadmaps_;
  std::vector<Disc> discs_;
  Box2 sample_box_;
  ProductMode mode_;
};

static_assert(EmbeddedGraph<CompositeRoadmap>);

/// Neighbour of `vertex` in `g` best aligned with the ray towards `sample`;
/// ties go to the lowest id. When the sample coincides with the vertex, the
/// neighbour nearest to the sample is used instead. Empty for isolated
/// vertices.
std::optional<VertexId> roadmap_direction_oracle(const Roadmap& g,
                                                 VertexId vertex,
                                                 Point2 sample);

}  // namespace mrdrrt
