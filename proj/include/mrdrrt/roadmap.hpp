#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mrdrrt/geometry.hpp"

namespace mrdrrt {

using VertexId = std::uint32_t;

/// Single-robot probabilistic roadmap embedded in the plane.
///
/// Adjacency lists are symmetric and sorted ascending. Every vertex is a free
/// placement of the robot it was built for and every edge a free straight
/// motion; start and target share a connected component.
struct Roadmap {
  std::vector<Point2> vertices;
  std::vector<std::vector<VertexId>> adjacency;
  VertexId start_id = 0;
  VertexId target_id = 0;

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;

  /// Throws std::out_of_range for an unknown id.
  std::span<const VertexId> neighbors(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  const Point2& position(VertexId v) const;

  friend bool operator==(const Roadmap&, const Roadmap&) = default;
};

struct RobotSpec {
  Disc disc;
  Point2 start;
  Point2 target;
};

struct PrmOptions {
  std::size_t n = 200;
  std::size_t k = 8;
  std::uint64_t seed = 0;
  /// Batches of n samples before giving up on connecting start and target.
  std::size_t max_batches = 10;
};

class RoadmapError : public std::runtime_error {
 public:
  enum class Kind { invalid_endpoint, disconnected, sampling_exhausted };

  RoadmapError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Uniform rejection sampling in the workspace bounding box, k-nearest
/// symmetric connection. Resamples in batches of n until start and target are
/// connected, throwing RoadmapError{disconnected} after max_batches.
Roadmap build_roadmap(const RobotSpec& robot, const Polygon2& workspace,
                      std::span<const Polygon2> obstacles,
                      const PrmOptions& options);

/// Euclidean-length shortest path; empty optional iff disconnected.
std::optional<std::vector<VertexId>> shortest_path(const Roadmap& g,
                                                   VertexId from, VertexId to);

bool same_component(const Roadmap& g, VertexId a, VertexId b);

/// {vertices: [[x,y],...], edges: [[u,v],...] with u<v, start, target}
nlohmann::json roadmap_to_json(const Roadmap& g);
Roadmap roadmap_from_json(const nlohmann::json& j);

}  // namespace mrdrrt
