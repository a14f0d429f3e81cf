#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mrdrrt/composite.hpp"

namespace mrdrrt {

using RobotPaths = std::vector<std::vector<VertexId>>;

/// Ordering constraints between robots. An edge (i, j) means robot i must
/// move after robot j.
struct PriorityDigraph {
  std::size_t robot_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool has_edge(std::size_t after, std::size_t before) const;
  /// Kahn's algorithm, lowest ready robot index first; empty if cyclic.
  std::optional<std::vector<std::size_t>> topological_order() const;
  bool acyclic() const { return topological_order().has_value(); }
};

/// Robot i swept along its whole path against robot j parked at j's start
/// adds (i, j); against j parked at j's target adds (j, i). Both may fire.
/// Throws std::invalid_argument on a malformed path.
PriorityDigraph build_priority_digraph(const CompositeRoadmap& graph,
                                       const CompositeVertex& from,
                                       const CompositeVertex& to,
                                       const RobotPaths& paths);

/// Shortest per-robot paths executed one robot at a time in priority order,
/// the rest parked. Every emitted step is re-checked against the parked robots
/// at their current positions. Empty when a robot is disconnected, the
/// priorities are cyclic, or the re-check fails.
std::optional<CompositePath> local_connect(const CompositeRoadmap& graph,
                                           const CompositeVertex& from,
                                           const CompositeVertex& to);

/// Same as local_connect with caller-supplied per-robot paths.
std::optional<CompositePath> local_connect(const CompositeRoadmap& graph,
                                           const CompositeVertex& from,
                                           const CompositeVertex& to,
                                           const RobotPaths& paths);

}  // namespace mrdrrt
