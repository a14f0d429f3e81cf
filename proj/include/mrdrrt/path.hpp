#pragma once

#include <cstddef>
#include <vector>

namespace mrdrrt {

/// How a path step moves the robots. Simultaneous steps move any subset of
/// robots at once (tensor edges); single steps move exactly `mover` while the
/// rest stay parked.
struct Step {
  enum class Kind { simultaneous, single };

  Kind kind = Kind::simultaneous;
  std::size_t mover = 0;

  static Step simultaneous() { return {Kind::simultaneous, 0}; }
  static Step single(std::size_t robot) { return {Kind::single, robot}; }

  friend bool operator==(const Step&, const Step&) = default;
};

/// A vertex sequence plus one annotation per consecutive pair
/// (steps.size() == vertices.size() - 1 for non-empty paths).
template <class Vertex>
struct GraphPath {
  std::vector<Vertex> vertices;
  std::vector<Step> steps;

  bool empty() const { return vertices.empty(); }
  std::size_t step_count() const { return steps.size(); }

  friend bool operator==(const GraphPath&, const GraphPath&) = default;
};

}  // namespace mrdrrt
