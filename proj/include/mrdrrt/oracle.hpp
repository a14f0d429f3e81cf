#pragma once

// Ground truth for small instances: the composite roadmap built explicitly,
// breadth-first search over it, and a path validator that re-derives every
// clearance from the scenario without going through the composite module.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mrdrrt/composite.hpp"
#include "mrdrrt/connector.hpp"
#include "mrdrrt/scenario.hpp"

namespace mrdrrt {

struct ExplicitComposite {
  ProductMode mode = ProductMode::tensor;
  std::vector<CompositeVertex> vertices;
  std::unordered_map<CompositeVertex, std::size_t, CompositeVertexHash> index;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted ascending

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;
  std::optional<std::size_t> find(const CompositeVertex& c) const;
  bool has_edge(const CompositeVertex& a, const CompositeVertex& b) const;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExplicitVertexCap = 1'000'000;

/// Enumerates every valid composite vertex and every edge accepted by
/// edge_valid in `mode`. Throws OracleError if the raw product of roadmap
/// sizes exceeds `cap`.
ExplicitComposite build_explicit_composite(const CompositeRoadmap& graph,
                                           ProductMode mode,
                                           std::size_t cap = kExplicitVertexCap);

/// Hop-shortest path, or empty iff S and T are disconnected. Throws
/// std::invalid_argument if either endpoint is not in the graph.
std::optional<CompositePath> explicit_search(const ExplicitComposite& g,
                                             const CompositeVertex& start,
                                             const CompositeVertex& target);

struct Violation {
  std::size_t step = 0;
  std::string kind;
  std::vector<std::size_t> robots;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Checks endpoints against the scenario's start/target, every per-robot
/// motion against the roadmap edges and obstacles, the step annotations, and
/// every robot pair's clearance over each step. Step k is the motion from
/// vertex k to vertex k+1; vertex-level problems are reported at the step
/// that arrives there (step 0 for the first vertex).
ValidationReport validate_path(const Scenario& scenario,
                               std::span<const Roadmap> roadmaps,
                               const CompositePath& path);

/// Brute force over all m! sequential orderings of the given per-robot paths:
/// true iff some order moves the robots one at a time without contact.
bool sequential_ordering_exists(const CompositeRoadmap& graph,
                                const CompositeVertex& from,
                                const CompositeVertex& to,
                                const RobotPaths& paths);

}  // namespace mrdrrt
