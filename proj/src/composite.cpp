#include "mrdrrt/composite.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mrdrrt {

std::size_t CompositeVertexHash::operator()(
    const CompositeVertex& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const VertexId id : c.ids) {
    h ^= id;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CompositeRoadmap::CompositeRoadmap(std::vector<Roadmap> roadmaps,
                                   std::vector<Disc> discs, Box2 sample_box,
                                   ProductMode mode)
    : roadmaps_(std::move(roadmaps)),
      discs_(std::move(discs)),
      sample_box_(sample_box),
      mode_(mode) {
  if (roadmaps_.empty()) {
    throw std::invalid_argument("composite roadmap needs at least one robot");
  }
  if (roadmaps_.size() != discs_.size()) {
    throw std::invalid_argument("one disc per roadmap required");
  }
}

CompositeVertex CompositeRoadmap::start() const {
  CompositeVertex c;
  for (const auto& g : roadmaps_) {
    c.ids.push_back(g.start_id);
  }
  return c;
}

CompositeVertex CompositeRoadmap::target() const {
  CompositeVertex c;
  for (const auto& g : roadmaps_) {
    c.ids.push_back(g.target_id);
  }
  return c;
}

Point2 CompositeRoadmap::position(const CompositeVertex& c,
                                  std::size_t robot) const {
  return roadmaps_[robot].position(c.ids[robot]);
}

void CompositeRoadmap::check_shape(const CompositeVertex& c) const {
  if (c.ids.size() != robot_count()) {
    throw std::out_of_range("composite vertex has " +
                            std::to_string(c.ids.size()) + " ids, expected " +
                            std::to_string(robot_count()));
  }
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    if (c.ids[i] >= roadmaps_[i].size()) {
      throw std::out_of_range("robot " + std::to_string(i) + " vertex id " +
                              std::to_string(c.ids[i]) + " out of range");
    }
  }
}

bool CompositeRoadmap::vertex_valid(const CompositeVertex& c) const {
  check_shape(c);
  for (std::size_t i = 0; i < robot_count(); ++i) {
    const Point2 pi = position(c, i);
    for (std::size_t j = i + 1; j < robot_count(); ++j) {
      const Point2 pj = position(c, j);
      if (!moving_discs_clear(pi, pi, discs_[i], pj, pj, discs_[j])) {
        return false;
      }
    }
  }
  return true;
}

bool CompositeRoadmap::contains(const CompositeVertex& c) const {
  if (c.ids.size() != robot_count()) {
    return false;
  }
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    if (c.ids[i] >= roadmaps_[i].size()) {
      return false;
    }
  }
  return vertex_valid(c);
}

bool CompositeRoadmap::motion_clear(const CompositeVertex& from,
                                    const CompositeVertex& to,
                                    ProductMode mode) const {
  std::size_t movers = 0;
  for (std::size_t i = 0; i < robot_count(); ++i) {
    if (from.ids[i] == to.ids[i]) {
      continue;
    }
    if (!roadmaps_[i].has_edge(from.ids[i], to.ids[i])) {
      return false;
    }
    ++movers;
  }
  if (mode == ProductMode::cartesian && movers != 1) {
    return false;
  }
  // In Cartesian mode stationary pairs are already clear (both endpoints are
  // valid vertices), so this loop only ever rejects mover-vs-parked contacts.
  for (std::size_t i = 0; i < robot_count(); ++i) {
    const Point2 a1 = position(from, i);
    const Point2 b1 = position(to, i);
    for (std::size_t j = i + 1; j < robot_count(); ++j) {
      if (from.ids[i] == to.ids[i] && from.ids[j] == to.ids[j]) {
        continue;
      }
      if (!moving_discs_clear(a1, b1, discs_[i], position(from, j),
                              position(to, j), discs_[j])) {
        return false;
      }
    }
  }
  return true;
}

bool CompositeRoadmap::edge_valid(const CompositeVertex& from,
                                  const CompositeVertex& to,
                                  ProductMode mode) const {
  if (!vertex_valid(from) || !vertex_valid(to)) {
    throw std::invalid_argument("edge_valid: endpoint is not a valid vertex");
  }
  return motion_clear(from, to, mode);
}

std::optional<VertexId> roadmap_direction_oracle(const Roadmap& g,
                                                 VertexId vertex,
                                                 Point2 sample) {
  const auto nbrs = g.neighbors(vertex);
  if (nbrs.empty()) {
    return std::nullopt;
  }
  const Point2 origin = g.position(vertex);
  std::optional<VertexId> best;
  double best_score = std::numeric_limits<double>::infinity();
  const bool degenerate = norm(sample - origin) <= kDegeneracyEps;
  for (const VertexId u : nbrs) {
    double score = 0.0;
    if (degenerate) {
      score = distance(g.position(u), sample);
    } else {
      // Distinct roadmap vertices never give a degenerate second ray.
      score = angle_between(origin, sample, g.position(u)).value();
    }
    if (score < best_score) {
      best_score = score;
      best = u;
    }
  }
  return best;
}

std::optional<CompositeVertex> CompositeRoadmap::direction_oracle(
    const CompositeVertex& c, std::span<const double> sample) const {
  check_shape(c);
  if (sample.size() != dimension()) {
    throw std::invalid_argument("direction_oracle: sample dimension mismatch");
  }
  return mode_ == ProductMode::tensor ? tensor_oracle(c, sample)
                                      : cartesian_oracle(c, sample);
}

std::optional<CompositeVertex> CompositeRoadmap::tensor_oracle(
    const CompositeVertex& c, std::span<const double> sample) const {
  CompositeVertex candidate;
  candidate.ids.reserve(robot_count());
  for (std::size_t i = 0; i < robot_count(); ++i) {
    const Point2 q{sample[2 * i], sample[2 * i + 1]};
    // A robot without roadmap edges can only stay.
    const auto next = roadmap_direction_oracle(roadmaps_[i], c.ids[i], q);
    candidate.ids.push_back(next.value_or(c.ids[i]));
  }
  if (candidate == c || !vertex_valid(candidate) ||
      !motion_clear(c, candidate, ProductMode::tensor)) {
    return std::nullopt;
  }
  return candidate;
}

// Exact argmin over the Cartesian neighbours in R^{2m}: each neighbour moves a
// single robot, so its direction is non-zero only in that robot's block.
std::optional<CompositeVertex> CompositeRoadmap::cartesian_oracle(
    const CompositeVertex& c, std::span<const double> sample) const {
  const std::vector<double> origin = embed(c);
  double sample_sq = 0.0;
  for (std::size_t d = 0; d < origin.size(); ++d) {
    sample_sq += (sample[d] - origin[d]) * (sample[d] - origin[d]);
  }
  const bool degenerate = std::sqrt(sample_sq) <= kDegeneracyEps;

  std::optional<CompositeVertex> best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> moved = origin;
  for (std::size_t i = 0; i < robot_count(); ++i) {
    for (const VertexId u : roadmaps_[i].neighbors(c.ids[i])) {
      const Point2 p = roadmaps_[i].position(u);
      moved[2 * i] = p.x;
      moved[2 * i + 1] = p.y;
      double score = 0.0;
      if (degenerate) {
        double sq = 0.0;
        for (std::size_t d = 0; d < moved.size(); ++d) {
          sq += (moved[d] - sample[d]) * (moved[d] - sample[d]);
        }
        score = sq;
      } else {
        score = angle_between(origin, sample, moved).value();
      }
      if (score < best_score) {
        best_score = score;
        best = c;
        best->ids[i] = u;
      }
    }
    moved[2 * i] = origin[2 * i];
    moved[2 * i + 1] = origin[2 * i + 1];
  }
  if (!best || !vertex_valid(*best) ||
      !motion_clear(c, *best, ProductMode::cartesian)) {
    return std::nullopt;
  }
  return best;
}

EmbeddingBox CompositeRoadmap::bounds() const {
  EmbeddingBox box;
  for (std::size_t i = 0; i < robot_count(); ++i) {
    box.lower.push_back(sample_box_.lo.x);
    box.lower.push_back(sample_box_.lo.y);
    box.upper.push_back(sample_box_.hi.x);
    box.upper.push_back(sample_box_.hi.y);
  }
  return box;
}

std::vector<double> CompositeRoadmap::embed(const CompositeVertex& c) const {
  check_shape(c);
  std::vector<double> point;
  point.reserve(dimension());
  for (std::size_t i = 0; i < robot_count(); ++i) {
    const Point2 p = position(c, i);
    point.push_back(p.x);
    point.push_back(p.y);
  }
  return point;
}

std::size_t CompositeRoadmap::edge_candidate_count(
    const CompositeVertex& c) const {
  check_shape(c);
  if (mode_ == ProductMode::cartesian) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < robot_count(); ++i) {
      count += roadmaps_[i].neighbors(c.ids[i]).size();
    }
    return count;
  }
  // Every robot either stays or takes one of its edges; all-stay excluded.
  std::size_t count = 1;
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 64;
  for (std::size_t i = 0; i < robot_count(); ++i) {
    count *= roadmaps_[i].neighbors(c.ids[i]).size() + 1;
    if (count > cap) {
      return cap;
    }
  }
  return count - 1;
}

std::optional<CompositeVertex> CompositeRoadmap::edge_candidate(
    const CompositeVertex& c, std::size_t index) const {
  check_shape(c);
  CompositeVertex next = c;
  if (mode_ == ProductMode::cartesian) {
    for (std::size_t i = 0; i < robot_count(); ++i) {
      const auto nbrs = roadmaps_[i].neighbors(c.ids[i]);
      if (index < nbrs.size()) {
        next.ids[i] = nbrs[index];
        break;
      }
      index -= nbrs.size();
    }
  } else {
    // Mixed radix over (stay, neighbour 0, neighbour 1, ...) per robot,
    // skipping the all-stay digit string 0.
    std::size_t code = index + 1;
    for (std::size_t i = 0; i < robot_count(); ++i) {
      const auto nbrs = roadmaps_[i].neighbors(c.ids[i]);
      const std::size_t radix = nbrs.size() + 1;
      const std::size_t digit = code % radix;
      code /= radix;
      if (digit > 0) {
        next.ids[i] = nbrs[digit - 1];
      }
    }
  }
  if (next == c || !vertex_valid(next) || !motion_clear(c, next, mode_)) {
    return std::nullopt;
  }
  return next;
}

}  // namespace mrdrrt
