#pragma once

// Fixtures and reference computations shared by the unit tests. The reference
// routines deliberately avoid the library's own geometry code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "mrdrrt/composite.hpp"
#include "mrdrrt/geometry.hpp"
#include "mrdrrt/roadmap.hpp"
#include "mrdrrt/scenario.hpp"

namespace testing {

using mrdrrt::Point2;
using mrdrrt::Polygon2;
using mrdrrt::Roadmap;
using mrdrrt::VertexId;

inline Polygon2 rect(double x0, double y0, double x1, double y1) {
  return Polygon2{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

inline Roadmap make_roadmap(std::vector<Point2> points,
                            const std::vector<std::pair<VertexId, VertexId>>& edges,
                            VertexId start, VertexId target) {
  Roadmap g;
  g.vertices = std::move(points);
  g.adjacency.assign(g.vertices.size(), {});
  for (const auto& [u, v] : edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& list : g.adjacency) {
    std::sort(list.begin(), list.end());
  }
  g.start_id = start;
  g.target_id = target;
  return g;
}

/// Scenario whose robots are the roadmaps' start/target placements.
inline mrdrrt::Scenario scenario_for(const Polygon2& workspace,
                                     std::vector<Polygon2> obstacles,
                                     const std::vector<Roadmap>& roadmaps,
                                     const std::vector<double>& radii) {
  mrdrrt::Scenario s;
  s.name = "test";
  s.workspace = workspace;
  s.obstacles = std::move(obstacles);
  for (std::size_t i = 0; i < roadmaps.size(); ++i) {
    s.robots.push_back({mrdrrt::Disc{radii[i]},
                        roadmaps[i].position(roadmaps[i].start_id),
                        roadmaps[i].position(roadmaps[i].target_id)});
  }
  return s;
}

/// Distance from p to segment ab by comparing the perpendicular foot against
/// the two endpoint distances; independent of the library's clamp form.
inline double ref_point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const double da = std::hypot(p.x - a.x, p.y - a.y);
  const double db = std::hypot(p.x - b.x, p.y - b.y);
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  if (len == 0.0) {
    return da;
  }
  const double along = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len;
  if (along <= 0.0 || along >= len) {
    return std::min(da, db);
  }
  const double area2 = std::abs((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x));
  return area2 / len;
}

/// Minimum over the four endpoint-to-segment distances, zero if the segments
/// properly cross (orientation signs).
inline double ref_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto orient = [](Point2 p, Point2 q, Point2 r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return (v > 0) - (v < 0);
  };
  if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) {
    return 0.0;
  }
  return std::min({ref_point_segment_distance(a, c, d), ref_point_segment_distance(b, c, d),
                   ref_point_segment_distance(c, a, b), ref_point_segment_distance(d, a, b)});
}

/// Smallest centre distance over `samples` uniform instants in [0,1].
inline double sampled_min_distance(Point2 a1, Point2 b1, Point2 a2, Point2 b2,
                                   std::size_t samples) {
  double best = INFINITY;
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(samples - 1);
    const double x1 = a1.x + t * (b1.x - a1.x);
    const double y1 = a1.y + t * (b1.y - a1.y);
    const double x2 = a2.x + t * (b2.x - a2.x);
    const double y2 = a2.y + t * (b2.y - a2.y);
    best = std::min(best, std::hypot(x1 - x2, y1 - y2));
  }
  return best;
}

/// Unsigned angle at `origin` between the rays to u and v, via acos.
inline double ref_angle(Point2 origin, Point2 u, Point2 v) {
  const double ux = u.x - origin.x, uy = u.y - origin.y;
  const double vx = v.x - origin.x, vy = v.y - origin.y;
  const double c = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Two discs of radius 0.4 in a 1-wide corridor that must trade ends. With
/// `pocket`, a side bay halfway along lets one of them step aside.
struct CorridorSwap {
  mrdrrt::Scenario scenario;
  std::vector<Roadmap> roadmaps;
  mrdrrt::CompositeRoadmap graph() const {
    return mrdrrt::CompositeRoadmap(roadmaps, scenario.discs(),
                                    mrdrrt::bounding_box(scenario.workspace));
  }
};

inline CorridorSwap corridor_swap(bool pocket) {
  Polygon2 ws;
  if (pocket) {
    ws = Polygon2{{{0, 0}, {10, 0}, {10, 1}, {5.6, 1}, {5.6, 2.5}, {4.4, 2.5}, {4.4, 1}, {0, 1}}};
  } else {
    ws = rect(0, 0, 10, 1);
  }
  // Line roadmap along the corridor; with a pocket, a spur into the bay.
  std::vector<Point2> pts = {{1, 0.5}, {9, 0.5}, {3, 0.5}, {5, 0.5}, {7, 0.5}};
  std::vector<std::pair<VertexId, VertexId>> edges = {{0, 2}, {2, 3}, {3, 4}, {4, 1}};
  if (pocket) {
    pts.push_back({5, 1.8});
    edges.push_back({3, 5});
  }
  CorridorSwap out;
  out.roadmaps.push_back(make_roadmap(pts, edges, 0, 1));
  out.roadmaps.push_back(make_roadmap(pts, edges, 1, 0));
  out.scenario = scenario_for(ws, {}, out.roadmaps, {0.4, 0.4});
  return out;
}

}  // namespace testing
