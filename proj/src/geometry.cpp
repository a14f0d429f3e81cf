#include "mrdrrt/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mrdrrt {

double norm(Point2 p) { return std::hypot(p.x, p.y); }

double distance(Point2 a, Point2 b) { return norm(a - b); }

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double signed_area(const Polygon2& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto [a, b] = poly.edge(i);
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

void validate_polygon(const Polygon2& poly) {
  const std::size_t n = poly.size();
  if (n < 3) {
    throw GeometryError("polygon needs at least 3 vertices");
  }
  for (const auto& p : poly.vertices) {
    if (!is_finite(p)) {
      throw GeometryError("polygon has a non-finite coordinate");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        continue;
      }
      if (segments_intersect(poly.edge(i), poly.edge(j))) {
        throw GeometryError("polygon is self-intersecting (edges " +
                            std::to_string(i) + " and " + std::to_string(j) +
                            ")");
      }
    }
  }
  if (signed_area(poly) <= 0.0) {
    throw GeometryError("polygon must be counter-clockwise");
  }
}

void validate_disc(const Disc& disc) {
  if (!std::isfinite(disc.radius) || disc.radius <= 0.0) {
    throw GeometryError("disc radius must be finite and positive");
  }
}

Box2 bounding_box(const Polygon2& poly) {
  Box2 box{poly.vertices.front(), poly.vertices.front()};
  for (const auto& p : poly.vertices) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

bool contains(const Polygon2& poly, Point2 p) {
  bool inside = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto [a, b] = poly.edge(i);
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

double point_segment_distance(Point2 p, const Segment2& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    return distance(p, s.a);
  }
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

// p is collinear with segment s; does it lie within its bounding box?
bool on_segment(const Segment2& s, Point2 p) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

bool segments_intersect(const Segment2& s1, const Segment2& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);
  if (o1 != o2 && o3 != o4) {
    return true;
  }
  return (o1 == 0 && on_segment(s1, s2.a)) ||
         (o2 == 0 && on_segment(s1, s2.b)) ||
         (o3 == 0 && on_segment(s2, s1.a)) ||
         (o4 == 0 && on_segment(s2, s1.b));
}

double segment_segment_distance(const Segment2& s1, const Segment2& s2) {
  if (segments_intersect(s1, s2)) {
    return 0.0;
  }
  return std::min({point_segment_distance(s1.a, s2),
                   point_segment_distance(s1.b, s2),
                   point_segment_distance(s2.a, s1),
                   point_segment_distance(s2.b, s1)});
}

bool disc_free_at(Point2 center, const Disc& disc, const Polygon2& workspace,
                  std::span<const Polygon2> obstacles) {
  if (!contains(workspace, center)) {
    return false;
  }
  for (std::size_t i = 0; i < workspace.size(); ++i) {
    if (point_segment_distance(center, workspace.edge(i)) <= disc.radius) {
      return false;
    }
  }
  for (const auto& obstacle : obstacles) {
    if (contains(obstacle, center)) {
      return false;
    }
    for (std::size_t i = 0; i < obstacle.size(); ++i) {
      if (point_segment_distance(center, obstacle.edge(i)) <= disc.radius) {
        return false;
      }
    }
  }
  return true;
}

bool swept_disc_free(Point2 a, Point2 b, const Disc& disc,
                     const Polygon2& workspace,
                     std::span<const Polygon2> obstacles) {
  if (!disc_free_at(a, disc, workspace, obstacles) ||
      !disc_free_at(b, disc, workspace, obstacles)) {
    return false;
  }
  if (a == b) {
    return true;
  }
  // Both ends are strictly inside and strictly outside every obstacle, so the
  // swept disc can only leave free space by coming within r of some edge.
  const Segment2 path{a, b};
  for (std::size_t i = 0; i < workspace.size(); ++i) {
    if (segment_segment_distance(path, workspace.edge(i)) <= disc.radius) {
      return false;
    }
  }
  for (const auto& obstacle : obstacles) {
    for (std::size_t i = 0; i < obstacle.size(); ++i) {
      if (segment_segment_distance(path, obstacle.edge(i)) <= disc.radius) {
        return false;
      }
    }
  }
  return true;
}

double min_sq_distance_linear(Point2 a1, Point2 b1, Point2 a2, Point2 b2) {
  const Point2 r0 = a1 - a2;
  const Point2 dr = (b1 - a1) - (b2 - a2);
  const double dd = dot(dr, dr);
  double t = 0.0;
  if (dd > 0.0) {
    t = std::clamp(-dot(r0, dr) / dd, 0.0, 1.0);
  }
  const Point2 closest = r0 + t * dr;
  return dot(closest, closest);
}

bool moving_discs_clear(Point2 a1, Point2 b1, const Disc& d1, Point2 a2,
                        Point2 b2, const Disc& d2) {
  const double reach = d1.radius + d2.radius;
  return min_sq_distance_linear(a1, b1, a2, b2) > reach * reach;
}

std::optional<double> angle_between(Point2 origin, Point2 u, Point2 v) {
  const Point2 du = u - origin;
  const Point2 dv = v - origin;
  if (norm(du) <= kDegeneracyEps || norm(dv) <= kDegeneracyEps) {
    return std::nullopt;
  }
  return std::atan2(std::abs(cross(du, dv)), dot(du, dv));
}

std::optional<double> angle_between(std::span<const double> origin,
                                    std::span<const double> u,
                                    std::span<const double> v) {
  if (origin.size() != u.size() || origin.size() != v.size()) {
    throw GeometryError("angle_between: dimension mismatch");
  }
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    nu += (u[i] - origin[i]) * (u[i] - origin[i]);
    nv += (v[i] - origin[i]) * (v[i] - origin[i]);
  }
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  if (nu <= kDegeneracyEps || nv <= kDegeneracyEps) {
    return std::nullopt;
  }
  // 2*atan2(|a-b|, |a+b|) on unit vectors stays accurate near 0 and pi.
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const double a = (u[i] - origin[i]) / nu;
    const double b = (v[i] - origin[i]) / nv;
    diff += (a - b) * (a - b);
    sum += (a + b) * (a + b);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

}  // namespace mrdrrt
