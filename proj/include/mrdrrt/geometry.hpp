#pragma once

// Exact 2D primitives for disc robots translating among polygonal obstacles.
//
// Collisions are closed-set everywhere in this header: a clearance exactly equal
// to the sum of radii is reported as a collision. Sweep checks are closed form
// (segment distances and quadratic minimisation), never sampled.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrdrrt {

/// Tolerance for degeneracy detection only (zero-length rays). Never used as a
/// collision margin.
inline constexpr double kDegeneracyEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 p);
double distance(Point2 a, Point2 b);

struct Segment2 {
  Point2 a;
  Point2 b;
};

/// Simple, counter-clockwise polygon with at least three vertices.
struct Polygon2 {
  std::vector<Point2> vertices;

  std::size_t size() const { return vertices.size(); }
  Segment2 edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
};

struct Disc {
  double radius = 0.0;
};

struct Box2 {
  Point2 lo;
  Point2 hi;
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_finite(Point2 p);

/// Throws GeometryError if the polygon has fewer than three vertices, non-finite
/// coordinates, is self-intersecting, or is not counter-clockwise.
void validate_polygon(const Polygon2& poly);
void validate_disc(const Disc& disc);

double signed_area(const Polygon2& poly);
Box2 bounding_box(const Polygon2& poly);

/// Crossing-number test. Points on the boundary may go either way; callers
/// that care combine this with a boundary distance check.
bool contains(const Polygon2& poly, Point2 p);

double point_segment_distance(Point2 p, const Segment2& s);
bool segments_intersect(const Segment2& s1, const Segment2& s2);
double segment_segment_distance(const Segment2& s1, const Segment2& s2);

/// True iff the disc centred at `center` lies strictly inside the workspace and
/// strictly outside every obstacle.
bool disc_free_at(Point2 center, const Disc& disc, const Polygon2& workspace,
                  std::span<const Polygon2> obstacles);

/// True iff the disc translating along the segment a->b stays free for the
/// whole motion.
bool swept_disc_free(Point2 a, Point2 b, const Disc& disc,
                     const Polygon2& workspace,
                     std::span<const Polygon2> obstacles);

/// Squared minimum distance between two points moving linearly over t in [0,1]:
/// p1(t) = a1 + t(b1-a1), p2(t) = a2 + t(b2-a2).
double min_sq_distance_linear(Point2 a1, Point2 b1, Point2 a2, Point2 b2);

/// True iff the two discs stay strictly separated while moving simultaneously
/// and linearly from (a1,a2) to (b1,b2).
bool moving_discs_clear(Point2 a1, Point2 b1, const Disc& d1, Point2 a2,
                        Point2 b2, const Disc& d2);

/// Smaller angle in [0, pi] between the rays origin->u and origin->v.
/// Empty when either ray is degenerate.
std::optional<double> angle_between(Point2 origin, Point2 u, Point2 v);

/// Same as angle_between, for points in R^d.
std::optional<double> angle_between(std::span<const double> origin,
                                     std::span<const double> u,
                                     std::span<const double> v);

}  // namespace mrdrrt
