#pragma once

// 2-D primitives in the midsagittal plane. Units are millimeters; +x is
// anterior, +y is superior, origin at the maxillary incisor tip.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace tractvar::geometry {

// Twice the triangle area below which three points count as collinear (mm^2).
inline constexpr double kCollinearTolerance = 1e-6;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2D a, Point2D b) = default;
};

constexpr double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }
inline bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point2D center;
  double radius = 0.0;
};

// Ordered point sequence with at least two points and no zero-length
// segments. Anatomical traces run anterior -> posterior (palate) or
// superior -> inferior (pharyngeal walls).
class Polyline {
 public:
  // Throws Error(DegenerateTrace) if the invariants do not hold.
  explicit Polyline(std::vector<Point2D> points);

  std::span<const Point2D> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t segment_count() const noexcept { return points_.size() - 1; }
  const Point2D& operator[](std::size_t i) const { return points_[i]; }
  const Point2D& front() const { return points_.front(); }
  const Point2D& back() const { return points_.back(); }

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point2D> points_;
};

struct ClearanceResult {
  double distance = 0.0;
  Point2D closest_trace_point;
  Point2D closest_object_point;
  std::size_t segment_index = 0;
};

struct SegmentProjection {
  double distance = 0.0;
  Point2D point;
};

struct WallHit {
  Point2D point;
  std::size_t segment_index = 0;
};

double distance(Point2D p, Point2D q);

// Exact circle through three points. Throws CollinearPoints.
Circle circumcircle(Point2D a, Point2D b, Point2D c);

// Algebraic least-squares (Kasa) circle minimising sum (|p - c|^2 - r^2)^2.
// Throws CollinearPoints or DegenerateFit.
Circle fit_circle(std::span<const Point2D> points);

// Requires a != b. The attaining point is the clamped orthogonal projection.
SegmentProjection point_segment_distance(Point2D p, Point2D a, Point2D b);

// Minimum over all segments; ties go to the lowest segment index.
// closest_object_point is p itself.
ClearanceResult point_polyline_clearance(Point2D p, const Polyline& trace);

// Signed clearance between a circle boundary and a polyline: negative when
// the polyline's closest approach to the center lies inside the circle.
// closest_object_point is the circle point on the ray center -> closest trace
// point (straight up if the trace passes through the center).
ClearanceResult circle_polyline_clearance(const Circle& circle, const Polyline& trace);

// First intersection of the ray starting at b with direction (b - a) with the
// wall. A ray origin lying on the wall counts as an intersection at b.
// Throws NoIntersection.
WallHit extend_line_to_polyline(Point2D a, Point2D b, const Polyline& wall);

// Angle of center -> p measured from +y, positive toward +x, in (-pi, pi].
// Throws DegenerateAngle when p is within 1e-9 mm of center.
double angle_from_reference(Point2D center, Point2D p);

}  // namespace tractvar::geometry
