#include "tractvar/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tractvar/error.hpp"

namespace tractvar::geometry {

namespace {

std::string fmt_point(Point2D p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

Polyline::Polyline(std::vector<Point2D> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorKind::DegenerateTrace,
                "polyline needs at least 2 points, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!is_finite(points_[i])) {
      throw Error(ErrorKind::DegenerateTrace, "non-finite polyline point at index " + std::to_string(i));
    }
    if (i > 0 && points_[i] == points_[i - 1]) {
      throw Error(ErrorKind::DegenerateTrace,
                  "zero-length polyline segment at index " + std::to_string(i - 1) + " " +
                      fmt_point(points_[i]));
    }
  }
}

double distance(Point2D p, Point2D q) { return std::hypot(p.x - q.x, p.y - q.y); }

Circle circumcircle(Point2D a, Point2D b, Point2D c) {
  const Point2D ab = b - a;
  const Point2D ac = c - a;
  const double area2 = cross(ab, ac);
  if (std::abs(area2) < kCollinearTolerance) {
    throw Error(ErrorKind::CollinearPoints,
                "points " + fmt_point(a) + " " + fmt_point(b) + " " + fmt_point(c) + " are collinear");
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const double d = 2.0 * area2;
  const Point2D offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + offset, std::hypot(offset.x, offset.y)};
}

Circle fit_circle(std::span<const Point2D> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::DegenerateFit,
                "circle fit needs at least 3 points, got " + std::to_string(points.size()));
  }

  // Spread test: largest triangle on the base from the first point to the
  // point farthest from it.
  const Point2D origin = points.front();
  Point2D far = origin;
  double far_d2 = 0.0;
  for (const Point2D p : points) {
    const Point2D d = p - origin;
    if (dot(d, d) > far_d2) {
      far_d2 = dot(d, d);
      far = p;
    }
  }
  double spread = 0.0;
  for (const Point2D p : points) {
    spread = std::max(spread, std::abs(cross(far - origin, p - origin)));
  }
  if (spread < kCollinearTolerance) {
    throw Error(ErrorKind::CollinearPoints, "fit points are collinear");
  }

  // Kasa fit in centered coordinates. With sum(u) = sum(v) = 0 the offset
  // (a, b) of the center from the centroid solves the least-squares problem
  // [u v] (a, b) ~ (z - mean z) / 2, z = u^2 + v^2. Solved by QR rather than
  // normal equations so nearly coincident points only cost cond(A), not its square.
  const std::size_t count = points.size();
  const double n = static_cast<double>(count);
  Point2D mean{};
  for (const Point2D p : points) mean = mean + p;
  mean = (1.0 / n) * mean;

  std::vector<double> u(count), v(count), w(count);
  double zbar = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    u[i] = points[i].x - mean.x;
    v[i] = points[i].y - mean.y;
    w[i] = u[i] * u[i] + v[i] * v[i];
    zbar += w[i];
  }
  zbar /= n;
  for (double& x : w) x = 0.5 * (x - zbar);

  auto dotv = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  auto axpy = [](double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
  };

  // Modified Gram-Schmidt, one reorthogonalization pass.
  const double r11 = std::sqrt(dotv(u, u));
  const double total = dotv(u, u) + dotv(v, v);
  if (!(r11 > 0.0)) throw Error(ErrorKind::DegenerateFit, "circle fit least-squares system is singular");
  for (double& x : u) x /= r11;
  double r12 = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const double c = dotv(u, v);
    axpy(-c, u, v);
    r12 += c;
  }
  const double r22 = std::sqrt(dotv(v, v));
  if (!(r11 * r11 * r22 * r22 > 1e-14 * total * total)) {
    throw Error(ErrorKind::DegenerateFit, "circle fit least-squares system is singular");
  }
  for (double& x : v) x /= r22;
  const double c1 = dotv(u, w);
  axpy(-c1, u, w);
  const double c2 = dotv(v, w);
  const double b = c2 / r22;
  const double a = (c1 - r12 * b) / r11;

  // Stationarity in r^2 makes r^2 the mean squared distance to the center.
  double r2 = 0.0;
  for (const Point2D p : points) {
    const double du = p.x - mean.x - a;
    const double dv = p.y - mean.y - b;
    r2 += du * du + dv * dv;
  }
  r2 /= n;
  return {{mean.x + a, mean.y + b}, std::sqrt(r2)};
}

SegmentProjection point_segment_distance(Point2D p, Point2D a, Point2D b) {
  const Point2D ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  const Point2D q = t == 0.0 ? a : (t == 1.0 ? b : a + t * ab);
  return {distance(p, q), q};
}

ClearanceResult point_polyline_clearance(Point2D p, const Polyline& trace) {
  ClearanceResult best;
  best.distance = std::numeric_limits<double>::infinity();
  best.closest_object_point = p;
  const auto pts = trace.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const SegmentProjection s = point_segment_distance(p, pts[i], pts[i + 1]);
    if (s.distance < best.distance) {
      best.distance = s.distance;
      best.closest_trace_point = s.point;
      best.segment_index = i;
    }
  }
  return best;
}

ClearanceResult circle_polyline_clearance(const Circle& circle, const Polyline& trace) {
  ClearanceResult r = point_polyline_clearance(circle.center, trace);
  const double center_distance = r.distance;
  const Point2D dir = center_distance > 0.0
                          ? (1.0 / center_distance) * (r.closest_trace_point - circle.center)
                          : Point2D{0.0, 1.0};
  r.distance = center_distance - circle.radius;
  r.closest_object_point = circle.center + circle.radius * dir;
  return r;
}

WallHit extend_line_to_polyline(Point2D a, Point2D b, const Polyline& wall) {
  const Point2D d = b - a;
  const double dlen = std::hypot(d.x, d.y);
  if (dlen == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "ray direction is zero: " + fmt_point(a) + " == " + fmt_point(b));
  }
  constexpr double eps = 1e-12;

  std::optional<WallHit> best;
  double best_s = std::numeric_limits<double>::infinity();
  auto consider = [&](double s, Point2D point, std::size_t index) {
    if (s < best_s) {
      best_s = s;
      best = WallHit{point, index};
    }
  };

  const auto pts = wall.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point2D w0 = pts[i];
    const Point2D e = pts[i + 1] - w0;
    const double elen = std::hypot(e.x, e.y);
    const double denom = cross(d, e);
    const Point2D bw = w0 - b;

    if (std::abs(denom) <= eps * dlen * elen) {
      // Parallel: only a collinear overlap counts.
      if (std::abs(cross(bw, d)) > eps * dlen * std::max(1.0, std::hypot(bw.x, bw.y))) continue;
      const double s0 = dot(w0 - b, d) / (dlen * dlen);
      const double s1 = dot(pts[i + 1] - b, d) / (dlen * dlen);
      if (std::min(s0, s1) <= 0.0 && std::max(s0, s1) >= 0.0) {
        consider(0.0, b, i);
      } else if (std::min(s0, s1) > 0.0) {
        consider(std::min(s0, s1), s0 < s1 ? w0 : pts[i + 1], i);
      }
      continue;
    }

    const double s = cross(bw, e) / denom;
    const double u = cross(bw, d) / denom;
    if (s < -eps || u < -eps || u > 1.0 + eps) continue;
    if (s <= eps) {
      consider(0.0, b, i);
    } else {
      consider(s, w0 + std::clamp(u, 0.0, 1.0) * e, i);
    }
  }

  if (!best) {
    throw Error(ErrorKind::NoIntersection,
                "ray from " + fmt_point(b) + " away from " + fmt_point(a) + " does not meet the wall");
  }
  return *best;
}

double angle_from_reference(Point2D center, Point2D p) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  if (std::hypot(dx, dy) < 1e-9) {
    throw Error(ErrorKind::DegenerateAngle, "point " + fmt_point(p) + " coincides with reference center");
  }
  const double theta = std::atan2(dx, dy);
  return theta <= -std::numbers::pi ? std::numbers::pi : theta;
}

}  // namespace tractvar::geometry
