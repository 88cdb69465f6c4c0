#pragma once

#include <cmath>
#include <utility>

#include "geocut/errors.hpp"

namespace geocut {

/// Absolute tolerance for geometric boundary comparisons, in model length
/// units. Values within this distance of a boundary are classified as
/// touching; all disk predicates use closed-disk semantics.
inline constexpr double kGeomTol = 1e-12;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squaredDistance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squaredDistance(a, b)); }

inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned rectangle [xMin,xMax] x [yMin,yMax] with positive area.
struct Rectangle {
  double xMin, xMax, yMin, yMax;

  Rectangle(double xMin, double xMax, double yMin, double yMax);

  double width() const { return xMax - xMin; }
  double height() const { return yMax - yMin; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }

  bool contains(Point p) const {
    return p.x >= xMin - kGeomTol && p.x <= xMax + kGeomTol && p.y >= yMin - kGeomTol &&
           p.y <= yMax + kGeomTol;
  }

  /// Inset by `margin` on every side; throws DegenerateRec when the result
  /// would be empty. Used for the admissible cut-center region Rec_r.
  Rectangle inset(double margin) const;
};

/// Closed disk of positive radius; destroys every link intersecting it.
struct CircularCut {
  Point center;
  double radius;

  CircularCut(Point center, double radius);

  /// Closed-disk membership: points within kGeomTol of the circle count as
  /// inside.
  bool containsPoint(Point p) const {
    const double rr = radius + kGeomTol;
    return squaredDistance(p, center) <= rr * rr;
  }

  /// True when the whole closed disk lies inside `rec`.
  bool insideRectangle(const Rectangle& rec) const {
    return center.x - radius >= rec.xMin - kGeomTol && center.x + radius <= rec.xMax + kGeomTol &&
           center.y - radius >= rec.yMin - kGeomTol && center.y + radius <= rec.yMax + kGeomTol;
  }
};

enum class LinkClass { Alpha, Beta, Gamma, Untouched };

/// Squared distance from p to the closed segment [a, b].
double pointSegmentDistanceSquared(Point p, Point a, Point b);

inline double pointSegmentDistance(Point p, Point a, Point b) {
  return std::sqrt(pointSegmentDistanceSquared(p, a, b));
}

/// True iff the closed segment [u, v] meets the closed disk (tangential
/// touching counts).
inline bool segmentIntersectsDisk(Point u, Point v, const CircularCut& cut) {
  const double rr = cut.radius + kGeomTol;
  return pointSegmentDistanceSquared(cut.center, u, v) <= rr * rr;
}

/// Exclusive link taxonomy: Alpha (both endpoints inside), Beta (exactly
/// one inside), Gamma (both outside, segment crosses), Untouched.
LinkClass classifyLink(Point u, Point v, const CircularCut& cut);

/// The two points where lines through u touch the circle. Requires u
/// strictly outside the closed disk (throws SourceInsideDisk otherwise).
/// The first point is on the counterclockwise side of the ray center->u.
std::pair<Point, Point> tangentPoints(Point u, const CircularCut& cut);

/// Shadow region K_u of a source point u relative to a cut: the set of
/// points v outside the disk whose segment (u, v) crosses the disk. The
/// segment-intersection test is the ground truth; this class caches the
/// tangent geometry so many membership queries run as two comparisons,
/// falling back to the exact segment test only near decision boundaries.
class ShadowRegion {
 public:
  ShadowRegion(Point source, const CircularCut& cut, const Rectangle& boundingRect);

  Point source() const { return source_; }
  const CircularCut& cut() const { return cut_; }
  const Rectangle& boundingRect() const { return rect_; }
  const std::pair<Point, Point>& tangentPoints() const { return tangents_; }

  /// Membership test; throws PointInsideDisk when v is in the closed disk.
  bool contains(Point v) const;

  /// Hot-path membership test. Caller guarantees (vx, vy) is outside the
  /// closed disk.
  bool containsUnchecked(double vx, double vy) const {
    // v is in K_u iff it lies in the closed tangent wedge from the source
    // and beyond the tangent-point chord. Both conditions reduce to
    // comparisons against chord_ = d^2 - r^2 > 0; a small relative band
    // around each boundary is routed to the exact segment test.
    const double sx = vx - source_.x;
    const double sy = vy - source_.y;
    const double dot = sx * wx_ + sy * wy_;
    const double s2 = sx * sx + sy * sy;
    const double cone = dot * dot - s2 * chord_;
    const double far = dot - chord_;
    const double bandCone = kBand * s2 * d2_;
    const double bandFar = kBand * (s2 + d2_);
    if (cone > bandCone && far > bandFar) return true;
    if (cone < -bandCone || far < -bandFar) return false;
    return segmentIntersectsDisk(source_, Point{vx, vy}, cut_);
  }

 private:
  static constexpr double kBand = 1e-9;

  Point source_;
  CircularCut cut_;
  Rectangle rect_;
  std::pair<Point, Point> tangents_;
  double wx_, wy_;  // source -> center
  double d2_;       // squared source-center distance
  double chord_;    // d2 - r^2
};

/// Membership predicate: v is in K_u iff segment (source, v) crosses the
/// disk.
inline bool shadowContains(const ShadowRegion& shadow, Point v) { return shadow.contains(v); }

}  // namespace geocut
