#include "geocut/geometry.hpp"

#include <cmath>

namespace geocut {

Rectangle::Rectangle(double xMin, double xMax, double yMin, double yMax)
    : xMin(xMin), xMax(xMax), yMin(yMin), yMax(yMax) {
  if (!(std::isfinite(xMin) && std::isfinite(xMax) && std::isfinite(yMin) &&
        std::isfinite(yMax))) {
    throw InvalidArgument("rectangle bounds must be finite");
  }
  if (!(xMin < xMax && yMin < yMax)) {
    throw InvalidArgument("rectangle must have positive width and height");
  }
}

Rectangle Rectangle::inset(double margin) const {
  if (!(margin >= 0.0) || !std::isfinite(margin)) {
    throw InvalidArgument("inset margin must be finite and nonnegative");
  }
  if (width() <= 2.0 * margin || height() <= 2.0 * margin) {
    throw DegenerateRec("admissible center region is empty: rectangle sides must exceed 2r");
  }
  return Rectangle(xMin + margin, xMax - margin, yMin + margin, yMax - margin);
}

CircularCut::CircularCut(Point center, double radius) : center(center), radius(radius) {
  if (!finite(center)) throw InvalidArgument("cut center must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("cut radius must be positive and finite");
  }
}

double pointSegmentDistanceSquared(Point p, Point a, Point b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  if (len2 <= 0.0) return squaredDistance(p, a);
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  const Point closest{a.x + t * abx, a.y + t * aby};
  return squaredDistance(p, closest);
}

LinkClass classifyLink(Point u, Point v, const CircularCut& cut) {
  const bool uIn = cut.containsPoint(u);
  const bool vIn = cut.containsPoint(v);
  if (uIn && vIn) return LinkClass::Alpha;
  if (uIn || vIn) return LinkClass::Beta;
  return segmentIntersectsDisk(u, v, cut) ? LinkClass::Gamma : LinkClass::Untouched;
}

std::pair<Point, Point> tangentPoints(Point u, const CircularCut& cut) {
  if (!finite(u)) throw InvalidArgument("tangent source must be finite");
  const double ux = u.x - cut.center.x;
  const double uy = u.y - cut.center.y;
  const double d2 = ux * ux + uy * uy;
  const double rr = cut.radius + kGeomTol;
  if (d2 <= rr * rr) {
    throw SourceInsideDisk("tangent source lies on or inside the closed disk");
  }
  // Tangent points sit at distance r^2/d from the center along the axis to
  // u, displaced by r*sqrt(d^2-r^2)/d perpendicular to it.
  const double r2 = cut.radius * cut.radius;
  const double invD2 = 1.0 / d2;
  const double axial = r2 * invD2;
  const double lateral = cut.radius * std::sqrt(d2 - r2) * invD2;
  const double bx = cut.center.x + axial * ux;
  const double by = cut.center.y + axial * uy;
  // Counterclockwise perpendicular of (ux, uy) is (-uy, ux).
  const Point ccw{bx - lateral * uy, by + lateral * ux};
  const Point cw{bx + lateral * uy, by - lateral * ux};
  return {ccw, cw};
}

ShadowRegion::ShadowRegion(Point source, const CircularCut& cut, const Rectangle& boundingRect)
    : source_(source),
      cut_(cut),
      rect_(boundingRect),
      tangents_(geocut::tangentPoints(source, cut)),
      wx_(cut.center.x - source.x),
      wy_(cut.center.y - source.y),
      d2_(wx_ * wx_ + wy_ * wy_),
      chord_(d2_ - cut.radius * cut.radius) {}

bool ShadowRegion::contains(Point v) const {
  if (!finite(v)) throw InvalidArgument("shadow query point must be finite");
  if (cut_.containsPoint(v)) {
    throw PointInsideDisk("shadow membership queried for a point inside the closed disk");
  }
  return containsUnchecked(v.x, v.y);
}

}  // namespace geocut
