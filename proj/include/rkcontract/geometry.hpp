#pragma once

#include <vector>

namespace rkcontract {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double xx, double yy) : x(xx), y(yy) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double norm(const Vec2& a);

/// Closed half-plane {p : <n, p> <= c}.
struct HalfPlane {
  Vec2 n;
  double c = 0.0;

  double signed_excess(const Vec2& p) const { return dot(n, p) - c; }
  bool contains(const Vec2& p, double tol = 0.0) const { return signed_excess(p) <= tol; }
};

using Polygon = std::vector<Vec2>;  // counter-clockwise vertex list

/// Axis-aligned square centered at `center` with side `side` (the closed
/// L-infinity ball of radius side/2), counter-clockwise.
Polygon square_polygon(const Vec2& center, double side);

/// Sutherland-Hodgman clip of a convex polygon against one half-plane.
/// `tol` classifies near-boundary vertices as inside so collinear chains
/// do not produce spurious slivers.
Polygon clip(const Polygon& poly, const HalfPlane& hp, double tol);

/// Clip against several half-planes in sequence.
Polygon clip(const Polygon& poly, const std::vector<HalfPlane>& hps, double tol);

/// Shoelace area (nonnegative for counter-clockwise input).
double polygon_area(const Polygon& poly);

/// Area centroid; falls back to the vertex mean for degenerate polygons
/// whose area underflows.
Vec2 polygon_centroid(const Polygon& poly);

}  // namespace rkcontract
