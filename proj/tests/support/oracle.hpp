#pragma once

// Direct evaluation of the inequalities from raw vertex coordinates. Nothing here goes through
// the canonical frame or the slope analysis, so it can serve as an independent check on both.

#include <algorithm>
#include <cmath>
#include <random>

#include "emregion/geometry.hpp"

namespace oracle {

using emregion::Point;

struct Triangle {
  Point A, B, C;
};

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Line through P, Q written as n.x X + n.y Y + d = 0.
inline double line_distance(Point m, Point P, Point Q) {
  const double nx = P.y - Q.y;
  const double ny = Q.x - P.x;
  const double d = -(nx * P.x + ny * P.y);
  return std::abs(nx * m.x + ny * m.y + d) / std::hypot(nx, ny);
}

struct Distances {
  double RA, RB, RC, ra, rb, rc, a, b, c;
};

inline Distances distances(const Triangle& t, Point m) {
  return {dist(m, t.A), dist(m, t.B), dist(m, t.C),
          line_distance(m, t.B, t.C), line_distance(m, t.C, t.A), line_distance(m, t.A, t.B),
          dist(t.B, t.C), dist(t.C, t.A), dist(t.A, t.B)};
}

struct Sides {
  double lhs, rhs;
  double relative() const { return lhs + rhs > 0 ? (lhs - rhs) / (lhs + rhs) : 0.0; }
  bool holds() const { return lhs >= rhs; }
};

// a R_A >= c r_b + b r_c and its rotations.
inline Sides vertex_inequality(const Triangle& t, Point m, int vertex) {
  const Distances d = distances(t, m);
  switch (vertex) {
    case 0: return {d.a * d.RA, d.c * d.rb + d.b * d.rc};
    case 1: return {d.b * d.RB, d.c * d.ra + d.a * d.rc};
    default: return {d.c * d.RC, d.b * d.ra + d.a * d.rb};
  }
}

inline double em(const Triangle& t, Point m) {
  const Distances d = distances(t, m);
  return d.RA + d.RB + d.RC - 2 * (d.ra + d.rb + d.rc);
}

inline double weighted(const Triangle& t, Point m) {
  const Distances d = distances(t, m);
  return d.RA + d.RB + d.RC - (d.c / d.b + d.b / d.c) * d.ra - (d.c / d.a + d.a / d.c) * d.rb -
         (d.a / d.b + d.b / d.a) * d.rc;
}

inline double child(const Triangle& t, Point m) {
  const Distances d = distances(t, m);
  return d.RA * d.RB * d.RC - 8 * d.ra * d.rb * d.rc;
}

inline double perimeter(const Triangle& t) {
  return dist(t.A, t.B) + dist(t.B, t.C) + dist(t.C, t.A);
}

inline double circumradius(const Triangle& t) {
  const double a = dist(t.B, t.C), b = dist(t.C, t.A), c = dist(t.A, t.B);
  const double area2 = std::abs((t.B.x - t.A.x) * (t.C.y - t.A.y) - (t.C.x - t.A.x) * (t.B.y - t.A.y));
  return a * b * c / (2 * area2);
}

inline Triangle from_canonical(const emregion::CanonicalTriangle& t) {
  return {t.A(), t.B(), t.C()};
}

// Vertices uniform in [-1, 1]^2, rejecting slivers whose smallest angle is below ~3 degrees.
template <class Rng>
Triangle random_triangle(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    Triangle t{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const double a = dist(t.B, t.C), b = dist(t.C, t.A), c = dist(t.A, t.B);
    const double area2 =
        std::abs((t.B.x - t.A.x) * (t.C.y - t.A.y) - (t.C.x - t.A.x) * (t.B.y - t.A.y));
    const double min_sin = area2 / std::max({a * b, b * c, c * a});
    if (min_sin > 0.05) return t;
  }
}

// Uniform point of the triangle via barycentric folding.
template <class Rng>
Point interior_point(const Triangle& t, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), w = u(rng);
  if (s + w > 1.0) {
    s = 1.0 - s;
    w = 1.0 - w;
  }
  return {t.A.x + s * (t.B.x - t.A.x) + w * (t.C.x - t.A.x),
          t.A.y + s * (t.B.y - t.A.y) + w * (t.C.y - t.A.y)};
}

}  // namespace oracle
