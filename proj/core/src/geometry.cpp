#include "emregion/geometry.hpp"

#include <algorithm>

namespace emregion {

CanonicalTriangle::CanonicalTriangle(double p, double q, double r) : p_(p), q_(q), r_(r) {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(r)) {
    throw DegenerateTriangle("triangle parameters must be finite");
  }
  if (!(p < q)) throw DegenerateTriangle("canonical frame requires p < q");
  if (r == 0.0) throw DegenerateTriangle("canonical frame requires r != 0");
}

Point CanonicalTriangle::vertex(Vertex v) const {
  switch (v) {
    case Vertex::A: return A();
    case Vertex::B: return B();
    case Vertex::C: return C();
  }
  return A();
}

double CanonicalTriangle::scale() const {
  return std::max({std::abs(p_), std::abs(q_), std::abs(r_)});
}

double CanonicalTriangle::perimeter() const {
  const SideLengths s = side_lengths(*this);
  return s.a + s.b + s.c;
}

double CanonicalTriangle::circumradius() const {
  const SideLengths s = side_lengths(*this);
  return s.a * s.b * s.c / (4.0 * area());
}

SideLengths side_lengths(const CanonicalTriangle& t) {
  return {t.q() - t.p(), std::hypot(t.r(), t.q()), std::hypot(t.r(), t.p())};
}

namespace {

Point rotate(double angle, Point v) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Point mirror(Point v) { return {-v.x, v.y}; }

}  // namespace

Point Isometry::apply_direction(Point d) const {
  return scale * rotate(rotation, reflect ? mirror(d) : d);
}

Point Isometry::apply(Point m) const { return apply_direction(m) + translation; }

Isometry Isometry::inverse() const {
  Isometry inv;
  inv.reflect = reflect;
  // F R(-theta) = R(theta) F, so a mirrored map keeps its angle when inverted.
  inv.rotation = reflect ? rotation : -rotation;
  inv.scale = 1.0 / scale;
  inv.translation = -1.0 * inv.apply_direction(translation);
  return inv;
}

Point Isometry::apply_inverse(Point m) const { return inverse().apply(m); }

Point Isometry::apply_inverse_direction(Point d) const {
  return inverse().apply_direction(d);
}

Isometry Isometry::compose(const Isometry& first) const {
  Isometry out;
  out.reflect = reflect != first.reflect;
  out.rotation = rotation + (reflect ? -first.rotation : first.rotation);
  out.scale = scale * first.scale;
  out.translation = apply(first.translation);
  return out;
}

std::pair<CanonicalTriangle, Isometry> canonicalize(Point A, Point B, Point C, Vertex focus) {
  for (Point v : {A, B, C}) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw DegenerateTriangle("vertex coordinates must be finite");
    }
  }
  const double longest = std::max({distance(A, B), distance(B, C), distance(C, A)});
  const double twice_area = std::abs(cross(B - A, C - A));
  if (longest == 0.0 || twice_area <= 1e-12 * longest * longest) {
    throw DegenerateTriangle("vertices are collinear or coincident");
  }

  Point apex, first, second;
  switch (focus) {
    case Vertex::A: apex = A; first = B; second = C; break;
    case Vertex::B: apex = B; first = C; second = A; break;
    case Vertex::C: apex = C; first = A; second = B; break;
  }

  const double base = distance(first, second);
  const Point dir = (1.0 / base) * (second - first);
  const double along = dot(apex - first, dir);
  const Point foot = first + along * dir;
  const Point normal{-dir.y, dir.x};
  const double height = dot(apex - foot, normal);

  Isometry iso;
  iso.reflect = height < 0.0;
  iso.rotation = iso.reflect ? std::atan2(-dir.y, -dir.x) : std::atan2(-dir.y, dir.x);
  iso.translation = -1.0 * iso.apply_direction(foot);

  return {CanonicalTriangle(-along, base - along, std::abs(height)), iso};
}

std::pair<CanonicalTriangle, Isometry> normalize(const CanonicalTriangle& t) {
  const double s = 1.0 / t.scale();
  Isometry iso;
  iso.scale = s;
  return {CanonicalTriangle(t.p() * s, t.q() * s, t.r() * s), iso};
}

double distance_to_vertex(const CanonicalTriangle& t, Point m, Vertex v) {
  return distance(m, t.vertex(v));
}

double distance_to_side(const CanonicalTriangle& t, Point m, Side side) {
  const double p = t.p(), q = t.q(), r = t.r();
  switch (side) {
    case Side::a: return std::abs(m.y);
    case Side::b: return std::abs(-q * m.y - r * m.x + q * r) / std::hypot(r, q);
    case Side::c: return std::abs(p * m.y + r * m.x - p * r) / std::hypot(r, p);
  }
  return 0.0;
}

AngleClass angle_class_at_A(const CanonicalTriangle& t) {
  const double disc = t.r() * t.r() + t.p() * t.q();
  const double s = t.scale();
  const double normalized = disc / (s * s);
  AngleKind kind = AngleKind::Right;
  if (normalized > kRightAngleTolerance) {
    kind = AngleKind::Acute;
  } else if (normalized < -kRightAngleTolerance) {
    kind = AngleKind::Obtuse;
  }
  return {kind, disc};
}

std::string to_string(AngleKind k) {
  switch (k) {
    case AngleKind::Acute: return "acute";
    case AngleKind::Right: return "right";
    case AngleKind::Obtuse: return "obtuse";
  }
  return "?";
}

std::string to_string(Vertex v) {
  switch (v) {
    case Vertex::A: return "A";
    case Vertex::B: return "B";
    case Vertex::C: return "C";
  }
  return "?";
}

}  // namespace emregion
