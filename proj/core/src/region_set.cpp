#include "emregion/region_set.hpp"

#include <algorithm>

namespace emregion {

InequalityResiduals inequality_residuals(const CanonicalTriangle& t, Point m) {
  const SideLengths s = side_lengths(t);
  const double RA = distance_to_vertex(t, m, Vertex::A);
  const double RB = distance_to_vertex(t, m, Vertex::B);
  const double RC = distance_to_vertex(t, m, Vertex::C);
  const double ra = distance_to_side(t, m, Side::a);
  const double rb = distance_to_side(t, m, Side::b);
  const double rc = distance_to_side(t, m, Side::c);

  InequalityResiduals out;
  out.vertex_a = RA - (s.c / s.a) * rb - (s.b / s.a) * rc;
  out.vertex_b = RB - (s.c / s.b) * ra - (s.a / s.b) * rc;
  out.vertex_c = RC - (s.b / s.c) * ra - (s.a / s.c) * rb;
  out.weighted = RA + RB + RC - (s.c / s.b + s.b / s.c) * ra - (s.c / s.a + s.a / s.c) * rb -
                 (s.a / s.b + s.b / s.a) * rc;
  out.erdos_mordell = RA + RB + RC - 2.0 * (ra + rb + rc);
  out.child = RA * RB * RC - 8.0 * ra * rb * rc;
  return out;
}

double erdos_mordell_residual(const CanonicalTriangle& t, Point m) {
  const double R = distance_to_vertex(t, m, Vertex::A) + distance_to_vertex(t, m, Vertex::B) +
                   distance_to_vertex(t, m, Vertex::C);
  const double r = distance_to_side(t, m, Side::a) + distance_to_side(t, m, Side::b) +
                   distance_to_side(t, m, Side::c);
  return R - 2.0 * r;
}

double weighted_em_residual(const CanonicalTriangle& t, Point m) {
  return inequality_residuals(t, m).weighted;
}

double child_residual(const CanonicalTriangle& t, Point m) {
  return inequality_residuals(t, m).child;
}

bool RegionPolygon::contains(Point m, double tol) const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    const Point e = b - a;
    if (cross(e, m - a) < -tol * norm(e)) return false;
  }
  return true;
}

double RegionPolygon::area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    twice += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  return 0.5 * twice;
}

VertexWedge vertex_wedge(const CanonicalTriangle& t, const VertexFrame& frame) {
  VertexWedge w;
  w.vertex = frame.vertex();
  w.apex = t.vertex(frame.vertex());
  const VertexSlopeAnalysis& a = frame.analysis();
  if (a.angle.kind != AngleKind::Acute || !a.k2 || !a.k3) return w;
  w.whole_plane = false;
  const Isometry back = frame.to_frame().inverse();
  w.first_direction = back.apply_direction(a.k2->direction());
  w.second_direction = back.apply_direction(a.k3->direction());
  return w;
}

namespace {

// Keeps the part of a convex polygon where cross(dir, x - origin) * side >= 0.
std::vector<Point> clip(const std::vector<Point>& poly, Point origin, Point dir, double side) {
  auto value = [&](Point x) { return side * cross(dir, x - origin); };
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = poly[i];
    const Point nxt = poly[(i + 1) % n];
    const double vc = value(cur);
    const double vn = value(nxt);
    if (vc >= 0.0) out.push_back(cur);
    if ((vc >= 0.0) != (vn >= 0.0)) {
      const double s = vc / (vc - vn);
      out.push_back(cur + s * (nxt - cur));
    }
  }
  return out;
}

std::vector<Point> simplify(const std::vector<Point>& poly, double tol) {
  std::vector<Point> pts;
  for (Point x : poly) {
    if (pts.empty() || distance(pts.back(), x) > tol) pts.push_back(x);
  }
  while (pts.size() > 1 && distance(pts.front(), pts.back()) <= tol) pts.pop_back();

  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point prev = pts[(i + pts.size() - 1) % pts.size()];
      const Point next = pts[(i + 1) % pts.size()];
      const Point e = next - prev;
      if (std::abs(cross(e, pts[i] - prev)) <= tol * norm(e)) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return pts;
}

RegionPolygon build_polygon(const CanonicalTriangle& t, const std::array<VertexWedge, 3>& wedges,
                            double clip_factor) {
  const Point g = t.centroid();
  const double half = clip_factor * t.circumradius();
  std::vector<Point> poly{{g.x - half, g.y - half},
                          {g.x + half, g.y - half},
                          {g.x + half, g.y + half},
                          {g.x - half, g.y + half}};

  RegionPolygon out;
  for (const VertexWedge& w : wedges) {
    if (w.whole_plane) continue;
    out.apexes.push_back(w.vertex);
    for (Point dir : {w.first_direction, w.second_direction}) {
      const double side = cross(dir, g - w.apex) >= 0.0 ? 1.0 : -1.0;
      poly = clip(poly, w.apex, dir, side);
    }
  }

  const double tol = 1e-9 * t.scale();
  for (std::size_t i = 0; i < wedges.size(); ++i) {
    for (std::size_t j = i + 1; j < wedges.size(); ++j) {
      if (wedges[i].whole_plane || wedges[j].whole_plane) continue;
      for (Point d1 : {wedges[i].first_direction, wedges[i].second_direction}) {
        for (Point d2 : {wedges[j].first_direction, wedges[j].second_direction}) {
          if (std::abs(cross(d1, d2)) <= 1e-9 &&
              std::abs(cross(d1, wedges[j].apex - wedges[i].apex)) <= tol) {
            out.coincident_edges = true;
          }
        }
      }
    }
  }
  out.vertices = simplify(poly, tol);
  for (Point v : out.vertices) {
    if (std::abs(v.x - g.x) >= half * (1 - 1e-9) || std::abs(v.y - g.y) >= half * (1 - 1e-9)) {
      out.bounded = false;
    }
  }
  return out;
}

}  // namespace

TriangleRegions::TriangleRegions(const CanonicalTriangle& t)
    : triangle_(t),
      frames_{VertexFrame(t, Vertex::A), VertexFrame(t, Vertex::B), VertexFrame(t, Vertex::C)},
      wedges_{vertex_wedge(t, frames_[0]), vertex_wedge(t, frames_[1]),
              vertex_wedge(t, frames_[2])},
      polygon_(build_polygon(t, wedges_, 1e4)) {}

MembershipReport TriangleRegions::membership(Point m) const {
  MembershipReport rep;
  rep.point = m;
  const MembershipVerdict va = frames_[0].classify(m);
  const MembershipVerdict vb = frames_[1].classify(m);
  const MembershipVerdict vc = frames_[2].classify(m);
  rep.in_EA = va.member;
  rep.in_EB = vb.member;
  rep.in_EC = vc.member;
  rep.in_E = rep.in_EA && rep.in_EB && rep.in_EC;
  rep.in_M = polygon_.contains(m);
  rep.relative = {va.relative_residual, vb.relative_residual, vc.relative_residual};

  rep.residuals = inequality_residuals(triangle_, m);
  const double per = triangle_.perimeter();
  const InequalityResiduals& r = rep.residuals;
  rep.normalized = {r.vertex_a / per,      r.vertex_b / per,      r.vertex_c / per,
                    r.weighted / per,      r.erdos_mordell / per, r.child / (per * per * per)};
  return rep;
}

MembershipReport membership(const CanonicalTriangle& t, Point m) {
  return TriangleRegions(t).membership(m);
}

RegionPolygon m_polygon(const CanonicalTriangle& t, double clip_factor) {
  const std::array<VertexFrame, 3> frames{VertexFrame(t, Vertex::A), VertexFrame(t, Vertex::B),
                                          VertexFrame(t, Vertex::C)};
  const std::array<VertexWedge, 3> wedges{vertex_wedge(t, frames[0]), vertex_wedge(t, frames[1]),
                                          vertex_wedge(t, frames[2])};
  return build_polygon(t, wedges, clip_factor);
}

}  // namespace emregion
