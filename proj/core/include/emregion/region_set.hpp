#pragma once

#include <array>
#include <vector>

#include "emregion/geometry.hpp"
#include "emregion/vertex_region.hpp"

namespace emregion {

/// Signed LHS - RHS of each inequality at one point. Degree-1 quantities are in length units;
/// `child` is in length^3.
struct InequalityResiduals {
  double vertex_a = 0.0;       // R_A >= (c/a) r_b + (b/a) r_c
  double vertex_b = 0.0;       // R_B >= (c/b) r_a + (a/b) r_c
  double vertex_c = 0.0;       // R_C >= (b/c) r_a + (a/c) r_b
  double weighted = 0.0;       // sum R >= (c/b + b/c) r_a + (c/a + a/c) r_b + (a/b + b/a) r_c
  double erdos_mordell = 0.0;  // sum R >= 2 sum r
  double child = 0.0;          // R_A R_B R_C >= 8 r_a r_b r_c
};

struct MembershipReport {
  Point point;
  bool in_EA = false;
  bool in_EB = false;
  bool in_EC = false;
  bool in_E = false;
  bool in_M = false;
  InequalityResiduals residuals;
  /// Degree-1 residuals divided by the perimeter, `child` by the perimeter cubed.
  InequalityResiduals normalized;
  /// Per-vertex relative residuals (LHS - RHS) / (LHS + RHS) in each vertex frame.
  std::array<double, 3> relative{};
};

/// Convex polygon, counter-clockwise.
struct RegionPolygon {
  std::vector<Point> vertices;
  bool convex = true;
  /// False when a constraint is missing in some direction and the polygon hit the clip box.
  bool bounded = true;
  /// Two wedges share a boundary line (a right angle makes the opposite side critical for
  /// both other vertices), so the count drops below the generic 4 or 6.
  bool coincident_edges = false;
  /// Vertices whose wedge constrained the polygon (acute angle there).
  std::vector<Vertex> apexes;

  bool contains(Point m, double tol = 0.0) const;
  double area() const;
};

/// Maximal double wedge of valid lines through one vertex that contains the triangle.
struct VertexWedge {
  Vertex vertex = Vertex::A;
  Point apex;
  /// No constraint: right or obtuse angle at the vertex.
  bool whole_plane = true;
  /// Boundary line directions in the A-frame.
  Point first_direction;
  Point second_direction;
};

InequalityResiduals inequality_residuals(const CanonicalTriangle& t, Point m);

double erdos_mordell_residual(const CanonicalTriangle& t, Point m);
double weighted_em_residual(const CanonicalTriangle& t, Point m);
double child_residual(const CanonicalTriangle& t, Point m);

/// Precomputed per-vertex frames and the polygon M for repeated point queries.
class TriangleRegions {
 public:
  explicit TriangleRegions(const CanonicalTriangle& t);

  const CanonicalTriangle& triangle() const { return triangle_; }
  const VertexFrame& frame(Vertex v) const { return frames_[static_cast<int>(v)]; }
  const VertexWedge& wedge(Vertex v) const { return wedges_[static_cast<int>(v)]; }
  const RegionPolygon& m_polygon() const { return polygon_; }

  MembershipReport membership(Point m) const;

 private:
  CanonicalTriangle triangle_;
  std::array<VertexFrame, 3> frames_;
  std::array<VertexWedge, 3> wedges_;
  RegionPolygon polygon_;
};

MembershipReport membership(const CanonicalTriangle& t, Point m);

VertexWedge vertex_wedge(const CanonicalTriangle& t, const VertexFrame& frame);

/// Intersection of the three valid wedges, clipped to a square of half-width
/// `clip_factor` circumradii around the centroid.
RegionPolygon m_polygon(const CanonicalTriangle& t, double clip_factor = 1e4);

}  // namespace emregion
