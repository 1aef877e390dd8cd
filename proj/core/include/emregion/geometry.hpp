#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace emregion {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

enum class Vertex { A, B, C };
enum class Side { a, b, c };

/// Thrown for collinear or coincident vertices and for frames violating p < q, r != 0.
class DegenerateTriangle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Triangle with vertices A(0, r), B(p, 0), C(q, 0), p < q, r != 0.
class CanonicalTriangle {
 public:
  /// Throws DegenerateTriangle unless p < q, r != 0 and all values are finite.
  CanonicalTriangle(double p, double q, double r);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return r_; }

  Point A() const { return {0.0, r_}; }
  Point B() const { return {p_, 0.0}; }
  Point C() const { return {q_, 0.0}; }
  Point vertex(Vertex v) const;

  /// max(|p|, |q|, |r|).
  double scale() const;
  double perimeter() const;
  double area() const { return 0.5 * (q_ - p_) * std::abs(r_); }
  Point centroid() const { return {(p_ + q_) / 3.0, r_ / 3.0}; }
  double circumradius() const;

 private:
  double p_;
  double q_;
  double r_;
};

struct SideLengths {
  double a = 0.0;  // |BC|
  double b = 0.0;  // |CA|
  double c = 0.0;  // |AB|
};

SideLengths side_lengths(const CanonicalTriangle& t);

/// Similarity x -> scale * R(rotation) * F(x) + translation, where F mirrors x -> -x when
/// `reflect` is set. With scale == 1 this is an isometry.
struct Isometry {
  double rotation = 0.0;
  Point translation{};
  bool reflect = false;
  double scale = 1.0;

  Point apply(Point m) const;
  /// Linear part only (directions).
  Point apply_direction(Point d) const;
  Point apply_inverse(Point m) const;
  Point apply_inverse_direction(Point d) const;
  Isometry inverse() const;
  /// this applied after `first`.
  Isometry compose(const Isometry& first) const;
};

/// Rigid motion placing `focus` at (0, r) with r > 0 and the opposite side on the x-axis.
/// The remaining vertices keep their cyclic order: focus A puts B at p and C at q, focus B
/// puts C at p and A at q, focus C puts A at p and B at q.
std::pair<CanonicalTriangle, Isometry> canonicalize(Point A, Point B, Point C, Vertex focus);

/// Uniform scaling so that max(|p|, |q|, |r|) == 1; the returned isometry carries the factor.
std::pair<CanonicalTriangle, Isometry> normalize(const CanonicalTriangle& t);

double distance_to_vertex(const CanonicalTriangle& t, Point m, Vertex v);
inline double distance_to_vertex_A(const CanonicalTriangle& t, Point m) {
  return distance_to_vertex(t, m, Vertex::A);
}
/// Unsigned distance from m to the line carrying the given side.
double distance_to_side(const CanonicalTriangle& t, Point m, Side side);

enum class AngleKind { Acute, Right, Obtuse };

struct AngleClass {
  AngleKind kind = AngleKind::Acute;
  double discriminant = 0.0;  // r^2 + pq
};

inline constexpr double kRightAngleTolerance = 1e-9;

/// Classifies the angle at A by the sign of r^2 + pq, evaluated on the normalized triangle
/// with band kRightAngleTolerance. `discriminant` is reported in the triangle's own units.
AngleClass angle_class_at_A(const CanonicalTriangle& t);

std::string to_string(AngleKind k);
std::string to_string(Vertex v);

}  // namespace emregion
