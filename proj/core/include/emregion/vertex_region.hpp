#pragma once

#include <array>
#include <compare>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "emregion/geometry.hpp"

namespace emregion {

/// Slope of a line through the focus vertex; the vertical line is an explicit infinity that
/// orders after every finite slope.
class ExtendedSlope {
 public:
  static ExtendedSlope finite(double k);
  static ExtendedSlope infinity() { return ExtendedSlope(std::numeric_limits<double>::infinity()); }
  /// Slope of the line with direction d; d.x == 0 gives infinity.
  static ExtendedSlope of_direction(Point d);

  bool is_infinite() const { return std::isinf(k_); }
  /// The finite value, or +inf for the vertical line.
  double value() const { return k_; }
  /// Unit direction (1, k)/|(1, k)|, or (0, 1) for the vertical line.
  Point direction() const;

  friend auto operator<=>(ExtendedSlope a, ExtendedSlope b) { return a.k_ <=> b.k_; }
  friend bool operator==(ExtendedSlope a, ExtendedSlope b) = default;

 private:
  explicit ExtendedSlope(double k) : k_(k) {}
  double k_;
};

std::string to_string(ExtendedSlope k);

enum class CornerArea { alpha1, alpha2, alpha3, alpha4 };

std::string to_string(CornerArea a);

struct SlopeCoefficients {
  double lambda = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
};

/// P(k) = a_hat k^2 + b_hat k + c_hat.
struct Trinomial {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double c_hat = 0.0;

  double operator()(double k) const { return (a_hat * k + b_hat) * k + c_hat; }
};

struct K1Slope {
  ExtendedSlope slope = ExtendedSlope::infinity();
  bool valid = false;
};

struct AhatRoots {
  std::optional<double> r1, r2, r3, r4;
};

class NoRealRoots : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Everything needed to classify slopes through vertex A. Computed on the normalized triangle
/// (max(|p|,|q|,|r|) == 1); slopes are invariant under the normalization.
struct VertexSlopeAnalysis {
  CanonicalTriangle triangle;
  SlopeCoefficients coefficients;
  Trinomial trinomial;
  K1Slope k1;
  std::optional<ExtendedSlope> k2;
  std::optional<ExtendedSlope> k3;
  AngleClass angle;
  int ahat_sign = 0;
  /// Whether every returned critical slope satisfies +-(delta k + epsilon) >= -1e-9 for the
  /// sign of its corner area.
  bool sign_condition_ok = true;
};

inline constexpr double kAhatZeroBand = 1e-9;
inline constexpr double kSignConditionSlack = 1e-9;

SlopeCoefficients slope_coefficients(const CanonicalTriangle& t);

/// Factored coefficients (lambda^2 - delta^2, -2 delta epsilon, lambda^2 - epsilon^2).
Trinomial trinomial(const CanonicalTriangle& t);

/// a_hat from its expanded polynomial in p, q, r.
double expanded_a_hat(const CanonicalTriangle& t);
double expanded_a_hat(double p, double q, double r);

CornerArea corner_area_of_slope(const CanonicalTriangle& t, ExtendedSlope k);

/// Corner areas attained by some slope in the extended reals.
std::set<CornerArea> corner_area_existence(const CanonicalTriangle& t);

/// The unique slope of the interior double wedge on which the slope inequality is an equality.
K1Slope k1_slope(const CanonicalTriangle& t);

/// Values of r making a_hat vanish for fixed p, q. Throws NotApplicable when p q <= 0 and
/// NoRealRoots when (q - p)^4 < 16 p^2 q^2.
AhatRoots ahat_roots(double p, double q);
inline AhatRoots ahat_roots(const CanonicalTriangle& t) { return ahat_roots(t.p(), t.q()); }

VertexSlopeAnalysis critical_slopes(const CanonicalTriangle& t);

/// Classifies a slope with the critical-slope intervals.
bool slope_inequality_holds(const VertexSlopeAnalysis& analysis, ExtendedSlope k);
bool slope_inequality_holds(const CanonicalTriangle& t, ExtendedSlope k);

/// lambda * sqrt(1 + k^2) - ((r^2+p^2)|-qk-r| + (r^2+q^2)|pk+r|), both sides divided by
/// sqrt(1 + k^2) so the vertical line is the finite limit.
double slope_inequality_residual(const CanonicalTriangle& t, ExtendedSlope k);

struct MembershipVerdict {
  bool member = false;
  /// LHS - RHS of the polynomial-free form |q-p| c b R_A >= c^2 |..| + b^2 |..| in the
  /// vertex frame.
  double residual = 0.0;
  /// (LHS - RHS) / (LHS + RHS); depends only on the line through the vertex.
  double relative_residual = 0.0;
  bool at_vertex = false;
  ExtendedSlope slope = ExtendedSlope::infinity();
};

/// Membership in the region of the vertex-A inequality a R_A >= c r_b + b r_c, classified through the slope of line A m.
MembershipVerdict point_in_EA(const CanonicalTriangle& t, Point m);
MembershipVerdict point_in_EA(const CanonicalTriangle& t, const VertexSlopeAnalysis& analysis,
                              Point m);

/// Per-vertex frame: canonical placement of the triangle with `vertex` on the y-axis.
class VertexFrame {
 public:
  VertexFrame(const CanonicalTriangle& t, Vertex vertex);

  Vertex vertex() const { return vertex_; }
  const CanonicalTriangle& frame() const { return frame_; }
  /// Maps points of the A-frame into this vertex frame.
  const Isometry& to_frame() const { return to_frame_; }
  const VertexSlopeAnalysis& analysis() const { return analysis_; }

  MembershipVerdict classify(Point m) const;

 private:
  VertexFrame(Vertex vertex, std::pair<CanonicalTriangle, Isometry> placed);

  Vertex vertex_;
  CanonicalTriangle frame_;
  Isometry to_frame_;
  VertexSlopeAnalysis analysis_;
};

MembershipVerdict point_in_EB(const CanonicalTriangle& t, Point m);
MembershipVerdict point_in_EC(const CanonicalTriangle& t, Point m);
MembershipVerdict point_in_vertex_region(const CanonicalTriangle& t, Point m, Vertex v);

}  // namespace emregion
