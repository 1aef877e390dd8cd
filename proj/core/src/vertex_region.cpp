#include "emregion/vertex_region.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace emregion {

ExtendedSlope ExtendedSlope::finite(double k) {
  if (!std::isfinite(k)) throw std::invalid_argument("finite slope expected");
  return ExtendedSlope(k);
}

ExtendedSlope ExtendedSlope::of_direction(Point d) {
  if (d.x == 0.0) return infinity();
  return ExtendedSlope(d.y / d.x);
}

Point ExtendedSlope::direction() const {
  if (is_infinite()) return {0.0, 1.0};
  const double n = std::hypot(1.0, k_);
  return {1.0 / n, k_ / n};
}

std::string to_string(ExtendedSlope k) {
  if (k.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", k.value());
  return buf;
}

std::string to_string(CornerArea a) {
  switch (a) {
    case CornerArea::alpha1: return "alpha1";
    case CornerArea::alpha2: return "alpha2";
    case CornerArea::alpha3: return "alpha3";
    case CornerArea::alpha4: return "alpha4";
  }
  return "?";
}

SlopeCoefficients slope_coefficients(const CanonicalTriangle& t) {
  const double p = t.p(), q = t.q(), r = t.r();
  SlopeCoefficients c;
  c.lambda = (q - p) * std::hypot(r, p) * std::hypot(r, q);
  c.beta = (p * q - r * r) * (q - p);
  c.gamma = r * (q * q - p * p);
  c.delta = (r * r + p * q) * (q + p);
  c.epsilon = r * (2 * r * r + q * q + p * p);
  return c;
}

Trinomial trinomial(const CanonicalTriangle& t) {
  const double p = t.p(), q = t.q(), r = t.r();
  const SlopeCoefficients c = slope_coefficients(t);
  Trinomial tri;
  tri.a_hat = (c.lambda - c.delta) * (c.lambda + c.delta);
  tri.b_hat = -2.0 * c.delta * c.epsilon;
  tri.c_hat = (r * r + p * q) * ((p * q - r * r) * (q - p) * (q - p) -
                                 2 * r * r * (2 * r * r + q * q + p * p));
  return tri;
}

double expanded_a_hat(double p, double q, double r) {
  const double r2 = r * r;
  const double p2 = p * p, q2 = q * q;
  return -4 * p * q * r2 * r2 +
         (p2 * p2 + q2 * q2 - 4 * p * q * q2 - 4 * p2 * p * q - 2 * p2 * q2) * r2 -
         4 * p2 * p * q2 * q;
}

double expanded_a_hat(const CanonicalTriangle& t) { return expanded_a_hat(t.p(), t.q(), t.r()); }

namespace {

// Signs of pk + r and -qk - r; the vertical line takes the k -> +inf limit, falling back to
// the constant term when the leading coefficient vanishes.
std::pair<double, double> corner_signs(const CanonicalTriangle& t, ExtendedSlope k) {
  const double p = t.p(), q = t.q(), r = t.r();
  if (k.is_infinite()) return {p != 0.0 ? p : r, q != 0.0 ? -q : -r};
  return {p * k.value() + r, -q * k.value() - r};
}

CornerArea corner_from_signs(double s1, double s2) {
  if (s1 >= 0.0) return s2 >= 0.0 ? CornerArea::alpha1 : CornerArea::alpha3;
  return s2 >= 0.0 ? CornerArea::alpha2 : CornerArea::alpha4;
}

bool within(double a, double b, double tol) { return a <= b + tol * std::max(1.0, std::abs(b)); }

}  // namespace

CornerArea corner_area_of_slope(const CanonicalTriangle& t, ExtendedSlope k) {
  const auto [s1, s2] = corner_signs(t, k);
  return corner_from_signs(s1, s2);
}

std::set<CornerArea> corner_area_existence(const CanonicalTriangle& t) {
  std::vector<double> breaks;
  if (t.p() != 0.0) breaks.push_back(-t.r() / t.p());
  if (t.q() != 0.0) breaks.push_back(-t.r() / t.q());
  std::sort(breaks.begin(), breaks.end());

  std::vector<ExtendedSlope> probes{ExtendedSlope::infinity()};
  if (breaks.empty()) {
    probes.push_back(ExtendedSlope::finite(0.0));
  } else {
    probes.push_back(ExtendedSlope::finite(breaks.front() - 1.0 - std::abs(breaks.front())));
    probes.push_back(ExtendedSlope::finite(breaks.back() + 1.0 + std::abs(breaks.back())));
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      probes.push_back(ExtendedSlope::finite(breaks[i]));
      if (i + 1 < breaks.size()) {
        probes.push_back(ExtendedSlope::finite(0.5 * (breaks[i] + breaks[i + 1])));
      }
    }
  }

  std::set<CornerArea> out;
  for (ExtendedSlope k : probes) out.insert(corner_area_of_slope(t, k));
  return out;
}

K1Slope k1_slope(const CanonicalTriangle& t) {
  const CanonicalTriangle n = normalize(t).first;
  const double p = n.p(), q = n.q(), r = n.r();
  K1Slope out;
  if (std::abs(p + q) <= 1e-12) {
    out.slope = ExtendedSlope::infinity();
  } else {
    out.slope = ExtendedSlope::finite((p * q - r * r) / (r * (p + q)));
  }

  const CornerArea area = corner_area_of_slope(n, out.slope);
  if (area != CornerArea::alpha1 && area != CornerArea::alpha4) return out;
  const double sign = area == CornerArea::alpha1 ? 1.0 : -1.0;
  const SlopeCoefficients c = slope_coefficients(n);
  if (out.slope.is_infinite()) {
    out.valid = sign * c.beta >= -1e-12;
  } else {
    const double k = out.slope.value();
    out.valid = sign * (c.beta * k + c.gamma) >= -1e-12 * std::max(1.0, std::abs(k));
  }
  return out;
}

AhatRoots ahat_roots(double p, double q) {
  if (!(p * q > 0.0)) throw NotApplicable("a_hat has no zero in r unless p q > 0");
  const double gap2 = (q - p) * (q - p);
  const double disc = gap2 * gap2 - 16.0 * p * p * q * q;
  if (disc < 0.0) throw NoRealRoots("(q - p)^4 < 16 p^2 q^2: a_hat keeps its sign");
  const double root = std::sqrt(disc);
  const double denom = 4.0 * std::sqrt(p * q);
  AhatRoots out;
  out.r1 = (gap2 + root) / denom;
  // Product of the two positive roots is (16 p^2 q^2) / (16 p q) = p q.
  out.r2 = p * q / *out.r1;
  out.r3 = -*out.r1;
  out.r4 = -*out.r2;
  return out;
}

namespace {

double sign_condition_value(const VertexSlopeAnalysis& a, ExtendedSlope k) {
  const CornerArea area = corner_area_of_slope(a.triangle, k);
  const double sign = (area == CornerArea::alpha2 || area == CornerArea::alpha4) ? -1.0 : 1.0;
  const SlopeCoefficients& c = a.coefficients;
  if (k.is_infinite()) return sign * c.delta;
  return sign * (c.delta * k.value() + c.epsilon) / std::hypot(1.0, k.value());
}

}  // namespace

VertexSlopeAnalysis critical_slopes(const CanonicalTriangle& t) {
  const CanonicalTriangle n = normalize(t).first;
  VertexSlopeAnalysis a{n, slope_coefficients(n), trinomial(n), k1_slope(n), {}, {},
                        angle_class_at_A(n), 0, true};
  const double a_hat = a.trinomial.a_hat;
  a.ahat_sign = std::abs(a_hat) <= kAhatZeroBand ? 0 : (a_hat > 0.0 ? 1 : -1);

  switch (a.angle.kind) {
    case AngleKind::Right:
      a.k2 = ExtendedSlope::finite(0.0);
      a.k3 = ExtendedSlope::finite(0.0);
      return a;
    case AngleKind::Obtuse:
      return a;
    case AngleKind::Acute:
      break;
  }

  const double p = n.p(), q = n.q(), r = n.r();
  const SlopeCoefficients& c = a.coefficients;
  const Trinomial& tri = a.trinomial;
  if (a.ahat_sign == 0) {
    if (tri.b_hat != 0.0) a.k2 = ExtendedSlope::finite(-tri.c_hat / tri.b_hat);
    a.k3 = ExtendedSlope::infinity();
  } else {
    // Half discriminant lambda * sqrt(delta^2 + epsilon^2 - lambda^2) in factored form.
    const double half_disc = 2.0 * (q - p) * (r * r + p * p) * (r * r + q * q) *
                             std::sqrt(r * r + p * q);
    const double de = c.delta * c.epsilon;
    const double s = de + std::copysign(half_disc, de);
    double x1 = s / a_hat;
    double x2 = tri.c_hat / s;
    if (x1 > x2) std::swap(x1, x2);
    a.k2 = ExtendedSlope::finite(x1);
    a.k3 = ExtendedSlope::finite(x2);
  }

  for (const auto& k : {a.k2, a.k3}) {
    if (k && sign_condition_value(a, *k) < -kSignConditionSlack) a.sign_condition_ok = false;
  }
  return a;
}

bool slope_inequality_holds(const VertexSlopeAnalysis& a, ExtendedSlope k) {
  const CornerArea area = corner_area_of_slope(a.triangle, k);
  if (area == CornerArea::alpha1 || area == CornerArea::alpha4) return true;
  if (a.angle.kind != AngleKind::Acute) return true;

  constexpr double tol = 1e-12;
  const double kv = k.value();
  if (a.ahat_sign == 0) {
    if (k.is_infinite()) return true;  // k3 itself
    if (!a.k2) return a.trinomial.c_hat >= 0.0;
    const double k2 = a.k2->value();
    return a.trinomial.b_hat < 0.0 ? within(kv, k2, tol) : within(k2, kv, tol);
  }
  const double k2 = a.k2->value();
  const double k3 = a.k3->value();
  if (a.ahat_sign > 0) return within(kv, k2, tol) || within(k3, kv, tol);
  if (k.is_infinite()) return false;
  return within(k2, kv, tol) && within(kv, k3, tol);
}

bool slope_inequality_holds(const CanonicalTriangle& t, ExtendedSlope k) {
  return slope_inequality_holds(critical_slopes(t), k);
}

double slope_inequality_residual(const CanonicalTriangle& t, ExtendedSlope k) {
  const double p = t.p(), q = t.q(), r = t.r();
  const Point d = k.direction();
  const double lambda = slope_coefficients(t).lambda;
  return lambda - ((r * r + p * p) * std::abs(-q * d.y - r * d.x) +
                   (r * r + q * q) * std::abs(p * d.y + r * d.x));
}

MembershipVerdict point_in_EA(const CanonicalTriangle& t, const VertexSlopeAnalysis& analysis,
                              Point m) {
  const double p = t.p(), q = t.q(), r = t.r();
  const double b2 = r * r + q * q;
  const double c2 = r * r + p * p;
  const double lhs = (q - p) * std::sqrt(c2) * std::sqrt(b2) * std::hypot(m.x, m.y - r);
  const double rhs = c2 * std::abs(-q * m.y - r * m.x + q * r) + b2 * std::abs(p * m.y + r * m.x - p * r);

  MembershipVerdict v;
  v.residual = lhs - rhs;
  v.relative_residual = (lhs + rhs) > 0.0 ? v.residual / (lhs + rhs) : 0.0;
  const Point d{m.x, m.y - r};
  // Frame maps round the vertex itself to within a few ulps of the apex.
  if (std::hypot(d.x, d.y) <= 1e-12 * t.scale()) {
    v.at_vertex = true;
    v.residual = 0.0;
    v.relative_residual = 0.0;
    v.member = true;
    return v;
  }
  v.slope = ExtendedSlope::of_direction(d);
  v.member = slope_inequality_holds(analysis, v.slope);
  return v;
}

MembershipVerdict point_in_EA(const CanonicalTriangle& t, Point m) {
  return point_in_EA(t, critical_slopes(t), m);
}

namespace {

std::pair<CanonicalTriangle, Isometry> frame_for(const CanonicalTriangle& t, Vertex v) {
  return canonicalize(t.A(), t.B(), t.C(), v);
}

}  // namespace

VertexFrame::VertexFrame(const CanonicalTriangle& t, Vertex vertex)
    : VertexFrame(vertex, frame_for(t, vertex)) {}

VertexFrame::VertexFrame(Vertex vertex, std::pair<CanonicalTriangle, Isometry> placed)
    : vertex_(vertex),
      frame_(placed.first),
      to_frame_(placed.second),
      analysis_(critical_slopes(frame_)) {}

MembershipVerdict VertexFrame::classify(Point m) const {
  return point_in_EA(frame_, analysis_, to_frame_.apply(m));
}

MembershipVerdict point_in_vertex_region(const CanonicalTriangle& t, Point m, Vertex v) {
  return VertexFrame(t, v).classify(m);
}

MembershipVerdict point_in_EB(const CanonicalTriangle& t, Point m) {
  return point_in_vertex_region(t, m, Vertex::B);
}

MembershipVerdict point_in_EC(const CanonicalTriangle& t, Point m) {
  return point_in_vertex_region(t, m, Vertex::C);
}

}  // namespace emregion
