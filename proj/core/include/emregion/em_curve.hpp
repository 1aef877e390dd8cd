#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "emregion/geometry.hpp"

namespace emregion {

struct BoundingBox {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool contains(Point m) const {
    return m.x >= min.x && m.x <= max.x && m.y >= min.y && m.y <= max.y;
  }
};

/// Centroid-centred square of half-width `margin` circumradii.
BoundingBox default_box(const CanonicalTriangle& t, double margin = 8.0);

/// F(m) = R_A + R_B + R_C - 2 (r_a + r_b + r_c).
double em_field(const CanonicalTriangle& t, Point m);

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
};

/// Zero set of F. Every polyline keeps F >= 0 on its left.
struct CurveTrace {
  std::vector<Polyline> polylines;
  int resolution = 0;
  BoundingBox box;
  /// |F| bound reached by edge bisection.
  double tolerance = 0.0;

  double cell_width() const { return box.width() / resolution; }
  double cell_height() const { return box.height() / resolution; }
  std::size_t point_count() const;
};

class EmptyTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMinResolution = 64;

/// Marching squares over a resolution x resolution cell grid with bisection refinement of
/// every crossing to |F| <= 1e-9 * scale. Throws EmptyTrace when F keeps one sign on the grid
/// and std::invalid_argument when resolution < 64.
CurveTrace trace_curve(const CanonicalTriangle& t, const BoundingBox& box, int resolution);

/// Sign grid of F and the 4-connected set of non-negative cells reachable from the centroid.
class EprimeComponent {
 public:
  EprimeComponent(const CanonicalTriangle& t, const BoundingBox& box, int resolution);

  const BoundingBox& box() const { return box_; }
  int resolution() const { return n_; }
  /// Whether the cell containing m belongs to the component and F(m) >= 0.
  bool contains(Point m) const;
  bool touches_box() const { return touches_box_; }

  enum class Cell : std::uint8_t { Outside, Inside, Boundary };
  Cell cell_state(int i, int j) const { return state_[index(i, j)]; }
  bool in_component(int i, int j) const { return component_[index(i, j)] != 0; }
  std::optional<std::pair<int, int>> cell_of(Point m) const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }

  CanonicalTriangle triangle_;
  BoundingBox box_;
  int n_;
  std::vector<Cell> state_;
  std::vector<std::uint8_t> component_;
  bool touches_box_ = false;
  double sign_tol_;
};

struct EprimeEstimate {
  double area = 0.0;
  double standard_error = 0.0;
  bool bounded = true;
  BoundingBox box;
  double ratio = 0.0;
  double epsilon = 0.0;
  int resolution = 0;
  std::size_t inside_cells = 0;
  std::size_t boundary_cells = 0;
  std::size_t samples_per_cell = 0;
};

/// Area of the component of {F >= 0} containing the centroid: interior cells are counted,
/// cells in the band next to the curve are refined with `samples` uniform draws each.
EprimeEstimate eprime_area(const CanonicalTriangle& t, const BoundingBox& box, int resolution,
                           int samples, std::uint64_t seed);

/// Uniform box sampling of E' against E.
struct EprimeVsE {
  std::size_t samples = 0;
  std::size_t in_E = 0;          // strict band
  std::size_t in_E_strict_outside_eprime = 0;
  std::size_t in_eprime = 0;
  std::size_t in_eprime_not_E = 0;
  double box_area = 0.0;
  /// Area estimate of E' \ E.
  double eprime_minus_E_area = 0.0;
};

EprimeVsE compare_eprime_with_E(const CanonicalTriangle& t, const BoundingBox& box,
                                int resolution, std::size_t samples, std::uint64_t seed,
                                double band = 1e-7);

/// Triangle with angles alpha at A, beta at B (radians) and unit perimeter, in the A-frame.
CanonicalTriangle triangle_from_angles(double alpha, double beta);

struct SweepConfig {
  double min_angle_deg = 15.0;
  double max_angle_deg = 105.0;
  int steps = 7;
  int resolution = 256;
  int samples = 100;
  double box_margin = 8.0;
  std::uint64_t seed = 20140617;
  /// Shapes with a smaller angle are flagged.
  double degenerate_angle_deg = 5.0;
};

struct SweepRow {
  double alpha_deg = 0.0;
  double beta_deg = 0.0;
  double gamma_deg = 0.0;
  EprimeEstimate estimate;
  bool near_degenerate = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Index of the bounded row with the smallest epsilon.
  std::optional<std::size_t> minimizer;
};

/// Grid over (alpha, beta) in [min, max] with `steps` values each; rows with
/// alpha + beta >= 180 are skipped. Throws std::invalid_argument on an invalid grid.
SweepResult epsilon_sweep(const SweepConfig& config);

}  // namespace emregion
