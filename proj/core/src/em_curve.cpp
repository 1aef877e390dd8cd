#include "emregion/em_curve.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <random>
#include <unordered_map>

#include "emregion/region_set.hpp"

namespace emregion {

BoundingBox default_box(const CanonicalTriangle& t, double margin) {
  const Point g = t.centroid();
  const double half = margin * t.circumradius();
  return {{g.x - half, g.y - half}, {g.x + half, g.y + half}};
}

double em_field(const CanonicalTriangle& t, Point m) { return erdos_mordell_residual(t, m); }

std::size_t CurveTrace::point_count() const {
  std::size_t n = 0;
  for (const Polyline& p : polylines) n += p.points.size();
  return n;
}

namespace {

struct Grid {
  BoundingBox box;
  int n;
  double hx, hy;
  std::vector<double> values;  // (n + 1)^2 nodes, row-major in y

  Grid(const CanonicalTriangle& t, const BoundingBox& b, int resolution)
      : box(b), n(resolution), hx(b.width() / resolution), hy(b.height() / resolution) {
    values.resize(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n; ++i) values[node(i, j)] = em_field(t, at(i, j));
    }
  }

  std::size_t node(int i, int j) const { return static_cast<std::size_t>(j) * (n + 1) + i; }
  Point at(int i, int j) const {
    // Mirror-symmetric node placement about the box centre.
    const double cx = 0.5 * (box.min.x + box.max.x);
    const double cy = 0.5 * (box.min.y + box.max.y);
    return {cx + (i - 0.5 * n) * hx, cy + (j - 0.5 * n) * hy};
  }
  double value(int i, int j) const { return values[node(i, j)]; }
};

void check_resolution(int resolution) {
  if (resolution < kMinResolution) {
    throw std::invalid_argument("grid resolution must be at least 64");
  }
}

// Scale-relative band below which F counts as non-negative.
double sign_tolerance(const CanonicalTriangle& t) { return 1e-12 * t.scale(); }

Point bisect_crossing(const CanonicalTriangle& t, Point in, Point out, double sign_tol,
                      double tol) {
  Point mid = 0.5 * (in + out);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (in + out);
    const double f = em_field(t, mid);
    if (std::abs(f) <= tol && distance(in, out) <= 1e-3 * tol) break;
    if (f >= -sign_tol) {
      in = mid;
    } else {
      out = mid;
    }
    if (in == mid && out == mid) break;
  }
  // Endpoint on the non-negative side is within rounding of the zero.
  return std::abs(em_field(t, in)) <= std::abs(em_field(t, mid)) ? in : mid;
}

}  // namespace

CurveTrace trace_curve(const CanonicalTriangle& t, const BoundingBox& box, int resolution) {
  check_resolution(resolution);
  const Grid grid(t, box, resolution);
  const int n = resolution;
  const double sign_tol = sign_tolerance(t);
  const double tol = 1e-9 * t.scale();
  auto inside = [&](int i, int j) { return grid.value(i, j) >= -sign_tol; };

  // Horizontal edge (i,j)-(i+1,j) has id 2*node(i,j); vertical (i,j)-(i,j+1) has 2*node(i,j)+1.
  std::unordered_map<std::size_t, Point> crossings;
  auto crossing = [&](std::size_t id) {
    auto it = crossings.find(id);
    if (it != crossings.end()) return it->second;
    const std::size_t nd = id / 2;
    const int i = static_cast<int>(nd % (n + 1));
    const int j = static_cast<int>(nd / (n + 1));
    const int i2 = (id % 2 == 0) ? i + 1 : i;
    const int j2 = (id % 2 == 0) ? j : j + 1;
    Point a = grid.at(i, j), b = grid.at(i2, j2);
    if (!inside(i, j)) std::swap(a, b);
    const Point x = bisect_crossing(t, a, b, sign_tol, tol);
    crossings.emplace(id, x);
    return x;
  };

  std::vector<std::array<std::size_t, 2>> segments;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Corners counter-clockwise from bottom-left; edge e joins corner e and e+1.
      const std::array<bool, 4> in{inside(i, j), inside(i + 1, j), inside(i + 1, j + 1),
                                   inside(i, j + 1)};
      const std::array<std::size_t, 4> edge{2 * grid.node(i, j), 2 * grid.node(i + 1, j) + 1,
                                            2 * grid.node(i, j + 1), 2 * grid.node(i, j) + 1};
      std::array<int, 4> cut{};
      int ncut = 0;
      for (int e = 0; e < 4; ++e) {
        if (in[e] != in[(e + 1) % 4]) cut[ncut++] = e;
      }
      if (ncut == 2) {
        segments.push_back({edge[cut[0]], edge[cut[1]]});
      } else if (ncut == 4) {
        const Point centre = 0.5 * (grid.at(i, j) + grid.at(i + 1, j + 1));
        const bool centre_in = em_field(t, centre) >= -sign_tol;
        // Cut off the corners that disagree with the centre; corner c touches edges c-1, c.
        for (int c = 0; c < 4; ++c) {
          if (in[c] != centre_in) segments.push_back({edge[(c + 3) % 4], edge[c]});
        }
      }
    }
  }
  if (segments.empty()) throw EmptyTrace("F does not change sign inside the bounding box");

  std::unordered_map<std::size_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s][0]].push_back(s);
    incident[segments[s][1]].push_back(s);
  }

  CurveTrace trace;
  trace.resolution = resolution;
  trace.box = box;
  trace.tolerance = tol;

  std::vector<bool> used(segments.size(), false);
  auto other_segment = [&](std::size_t edge_id, std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t s : incident[edge_id]) {
      if (s != from && !used[s]) return s;
    }
    return std::nullopt;
  };

  // Open chains first (start at edges with a single incident segment), then loops.
  std::vector<std::size_t> starts;
  for (const auto& [id, segs] : incident) {
    if (segs.size() == 1) starts.push_back(segs.front());
  }
  std::sort(starts.begin(), starts.end());
  for (std::size_t s = 0; s < segments.size(); ++s) starts.push_back(s);

  for (std::size_t start : starts) {
    if (used[start]) continue;
    std::vector<std::size_t> chain_edges;
    std::size_t s = start;
    std::size_t tail = segments[s][0];
    std::size_t head = segments[s][1];
    if (incident[tail].size() > 1 && incident[head].size() == 1) std::swap(tail, head);
    chain_edges.push_back(tail);
    used[s] = true;
    while (true) {
      chain_edges.push_back(head);
      auto next = other_segment(head, s);
      if (!next) break;
      s = *next;
      used[s] = true;
      head = segments[s][0] == head ? segments[s][1] : segments[s][0];
    }

    Polyline line;
    line.closed = chain_edges.size() > 2 && chain_edges.front() == chain_edges.back();
    for (std::size_t id : chain_edges) line.points.push_back(crossing(id));

    // Orient with F >= 0 on the left.
    const std::size_t mid = (line.points.size() - 1) / 2;
    const Point a = line.points[mid];
    const Point b = line.points[mid + 1];
    const Point e = b - a;
    const double len = norm(e);
    if (len > 0.0) {
      const Point left{-e.y / len, e.x / len};
      const Point c = 0.5 * (a + b);
      const double h = 0.25 * std::min(grid.hx, grid.hy);
      if (em_field(t, c + h * left) < em_field(t, c - h * left)) {
        std::reverse(line.points.begin(), line.points.end());
      }
    }
    trace.polylines.push_back(std::move(line));
  }
  return trace;
}

EprimeComponent::EprimeComponent(const CanonicalTriangle& t, const BoundingBox& box,
                                 int resolution)
    : triangle_(t), box_(box), n_(resolution), sign_tol_(sign_tolerance(t)) {
  check_resolution(resolution);
  const Grid grid(t, box, resolution);
  state_.assign(static_cast<std::size_t>(n_) * n_, Cell::Outside);
  component_.assign(state_.size(), 0);

  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      int count = 0;
      for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
        count += grid.value(i + di, j + dj) >= -sign_tol_ ? 1 : 0;
      }
      state_[index(i, j)] = count == 4 ? Cell::Inside : count == 0 ? Cell::Outside : Cell::Boundary;
    }
  }

  const auto seed = cell_of(t.centroid());
  if (!seed || state_[index(seed->first, seed->second)] == Cell::Outside) return;
  std::vector<std::pair<int, int>> stack{*seed};
  component_[index(seed->first, seed->second)] = 1;
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (i == 0 || j == 0 || i == n_ - 1 || j == n_ - 1) touches_box_ = true;
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int a = i + di, b = j + dj;
      if (a < 0 || b < 0 || a >= n_ || b >= n_) continue;
      const std::size_t k = index(a, b);
      if (component_[k] || state_[k] == Cell::Outside) continue;
      component_[k] = 1;
      stack.emplace_back(a, b);
    }
  }
}

std::optional<std::pair<int, int>> EprimeComponent::cell_of(Point m) const {
  if (!box_.contains(m)) return std::nullopt;
  const int i = std::clamp(static_cast<int>((m.x - box_.min.x) / box_.width() * n_), 0, n_ - 1);
  const int j = std::clamp(static_cast<int>((m.y - box_.min.y) / box_.height() * n_), 0, n_ - 1);
  return std::pair{i, j};
}

bool EprimeComponent::contains(Point m) const {
  const auto cell = cell_of(m);
  if (!cell || !in_component(cell->first, cell->second)) return false;
  return em_field(triangle_, m) >= -sign_tol_;
}

EprimeEstimate eprime_area(const CanonicalTriangle& t, const BoundingBox& box, int resolution,
                           int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  const EprimeComponent comp(t, box, resolution);
  const int n = resolution;
  const double hx = box.width() / n;
  const double hy = box.height() / n;
  const double cell_area = hx * hy;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double sign_tol = sign_tolerance(t);

  EprimeEstimate est;
  est.box = box;
  est.resolution = resolution;
  est.samples_per_cell = static_cast<std::size_t>(samples);
  est.bounded = !comp.touches_box();

  double variance = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!comp.in_component(i, j)) continue;
      // Cells next to a non-interior cell are sampled too, so sub-cell notches are caught.
      bool band = comp.cell_state(i, j) != EprimeComponent::Cell::Inside;
      for (int dj = -1; dj <= 1 && !band; ++dj) {
        for (int di = -1; di <= 1 && !band; ++di) {
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a >= n || b >= n) continue;
          band = comp.cell_state(a, b) != EprimeComponent::Cell::Inside;
        }
      }
      if (!band) {
        ++est.inside_cells;
        est.area += cell_area;
        continue;
      }
      ++est.boundary_cells;
      const double x0 = box.min.x + i * hx;
      const double y0 = box.min.y + j * hy;
      int hits = 0;
      for (int s = 0; s < samples; ++s) {
        const Point m{x0 + unit(rng) * hx, y0 + unit(rng) * hy};
        if (em_field(t, m) >= -sign_tol) ++hits;
      }
      const double frac = static_cast<double>(hits) / samples;
      est.area += cell_area * frac;
      // Add-two smoothing keeps cells with all-equal draws from reporting zero variance.
      const double smooth = (hits + 1.0) / (samples + 2.0);
      variance += cell_area * cell_area * smooth * (1.0 - smooth) / samples;
    }
  }
  est.standard_error = std::sqrt(variance);
  est.ratio = est.area / t.area();
  est.epsilon = est.ratio - 1.0;
  return est;
}

EprimeVsE compare_eprime_with_E(const CanonicalTriangle& t, const BoundingBox& box,
                                int resolution, std::size_t samples, std::uint64_t seed,
                                double band) {
  const EprimeComponent comp(t, box, resolution);
  const TriangleRegions regions(t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.min.x, box.max.x);
  std::uniform_real_distribution<double> uy(box.min.y, box.max.y);

  EprimeVsE out;
  out.samples = samples;
  out.box_area = box.width() * box.height();
  for (std::size_t s = 0; s < samples; ++s) {
    const Point m{ux(rng), uy(rng)};
    const MembershipReport rep = regions.membership(m);
    const bool strict_E = rep.in_E && std::all_of(rep.relative.begin(), rep.relative.end(),
                                                  [&](double r) { return r > band; });
    const bool in_eprime = comp.contains(m);
    if (strict_E) {
      ++out.in_E;
      if (!in_eprime) ++out.in_E_strict_outside_eprime;
    }
    if (in_eprime) {
      ++out.in_eprime;
      if (!rep.in_E) ++out.in_eprime_not_E;
    }
  }
  out.eprime_minus_E_area =
      out.box_area * static_cast<double>(out.in_eprime_not_E) / static_cast<double>(samples);
  return out;
}

CanonicalTriangle triangle_from_angles(double alpha, double beta) {
  const double gamma = std::numbers::pi - alpha - beta;
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) {
    throw std::invalid_argument("angles must be positive and sum below pi");
  }
  const double a = std::sin(alpha), b = std::sin(beta), c = std::sin(gamma);
  const double s = 1.0 / (a + b + c);
  const Point B{0.0, 0.0};
  const Point C{a * s, 0.0};
  const Point A{c * s * std::cos(beta), c * s * std::sin(beta)};
  return canonicalize(A, B, C, Vertex::A).first;
}

SweepResult epsilon_sweep(const SweepConfig& config) {
  if (config.steps < 1 || !(config.min_angle_deg > 0.0) ||
      !(config.max_angle_deg >= config.min_angle_deg) || config.max_angle_deg >= 180.0) {
    throw std::invalid_argument("invalid shape grid");
  }
  check_resolution(config.resolution);
  if (config.samples < 1) throw std::invalid_argument("samples must be positive");

  constexpr double deg = std::numbers::pi / 180.0;
  const double step =
      config.steps > 1 ? (config.max_angle_deg - config.min_angle_deg) / (config.steps - 1) : 0.0;

  SweepResult out;
  std::uint64_t row_seed = config.seed;
  for (int ia = 0; ia < config.steps; ++ia) {
    for (int ib = 0; ib < config.steps; ++ib) {
      const double alpha = config.min_angle_deg + ia * step;
      const double beta = config.min_angle_deg + ib * step;
      const double gamma = 180.0 - alpha - beta;
      if (gamma <= 1e-9) continue;
      SweepRow row;
      row.alpha_deg = alpha;
      row.beta_deg = beta;
      row.gamma_deg = gamma;
      row.near_degenerate = std::min({alpha, beta, gamma}) < config.degenerate_angle_deg;
      const CanonicalTriangle t = triangle_from_angles(alpha * deg, beta * deg);
      row.estimate = eprime_area(t, default_box(t, config.box_margin), config.resolution,
                                 config.samples, row_seed++);
      out.rows.push_back(row);
    }
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const SweepRow& r = out.rows[i];
    if (!r.estimate.bounded || r.near_degenerate) continue;
    if (!out.minimizer || r.estimate.epsilon < out.rows[*out.minimizer].estimate.epsilon) {
      out.minimizer = i;
    }
  }
  return out;
}

}  // namespace emregion
