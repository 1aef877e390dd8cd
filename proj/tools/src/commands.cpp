#include "emregion_cli/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "emregion/em_curve.hpp"
#include "emregion/region_set.hpp"
#include "emregion/vertex_region.hpp"
#include "emregion_cli/svg.hpp"

namespace emregion::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kRasterSize = 512;
constexpr double kSvgPixels = 800.0;
constexpr std::size_t kComparisonSamples = 100000;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json slope_json(const std::optional<ExtendedSlope>& k) {
  if (!k) return nullptr;
  if (k->is_infinite()) return "inf";
  return k->value();
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

// Sibling path with the extension replaced.
std::string with_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out.empty()) {
    out << text;
  } else {
    write_text(config.out, text);
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string("triangle field ") + what + " must be a number");
  return v.get<double>();
}

Point point_field(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw InputError(std::string("triangle vertex ") + key + " must be [x, y]");
  }
  return {number(v[0], key), number(v[1], key)};
}

// Maps exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const DegenerateTriangle& e) {
    err << "degenerate triangle: " << e.what() << '\n';
    return kDegenerate;
  } catch (const EmptyTrace& e) {
    err << "empty result: " << e.what() << '\n';
    return kEmptyResult;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

json residuals_json(const InequalityResiduals& r) {
  return {{"vertex_a", r.vertex_a},   {"vertex_b", r.vertex_b},
          {"vertex_c", r.vertex_c},   {"weighted", r.weighted},
          {"erdos_mordell", r.erdos_mordell}, {"child", r.child}};
}

json triangle_json(const TriangleInput& in) {
  const CanonicalTriangle& t = in.frame;
  return {{"A", point_json(in.to_user.apply(t.A()))},
          {"B", point_json(in.to_user.apply(t.B()))},
          {"C", point_json(in.to_user.apply(t.C()))},
          {"frame", {{"p", t.p()}, {"q", t.q()}, {"r", t.r()}}}};
}

// Axis-aligned user-space box enclosing a frame-space box.
BoundingBox user_box(const TriangleInput& in, const BoundingBox& frame_box) {
  BoundingBox out{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (Point c : {frame_box.min, Point{frame_box.max.x, frame_box.min.y}, frame_box.max,
                  Point{frame_box.min.x, frame_box.max.y}}) {
    const Point u = in.to_user.apply(c);
    out.min = {std::min(out.min.x, u.x), std::min(out.min.y, u.y)};
    out.max = {std::max(out.max.x, u.x), std::max(out.max.y, u.y)};
  }
  return out;
}

// Run-length rows of the E sign grid.
void raster_layer(SvgWriter& svg, const BoundingBox& view, const TriangleInput& in,
                  const TriangleRegions& regions) {
  const Isometry to_frame = in.to_user.inverse();
  const double hx = view.width() / kRasterSize;
  const double hy = view.height() / kRasterSize;
  svg.begin_group("E-raster", "fill:#c6dbef;stroke:none");
  for (int j = 0; j < kRasterSize; ++j) {
    int run_start = -1;
    for (int i = 0; i <= kRasterSize; ++i) {
      bool inside = false;
      if (i < kRasterSize) {
        const Point m = to_frame.apply({view.min.x + (i + 0.5) * hx, view.min.y + (j + 0.5) * hy});
        inside = regions.frame(Vertex::A).classify(m).member &&
                 regions.frame(Vertex::B).classify(m).member &&
                 regions.frame(Vertex::C).classify(m).member;
      }
      if (inside && run_start < 0) run_start = i;
      if (!inside && run_start >= 0) {
        svg.rect({view.min.x + run_start * hx, view.min.y + j * hy},
                 {view.min.x + i * hx, view.min.y + (j + 1) * hy});
        run_start = -1;
      }
    }
  }
  svg.end_group();
}

void triangle_layer(SvgWriter& svg, const TriangleInput& in) {
  const CanonicalTriangle& t = in.frame;
  svg.begin_group("triangle", "fill:none;stroke:#000000;stroke-width:1.5");
  svg.polygon({in.to_user.apply(t.A()), in.to_user.apply(t.B()), in.to_user.apply(t.C())});
  svg.end_group();
}

// Direction of a slope of the vertex frame, in user coordinates.
Point user_direction(const TriangleInput& in, const VertexFrame& f, ExtendedSlope k) {
  return in.to_user.apply_direction(f.to_frame().apply_inverse_direction(k.direction()));
}

double margin_or(const RunConfig& config, double fallback) {
  return config.box_margin.value_or(fallback);
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.resolution < kMinResolution) {
    throw InputError("--resolution must be at least " + std::to_string(kMinResolution));
  }
  if (config.samples < kMinSamples) {
    throw InputError("--samples must be at least " + std::to_string(kMinSamples));
  }
  if (config.box_margin && !(*config.box_margin > 0.0 && std::isfinite(*config.box_margin))) {
    throw InputError("--box-margin must be positive");
  }
  if (!(config.tolerance >= 0.0 && std::isfinite(config.tolerance))) {
    throw InputError("--tolerance must be non-negative");
  }
}

TriangleInput parse_triangle(const std::string& spec) {
  std::string text = trim(spec);
  if (text.empty()) throw InputError("--triangle is required");
  if (text.front() != '{') {
    std::ifstream f(text);
    if (!f) throw InputError("cannot open triangle file " + text);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed triangle JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("triangle JSON must be an object");

  if (j.contains("p") && j.contains("q") && j.contains("r")) {
    const double p = number(j["p"], "p"), q = number(j["q"], "q"), r = number(j["r"], "r");
    if (p > q) throw InputError("canonical triangle needs p < q");
    return {CanonicalTriangle(p, q, r), Isometry{}};
  }
  if (j.contains("A") && j.contains("B") && j.contains("C")) {
    const Point A = point_field(j, "A"), B = point_field(j, "B"), C = point_field(j, "C");
    auto [frame, to_frame] = canonicalize(A, B, C, Vertex::A);
    return {frame, to_frame.inverse()};
  }
  throw InputError(R"(triangle JSON needs {"p","q","r"} or {"A","B","C"})");
}

std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty()) continue;
    const auto comma = s.find(',');
    std::array<double, 2> v{};
    bool ok = comma != std::string::npos && s.find(',', comma + 1) == std::string::npos;
    if (ok) {
      const std::string fields[2] = {trim(s.substr(0, comma)), trim(s.substr(comma + 1))};
      for (int k = 0; k < 2 && ok; ++k) {
        const char* b = fields[k].data();
        const char* e = b + fields[k].size();
        const auto res = std::from_chars(b, e, v[k]);
        ok = res.ec == std::errc() && res.ptr == e && !fields[k].empty() && std::isfinite(v[k]);
      }
    }
    if (!ok) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw InputError("points line " + std::to_string(line_no) + ": expected x,y");
    }
    first = false;
    pts.push_back({v[0], v[1]});
  }
  return pts;
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const TriangleInput in = parse_triangle(config.triangle);
    if (config.points.empty()) throw InputError("--points is required");
    std::ifstream f(config.points);
    if (!f) throw InputError("cannot open points file " + config.points);
    const std::vector<Point> pts = parse_points(f);

    const TriangleRegions regions(in.frame);
    const Isometry to_frame = in.to_user.inverse();
    json reports = json::array();
    for (Point p : pts) {
      const MembershipReport rep = regions.membership(to_frame.apply(p));
      const bool near = std::any_of(rep.relative.begin(), rep.relative.end(),
                                    [&](double r) { return std::abs(r) <= config.tolerance; });
      reports.push_back({{"point", point_json(p)},
                         {"in_EA", rep.in_EA},
                         {"in_EB", rep.in_EB},
                         {"in_EC", rep.in_EC},
                         {"in_E", rep.in_E},
                         {"in_M", rep.in_M},
                         {"near_boundary", near},
                         {"residuals", residuals_json(rep.residuals)},
                         {"normalized", residuals_json(rep.normalized)},
                         {"relative", rep.relative}});
    }
    emit(config, out, reports.dump(2) + "\n");
    return kOk;
  });
}

int cmd_regions(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const TriangleInput in = parse_triangle(config.triangle);
    const TriangleRegions regions(in.frame);

    json vertices = json::array();
    for (Vertex v : {Vertex::A, Vertex::B, Vertex::C}) {
      const VertexFrame& f = regions.frame(v);
      const VertexSlopeAnalysis& a = f.analysis();
      vertices.push_back({{"vertex", to_string(v)},
                          {"angle", to_string(a.angle.kind)},
                          {"frame", {{"p", f.frame().p()}, {"q", f.frame().q()}, {"r", f.frame().r()}}},
                          {"k1", {{"slope", slope_json(a.k1.slope)}, {"valid", a.k1.valid}}},
                          {"k2", slope_json(a.k2)},
                          {"k3", slope_json(a.k3)},
                          {"ahat_sign", a.ahat_sign},
                          {"sign_condition_ok", a.sign_condition_ok},
                          {"whole_plane", regions.wedge(v).whole_plane}});
    }
    const RegionPolygon& m = regions.m_polygon();
    json poly = json::array();
    for (Point p : m.vertices) poly.push_back(point_json(in.to_user.apply(p)));
    const json summary = {{"triangle", triangle_json(in)},
                          {"vertices", vertices},
                          {"m_polygon",
                           {{"vertices", poly},
                            {"vertex_count", m.vertices.size()},
                            {"bounded", m.bounded},
                            {"coincident_edges", m.coincident_edges},
                            {"area", m.area()}}}};

    if (config.out.empty()) {
      out << summary.dump(2) << '\n';
      return kOk;
    }

    const BoundingBox view = user_box(in, default_box(in.frame, margin_or(config, 3.0)));
    SvgWriter svg(view, kSvgPixels);
    svg.begin_group("background", "fill:#ffffff;stroke:none");
    svg.rect(view.min, view.max);
    svg.end_group();
    raster_layer(svg, view, in, regions);

    svg.begin_group("M-polygon", "fill:#fdae6b;fill-opacity:0.5;stroke:#e6550d;stroke-width:1");
    std::vector<Point> user_poly;
    for (Point p : m.vertices) user_poly.push_back(in.to_user.apply(p));
    svg.polygon(user_poly);
    svg.end_group();

    svg.begin_group("critical-lines", "stroke:#3182bd;stroke-width:1;stroke-dasharray:6,3");
    for (Vertex v : {Vertex::A, Vertex::B, Vertex::C}) {
      const VertexFrame& f = regions.frame(v);
      const Point apex = in.to_user.apply(in.frame.vertex(v));
      for (const auto& k : {f.analysis().k2, f.analysis().k3}) {
        if (!k) continue;
        Point a, b;
        if (clip_line(view, apex, user_direction(in, f, *k), a, b)) svg.line(a, b);
      }
    }
    svg.end_group();

    svg.begin_group("k1-lines", "stroke:#31a354;stroke-width:1;stroke-dasharray:2,2");
    for (Vertex v : {Vertex::A, Vertex::B, Vertex::C}) {
      const VertexFrame& f = regions.frame(v);
      if (!f.analysis().k1.valid) continue;
      Point a, b;
      const Point apex = in.to_user.apply(in.frame.vertex(v));
      if (clip_line(view, apex, user_direction(in, f, f.analysis().k1.slope), a, b)) {
        svg.line(a, b);
      }
    }
    svg.end_group();
    triangle_layer(svg, in);

    write_text(config.out, svg.finish());
    write_text(with_extension(config.out, ".json"), summary.dump(2) + "\n");
    return kOk;
  });
}

int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const TriangleInput in = parse_triangle(config.triangle);
    const BoundingBox frame_box = default_box(in.frame, margin_or(config, 8.0));
    const CurveTrace trace = trace_curve(in.frame, frame_box, config.resolution);

    double worst = 0.0;
    json lines = json::array();
    for (const Polyline& line : trace.polylines) {
      json pts = json::array();
      for (Point p : line.points) {
        worst = std::max(worst, std::abs(em_field(in.frame, p)));
        pts.push_back(point_json(in.to_user.apply(p)));
      }
      lines.push_back({{"closed", line.closed}, {"points", pts}});
    }
    const json summary = {{"triangle", triangle_json(in)},
                          {"resolution", trace.resolution},
                          {"tolerance", trace.tolerance},
                          {"max_abs_field", worst},
                          {"point_count", trace.point_count()},
                          {"polylines", lines}};

    if (config.out.empty()) {
      out << summary.dump(2) << '\n';
      return kOk;
    }

    const BoundingBox view = user_box(in, frame_box);
    const TriangleRegions regions(in.frame);
    SvgWriter svg(view, kSvgPixels);
    svg.begin_group("background", "fill:#ffffff;stroke:none");
    svg.rect(view.min, view.max);
    svg.end_group();
    raster_layer(svg, view, in, regions);
    svg.begin_group("em-curve", "fill:none;stroke:#de2d26;stroke-width:1.5");
    for (const Polyline& line : trace.polylines) {
      std::vector<Point> pts;
      for (Point p : line.points) pts.push_back(in.to_user.apply(p));
      svg.polyline(pts, line.closed);
    }
    svg.end_group();
    triangle_layer(svg, in);

    write_text(config.out, svg.finish());
    write_text(with_extension(config.out, ".json"), summary.dump(2) + "\n");
    return kOk;
  });
}

int cmd_table1(std::ostream& out) {
  struct Row {
    const char* p;
    const char* q;
    const char* r;
    double vp, vq, vr;
  };
  static const Row rows[] = {
      {">0", ">0", ">0", 1, 2, 1},   {"<0", ">0", ">0", -1, 2, 1}, {"<0", "<0", ">0", -2, -1, 1},
      {">0", ">0", "<0", 1, 2, -1},  {"<0", ">0", "<0", -1, 2, -1}, {"<0", "<0", "<0", -2, -1, -1},
      {"=0", ">0", ">0", 0, 1, 1},   {"=0", ">0", "<0", 0, 1, -1}, {"<0", "=0", ">0", -1, 0, 1},
      {"<0", "=0", "<0", -1, 0, -1},
  };
  out << "row  p   q   r   | a1 a2 a3 a4 | representative\n";
  int n = 0;
  for (const Row& row : rows) {
    const std::set<CornerArea> areas = corner_area_existence(CanonicalTriangle(row.vp, row.vq, row.vr));
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-4d %-3s %-3s %-3s |", ++n, row.p, row.q, row.r);
    out << buf;
    for (CornerArea a : {CornerArea::alpha1, CornerArea::alpha2, CornerArea::alpha3, CornerArea::alpha4}) {
      out << "  " << (areas.count(a) ? '+' : '-');
    }
    std::snprintf(buf, sizeof buf, " | (%g, %g, %g)\n", row.vp, row.vq, row.vr);
    out << buf;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    SweepConfig sc;
    sc.min_angle_deg = config.min_angle;
    sc.max_angle_deg = config.max_angle;
    sc.steps = config.steps;
    sc.resolution = config.resolution;
    sc.samples = config.samples;
    sc.box_margin = margin_or(config, 8.0);
    sc.seed = config.seed;
    const SweepResult result = epsilon_sweep(sc);

    std::string csv = "alpha_deg,beta_deg,gamma_deg,area,ratio,epsilon,standard_error,bounded,near_degenerate\n";
    for (const SweepRow& r : result.rows) {
      const EprimeEstimate& e = r.estimate;
      csv += format("%.6f", r.alpha_deg) + ',' + format("%.6f", r.beta_deg) + ',' +
             format("%.6f", r.gamma_deg) + ',' + format("%.9e", e.area) + ',' +
             format("%.9e", e.ratio) + ',' + format("%.9e", e.epsilon) + ',' +
             format("%.3e", e.standard_error) + ',' + (e.bounded ? "true" : "false") + ',' +
             (r.near_degenerate ? "true" : "false") + '\n';
    }
    if (result.minimizer) {
      const SweepRow& r = result.rows[*result.minimizer];
      csv += "# minimizer alpha_deg=" + format("%.6f", r.alpha_deg) +
             " beta_deg=" + format("%.6f", r.beta_deg) +
             " epsilon=" + format("%.9e", r.estimate.epsilon) + '\n';
    } else {
      csv += "# minimizer none (no bounded row)\n";
    }
    emit(config, out, csv);
    return result.rows.empty() ? kEmptyResult : kOk;
  });
}

int cmd_area(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const TriangleInput in = parse_triangle(config.triangle);
    const BoundingBox box = default_box(in.frame, margin_or(config, 8.0));
    const EprimeEstimate e = eprime_area(in.frame, box, config.resolution, config.samples, config.seed);
    const EprimeVsE cmp =
        compare_eprime_with_E(in.frame, box, config.resolution, kComparisonSamples, config.seed + 1,
                              config.tolerance);
    const json report = {
        {"triangle", triangle_json(in)},
        {"triangle_area", in.frame.area()},
        {"area", e.area},
        {"standard_error", e.standard_error},
        {"ratio", e.ratio},
        {"epsilon", e.epsilon},
        {"bounded", e.bounded},
        {"resolution", e.resolution},
        {"samples_per_cell", e.samples_per_cell},
        {"inside_cells", e.inside_cells},
        {"boundary_cells", e.boundary_cells},
        {"seed", config.seed},
        {"eprime_vs_E",
         {{"samples", cmp.samples},
          {"in_E_strict", cmp.in_E},
          {"in_E_strict_outside_eprime", cmp.in_E_strict_outside_eprime},
          {"in_eprime", cmp.in_eprime},
          {"in_eprime_not_E", cmp.in_eprime_not_E},
          {"box_area", cmp.box_area},
          {"eprime_minus_E_area", cmp.eprime_minus_E_area}}}};
    emit(config, out, report.dump(2) + "\n");
    return kOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regions where the Erdos-Mordell inequality and its per-vertex parts hold"};
  app.name(args.empty() ? "emregion" : args.front());
  app.require_subcommand(1);

  RunConfig config;
  double margin = 0.0;
  std::vector<CLI::Option*> margin_options;
  auto add_common = [&](CLI::App* sub, bool triangle) {
    if (triangle) {
      sub->add_option("--triangle", config.triangle, "Triangle JSON file or inline JSON")->required();
    }
    sub->add_option("--resolution", config.resolution, "Grid resolution (>= 64)");
    margin_options.push_back(sub->add_option("--box-margin", margin, "Box half-width in circumradii"));
    sub->add_option("--samples", config.samples, "Samples per refined cell (>= 100)");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--out", config.out, "Output path (stdout when omitted)");
    sub->add_option("--tolerance", config.tolerance, "Relative residual boundary band");
  };

  CLI::App* classify = app.add_subcommand("classify", "Classify points against E, E_A, E_B, E_C and M");
  add_common(classify, true);
  classify->add_option("--points", config.points, "CSV of x,y points")->required();
  CLI::App* regions = app.add_subcommand("regions", "Critical slopes, M polygon and an SVG figure");
  add_common(regions, true);
  CLI::App* curve = app.add_subcommand("curve", "Trace the Erdos-Mordell curve");
  add_common(curve, true);
  app.add_subcommand("table1", "Corner-area existence by the signs of p, q, r");
  CLI::App* sweep = app.add_subcommand("sweep", "Epsilon of E' over a grid of triangle shapes");
  add_common(sweep, false);
  sweep->add_option("--min-angle", config.min_angle, "Smallest grid angle in degrees");
  sweep->add_option("--max-angle", config.max_angle, "Largest grid angle in degrees");
  sweep->add_option("--steps", config.steps, "Grid values per angle");
  CLI::App* area = app.add_subcommand("area", "Area of E' and its comparison with E");
  add_common(area, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  for (CLI::Option* opt : margin_options) {
    if (opt->count() > 0) config.box_margin = margin;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "classify") return cmd_classify(config, out, err);
  if (name == "regions") return cmd_regions(config, out, err);
  if (name == "curve") return cmd_curve(config, out, err);
  if (name == "table1") return cmd_table1(out);
  if (name == "sweep") return cmd_sweep(config, out, err);
  return cmd_area(config, out, err);
}

}  // namespace emregion::cli
