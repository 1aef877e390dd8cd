#include "emregion_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace emregion::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

SvgWriter::SvgWriter(const BoundingBox& view, double pixels)
    : view_(view), pixels_(pixels), scale_(pixels / std::max(view.width(), view.height())) {}

double SvgWriter::sx(double x) const { return (x - view_.min.x) * scale_; }
double SvgWriter::sy(double y) const { return (view_.max.y - y) * scale_; }

std::string SvgWriter::coords(const std::vector<Point>& pts) const {
  std::string out;
  for (Point p : pts) {
    if (!out.empty()) out += ' ';
    out += num(sx(p.x)) + ',' + num(sy(p.y));
  }
  return out;
}

void SvgWriter::begin_group(const std::string& id, const std::string& style) {
  body_ += "<g id=\"" + id + "\" style=\"" + style + "\">\n";
}

void SvgWriter::end_group() { body_ += "</g>\n"; }

void SvgWriter::rect(Point lo, Point hi) {
  body_ += "<rect x=\"" + num(sx(lo.x)) + "\" y=\"" + num(sy(hi.y)) + "\" width=\"" +
           num((hi.x - lo.x) * scale_) + "\" height=\"" + num((hi.y - lo.y) * scale_) + "\"/>\n";
}

void SvgWriter::line(Point a, Point b) {
  body_ += "<line x1=\"" + num(sx(a.x)) + "\" y1=\"" + num(sy(a.y)) + "\" x2=\"" + num(sx(b.x)) +
           "\" y2=\"" + num(sy(b.y)) + "\"/>\n";
}

void SvgWriter::polygon(const std::vector<Point>& pts) {
  body_ += "<polygon points=\"" + coords(pts) + "\"/>\n";
}

void SvgWriter::polyline(const std::vector<Point>& pts, bool closed) {
  if (closed) {
    polygon(pts);
    return;
  }
  body_ += "<polyline points=\"" + coords(pts) + "\"/>\n";
}

void SvgWriter::circle(Point c, double radius_px) {
  body_ += "<circle cx=\"" + num(sx(c.x)) + "\" cy=\"" + num(sy(c.y)) + "\" r=\"" +
           num(radius_px) + "\"/>\n";
}

void SvgWriter::comment(const std::string& text) { body_ += "<!-- " + text + " -->\n"; }

std::string SvgWriter::finish() {
  const std::string w = num(view_.width() * scale_);
  const std::string h = num(view_.height() * scale_);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w +
         "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n" + body_ + "</svg>\n";
}

bool clip_line(const BoundingBox& box, Point p, Point d, Point& a, Point& b) {
  // Liang-Barsky on the parametric line p + s d.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const double pv[2] = {p.x, p.y};
  const double dv[2] = {d.x, d.y};
  const double mn[2] = {box.min.x, box.min.y};
  const double mx[2] = {box.max.x, box.max.y};
  for (int k = 0; k < 2; ++k) {
    if (dv[k] == 0.0) {
      if (pv[k] < mn[k] || pv[k] > mx[k]) return false;
      continue;
    }
    double s0 = (mn[k] - pv[k]) / dv[k];
    double s1 = (mx[k] - pv[k]) / dv[k];
    if (s0 > s1) std::swap(s0, s1);
    lo = std::max(lo, s0);
    hi = std::min(hi, s1);
  }
  if (lo > hi) return false;
  a = p + lo * d;
  b = p + hi * d;
  return true;
}

}  // namespace emregion::cli
