#pragma once

#include <string>
#include <vector>

#include "emregion/em_curve.hpp"
#include "emregion/geometry.hpp"

namespace emregion::cli {

// Minimal SVG 1.1 writer. Callers pass mathematical coordinates; the y flip to screen
// coordinates happens only when numbers are printed.
class SvgWriter {
 public:
  SvgWriter(const BoundingBox& view, double pixels);

  void begin_group(const std::string& id, const std::string& style);
  void end_group();

  void rect(Point lo, Point hi);
  void line(Point a, Point b);
  void polygon(const std::vector<Point>& pts);
  void polyline(const std::vector<Point>& pts, bool closed);
  void circle(Point c, double radius_px);
  void comment(const std::string& text);

  std::string finish();

 private:
  double sx(double x) const;
  double sy(double y) const;
  std::string coords(const std::vector<Point>& pts) const;

  BoundingBox view_;
  double pixels_;
  double scale_;
  std::string body_;
};

// Clip the infinite line through `p` with direction `d` to the box; false if it misses.
bool clip_line(const BoundingBox& box, Point p, Point d, Point& a, Point& b);

}  // namespace emregion::cli
