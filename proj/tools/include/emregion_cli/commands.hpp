#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emregion/geometry.hpp"

namespace emregion::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kDegenerate = 3, kEmptyResult = 4 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 20140617;
inline constexpr int kMinSamples = 100;

struct RunConfig {
  std::string triangle;
  std::string points;
  int resolution = 256;
  /// Unset means the per-command default (regions 3, curve/area 8).
  std::optional<double> box_margin;
  int samples = kMinSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  /// Relative residual band that counts as "on the boundary".
  double tolerance = 1e-7;

  // Shape grid for `sweep`.
  double min_angle = 15.0;
  double max_angle = 105.0;
  int steps = 7;
};

/// Throws InputError when a field is out of range.
void validate(const RunConfig& config);

/// The A-frame of the input triangle and the map back to input coordinates.
struct TriangleInput {
  CanonicalTriangle frame;
  Isometry to_user;
};

/// Inline JSON (first non-blank character '{') or a path to a JSON file holding either
/// {"p","q","r"} or {"A":[x,y],"B":[x,y],"C":[x,y]}. Throws InputError or DegenerateTriangle.
TriangleInput parse_triangle(const std::string& spec);

/// `x,y` per line; blank lines are skipped and a non-numeric first line is a header.
std::vector<Point> parse_points(std::istream& in);

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_regions(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_table1(std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_area(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emregion::cli
