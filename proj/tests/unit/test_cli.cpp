#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "emregion/em_curve.hpp"
#include "emregion_cli/commands.hpp"

using namespace emregion;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kEquilateral = R"({"p": -1, "q": 1, "r": 1.7320508075688772})";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "emregion");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("emregion_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST(ParsePoints, HeaderBlankLinesAndErrors) {
  std::istringstream with_header("x,y\n1,2\n\n -3.5 , 4e-1 \r\n");
  const auto pts = cli::parse_points(with_header);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1].x, -3.5);
  EXPECT_DOUBLE_EQ(pts[1].y, 0.4);
  std::istringstream bad("1,2\n3\n");
  EXPECT_THROW(cli::parse_points(bad), cli::InputError);
  std::istringstream three("1,2,3\n4,5\n");
  EXPECT_EQ(cli::parse_points(three).size(), 1u);
  std::istringstream empty("");
  EXPECT_TRUE(cli::parse_points(empty).empty());
}

TEST(ParseTriangle, BothShapesAndErrors) {
  const cli::TriangleInput a = cli::parse_triangle(kEquilateral);
  EXPECT_DOUBLE_EQ(a.frame.q(), 1.0);
  const cli::TriangleInput b = cli::parse_triangle(R"({"A":[3,1],"B":[1,1],"C":[2,4]})");
  EXPECT_LE(distance(b.to_user.apply(b.frame.A()), {3, 1}), 1e-12);
  EXPECT_LE(distance(b.to_user.apply(b.frame.B()), {1, 1}), 1e-12);
  EXPECT_LE(distance(b.to_user.apply(b.frame.C()), {2, 4}), 1e-12);
  EXPECT_THROW(cli::parse_triangle("{nope"), cli::InputError);
  EXPECT_THROW(cli::parse_triangle(R"({"p":2,"q":1,"r":1})"), cli::InputError);
  EXPECT_THROW(cli::parse_triangle(R"({"p":1,"q":2,"r":0})"), DegenerateTriangle);
  EXPECT_THROW(cli::parse_triangle(R"({"A":[0,0],"B":[1,1],"C":[2,2]})"), DegenerateTriangle);
  EXPECT_THROW(cli::parse_triangle("/nonexistent/triangle.json"), cli::InputError);
}

TEST_F(CliTest, ClassifyEquilateralExamples) {
  const std::string pts = file("pts.csv", "x,y\n0,0.5773502691896258\n2,0\n");
  const std::string tri = file("tri.json", kEquilateral);
  const Outcome o = run({"classify", "--triangle", tri, "--points", pts});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  ASSERT_EQ(j.size(), 2u);
  const double per = 6.0;
  EXPECT_TRUE(j[0]["in_E"].get<bool>());
  for (const auto& [name, value] : j[0]["residuals"].items()) {
    EXPECT_GE(value.get<double>(), -1e-12 * per) << name;
  }
  EXPECT_NEAR(j[0]["residuals"]["erdos_mordell"].get<double>(), 0.0, 1e-12 * per);
  EXPECT_FALSE(j[1]["in_EA"].get<bool>());
  EXPECT_FALSE(j[1]["in_E"].get<bool>());
  // Serialization round-trips.
  EXPECT_EQ(json::parse(j.dump(2)).dump(2), j.dump(2));
}

TEST_F(CliTest, ClassifyEmptyAndBadInput) {
  const Outcome empty = run({"classify", "--triangle", kEquilateral, "--points", file("e.csv", "")});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(json::parse(empty.out), json::array());

  EXPECT_EQ(run({"classify", "--triangle", kEquilateral, "--points", file("b.csv", "1,2\nfoo\n")}).code, 2);
  EXPECT_EQ(run({"classify", "--triangle", "{bad", "--points", file("c.csv", "")}).code, 2);
  EXPECT_EQ(run({"classify", "--triangle", R"({"p":0,"q":0,"r":1})", "--points", file("d.csv", "")}).code, 3);
  EXPECT_EQ(run({"classify", "--triangle", kEquilateral}).code, 2);
  EXPECT_EQ(run({"classify", "--triangle", kEquilateral, "--points", path("missing.csv")}).code, 2);
}

TEST_F(CliTest, RegionsEquilateral) {
  const std::string svg = path("eq.svg");
  const Outcome o = run({"regions", "--triangle", kEquilateral, "--out", svg});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(slurp(path("eq.json")));
  for (const json& v : j["vertices"]) {
    EXPECT_NEAR(v["k2"].get<double>(), -std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(v["k3"].get<double>(), std::sqrt(2.0), 1e-12);
  }
  EXPECT_EQ(j["m_polygon"]["vertex_count"].get<int>(), 6);

  const std::string text = slurp(svg);
  EXPECT_EQ(text.rfind("<?xml", 0), 0u);
  for (const char* layer : {"id=\"triangle\"", "id=\"critical-lines\"", "id=\"M-polygon\"", "id=\"E-raster\""}) {
    EXPECT_NE(text.find(layer), std::string::npos) << layer;
  }

  const std::string again = path("eq2.svg");
  ASSERT_EQ(run({"regions", "--triangle", kEquilateral, "--out", again}).code, 0);
  EXPECT_EQ(text, slurp(again));
}

TEST_F(CliTest, RegionsRightTriangle) {
  const Outcome o = run({"regions", "--triangle", R"({"A":[0,0],"B":[3,0],"C":[0,4]})"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  const json& a = j["vertices"][0];
  EXPECT_EQ(a["angle"], "right");
  EXPECT_EQ(a["k2"].get<double>(), 0.0);
  EXPECT_EQ(a["k3"].get<double>(), 0.0);
  EXPECT_EQ(json::parse(j.dump()).dump(), j.dump());
}

TEST_F(CliTest, CurveEquilateral) {
  const std::string svg = path("curve.svg");
  const Outcome o = run({"curve", "--triangle", kEquilateral, "--out", svg});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(slurp(path("curve.json")));
  ASSERT_EQ(j["polylines"].size(), 1u);
  EXPECT_TRUE(j["polylines"][0]["closed"].get<bool>());
  const CanonicalTriangle t(-1, 1, std::sqrt(3.0));
  const double cell = default_box(t).width() / 256;
  const auto& pts = j["polylines"][0]["points"];
  for (const json& p : pts) {
    const Point m{p[0].get<double>(), p[1].get<double>()};
    EXPECT_LE(std::abs(em_field(t, m)), 1e-9 * t.scale());
    double best = INFINITY;
    for (const json& q : pts) best = std::min(best, distance({-m.x, m.y}, {q[0].get<double>(), q[1].get<double>()}));
    EXPECT_LE(best, cell);
  }
  EXPECT_NE(slurp(svg).find("id=\"em-curve\""), std::string::npos);
}

TEST_F(CliTest, CurveTooSmallBoxIsEmpty) {
  const Outcome o = run({"curve", "--triangle", kEquilateral, "--box-margin", "0.01"});
  EXPECT_EQ(o.code, 4);
  EXPECT_NE(o.err.find("empty"), std::string::npos);
}

TEST_F(CliTest, Table1MatchesReferenceRows) {
  const Outcome o = run({"table1"});
  ASSERT_EQ(o.code, 0);
  const std::vector<std::string> expected = {"+  +  +  -", "+  -  +  +", "-  +  +  +", "-  +  +  +",
                                             "+  +  -  +", "+  +  +  -", "+  -  +  -", "-  +  -  +",
                                             "-  -  +  +", "+  +  -  -"};
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  for (const std::string& row : expected) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_NE(line.find(row), std::string::npos) << line;
  }
}

TEST_F(CliTest, SweepDeterministicAndPositive) {
  const std::vector<std::string> args = {"sweep", "--resolution", "64", "--samples", "100"};
  const Outcome a = run(args);
  const Outcome b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("alpha_deg,beta_deg", 0), 0u);
  int rows = 0;
  bool equilateral = false;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) {
      EXPECT_NE(line.find("alpha_deg=60.000000 beta_deg=60.000000"), std::string::npos);
      continue;
    }
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 9u);
    if (f[7] == "true") EXPECT_GT(std::stod(f[5]), 0.0) << line;
    equilateral |= f[0] == "60.000000" && f[1] == "60.000000";
  }
  EXPECT_GE(rows, 25);
  EXPECT_TRUE(equilateral);
}

TEST_F(CliTest, SweepRejectsInvalidGrid) {
  EXPECT_EQ(run({"sweep", "--steps", "0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--min-angle", "50", "--max-angle", "40"}).code, 2);
  EXPECT_EQ(run({"sweep", "--resolution", "32"}).code, 2);
}

TEST_F(CliTest, AreaReport) {
  const std::string out = path("area.json");
  const Outcome o = run({"area", "--triangle", kEquilateral, "--resolution", "128", "--out", out});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(slurp(out));
  EXPECT_TRUE(j["bounded"].get<bool>());
  EXPECT_GT(j["epsilon"].get<double>(), 0.0);
  EXPECT_EQ(j["eprime_vs_E"]["in_E_strict_outside_eprime"].get<int>(), 0);
  EXPECT_EQ(run({"area", "--triangle", kEquilateral, "--samples", "5"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"regions", "--triangle", kEquilateral, "--resolution", "abc"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
