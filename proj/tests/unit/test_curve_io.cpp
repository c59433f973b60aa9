#include <cmath>
#include <sstream>

#include "core/curve_io.hpp"
#include "core/functionals.hpp"
#include "doctest.h"

using namespace blob;

namespace {

int parse_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_curve_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("full table round trip keeps the octant nodes") {
  auto c = circle_octant();
  auto full = full_samples(c);
  std::ostringstream out;
  write_curve_csv(out, full);
  std::istringstream in(out.str());
  auto back = read_curve_csv(in);
  CHECK(back.table == CurveTable::full);
  REQUIRE(back.x.size() == full.x.size());
  for (size_t i = 0; i < back.x.size(); ++i) {
    CHECK(back.x[i] == full.x[i]);
    CHECK(back.y[i] == full.y[i]);
  }
  auto oct = to_octant_samples(back);
  CHECK(oct.x.front() == 0.0);
  CHECK(oct.x.back() == 1.0);
  auto rebuilt = curve_from_samples(back);
  for (double x : {0.1, 0.45, 0.9}) CHECK(rebuilt.value(x) == doctest::Approx(c.value(x)).epsilon(1e-13));
}

TEST_CASE("octant table header") {
  std::istringstream in("x,h\n0,1.5\n0.5,1.3\n1,1\n");
  auto s = read_curve_csv(in);
  CHECK(s.table == CurveTable::octant);
  CHECK(s.x.size() == 3);
}

TEST_CASE("malformed tables report the offending line") {
  CHECK(parse_line("") == 0);
  CHECK(parse_line("a,b\n0,1\n") == 1);
  CHECK(parse_line("x,w\n0,1.4\n0.5,abc\n1,1\n") == 3);
  CHECK(parse_line("x,w\n0,1.4\n\n1,1\n") == 3);
  CHECK(parse_line("x,w\n0,1.4\n0.8,1.2\n0.5,1.3\n") == 4);
  CHECK(parse_line("x,h\n0,1.4\n0.5,1.3\n1.2,1\n") == 4);
  CHECK(parse_line("x,w\n0,1.4\n1,1\n") > 0);  // too few rows
}

TEST_CASE("reflected points must agree with the octant samples") {
  CurveSamples s;
  s.table = CurveTable::full;
  s.x = {0.0, 0.5, 1.0, 1.3, 1.5};
  s.y = {1.5, 1.25, 1.0, 0.5, 0.0};  // (1.3, 0.5) reflects onto x = 0.5
  CHECK_THROWS_AS(to_octant_samples(s), InvalidCurve);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.0}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("svg output draws a closed outline") {
  std::ostringstream out;
  write_svg(out, full_samples(circle_octant()), "circle");
  auto svg = out.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
