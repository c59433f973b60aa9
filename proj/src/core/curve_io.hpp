#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "core/curve.hpp"
#include "core/error.hpp"

namespace blob {

// Malformed input; `line` is 1-based (0 when the file is empty).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& detail)
      : Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + detail), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class CurveTable { full, octant };  // header `x,w` or `x,h`

struct CurveSamples {
  CurveTable table = CurveTable::full;
  std::vector<double> x;
  std::vector<double> y;
};

CurveSamples read_curve_csv(std::istream& in);
CurveSamples read_curve_csv_file(const std::string& path);

// Octant samples from either table. A full table contributes (x, w) for
// x <= 1 and the reflection (w, x) for x > 1; coincident points must agree.
CurveSamples to_octant_samples(const CurveSamples& s);
OctantCurve curve_from_samples(const CurveSamples& s, Interpolant kind = Interpolant::automatic);

// Full table over [0, a]: the octant nodes on [0, 1] followed by their
// reflections x = h(s) on (1, a]. Reading it back recovers the same nodes.
CurveSamples full_samples(const OctantCurve& h);
CurveSamples octant_samples(const OctantCurve& h);

// 17 significant digits, LF line endings.
void write_curve_csv(std::ostream& out, const CurveSamples& s);

// Four-quadrant outline drawn from the full table as given, with the axes
// and the lines y = x and y = -x.
void write_svg(std::ostream& out, const CurveSamples& full, const std::string& title);

// Shortest distance string that round-trips: "%.17g".
std::string format_double(double v);

}  // namespace blob
