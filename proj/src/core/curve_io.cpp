#include "core/curve_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace blob {
namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

double parse_field(const std::string& raw, int line, const char* name) {
  std::string f = trim(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(line, std::string("cannot parse ") + name + " value '" + f + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, std::string(name) + " is not finite");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

CurveSamples read_curve_csv(std::istream& in) {
  CurveSamples s;
  std::string line;
  int lineno = 0;
  bool header = false;
  int blank_run_start = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) {
      if (!blank_run_start) blank_run_start = lineno;
      continue;
    }
    if (blank_run_start) throw ParseError(blank_run_start, "blank line inside the table");
    if (!header) {
      std::string h;
      for (char c : t)
        if (c != ' ') h.push_back(c);
      if (h == "x,w") {
        s.table = CurveTable::full;
      } else if (h == "x,h") {
        s.table = CurveTable::octant;
      } else {
        throw ParseError(lineno, "expected header 'x,w' or 'x,h', got '" + t + "'");
      }
      header = true;
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ParseError(lineno, "expected two comma-separated fields");
    }
    double x = parse_field(t.substr(0, comma), lineno, "x");
    double y = parse_field(t.substr(comma + 1), lineno, s.table == CurveTable::full ? "w" : "h");
    if (!s.x.empty() && !(x > s.x.back())) throw ParseError(lineno, "x must be strictly ascending");
    if (x < 0.0) throw ParseError(lineno, "x must be non-negative");
    if (s.table == CurveTable::octant && x > 1.0 + 1e-12) throw ParseError(lineno, "octant x must lie in [0, 1]");
    if (y < 0.0) throw ParseError(lineno, "curve values must be non-negative");
    s.x.push_back(x);
    s.y.push_back(y);
  }
  if (!header) throw ParseError(0, "empty file");
  if (s.x.size() < 3) throw ParseError(lineno, "need at least three data rows");
  return s;
}

CurveSamples read_curve_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return read_curve_csv(in);
}

CurveSamples to_octant_samples(const CurveSamples& s) {
  if (s.table == CurveTable::octant) return s;
  struct Pt {
    double x, h;
    bool reflected;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (s.x[i] <= 1.0) {
      pts.push_back({s.x[i], s.y[i], false});
    } else {
      pts.push_back({s.y[i], s.x[i], true});
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
  CurveSamples out;
  out.table = CurveTable::octant;
  for (const auto& p : pts) {
    if (!out.x.empty() && p.x - out.x.back() <= 1e-12) {
      if (std::fabs(p.h - out.y.back()) > 1e-9) {
        throw InvalidCurve("reflection symmetry", "samples on both sides of x = 1 disagree at octant x = " +
                                                      format_double(p.x));
      }
      continue;
    }
    out.x.push_back(p.x);
    out.y.push_back(p.h);
  }
  return out;
}

OctantCurve curve_from_samples(const CurveSamples& s, Interpolant kind) {
  CurveSamples o = to_octant_samples(s);
  return OctantCurve::from_samples(o.x, o.y, kind, CurveOrigin::user);
}

CurveSamples octant_samples(const OctantCurve& h) {
  CurveSamples s;
  s.table = CurveTable::octant;
  s.x = h.nodes();
  s.y.reserve(s.x.size());
  for (double x : s.x) s.y.push_back(h.value(x));
  return s;
}

CurveSamples full_samples(const OctantCurve& h) {
  CurveSamples o = octant_samples(h);
  CurveSamples s;
  s.table = CurveTable::full;
  s.x = o.x;
  s.y = o.y;
  for (std::size_t i = o.x.size(); i-- > 0;) {
    if (o.y[i] > 1.0 && o.y[i] > s.x.back()) {
      s.x.push_back(o.y[i]);
      s.y.push_back(o.x[i]);
    }
  }
  return s;
}

void write_curve_csv(std::ostream& out, const CurveSamples& s) {
  out << (s.table == CurveTable::full ? "x,w\n" : "x,h\n");
  for (std::size_t i = 0; i < s.x.size(); ++i) out << format_double(s.x[i]) << ',' << format_double(s.y[i]) << '\n';
}

void write_svg(std::ostream& out, const CurveSamples& full, const std::string& title) {
  if (full.table != CurveTable::full) throw Error(ErrorCode::invalid_argument, "SVG needs the full table");
  const double a = full.x.back();
  const double extent = 1.15 * std::max(a, *std::max_element(full.y.begin(), full.y.end()));
  const double size = 480.0, scale = size / (2.0 * extent);
  auto px = [&](double x) { return size / 2.0 + scale * x; };
  auto py = [&](double y) { return size / 2.0 - scale * y; };
  char buf[64];
  auto pt = [&](double x, double y) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", px(x), py(y));
    return std::string(buf);
  };

  // Quadrants in turn: (x, w), (x, -w) reversed, (-x, -w), (-x, w) reversed.
  std::string poly;
  const std::size_t n = full.x.size();
  for (std::size_t i = 0; i < n; ++i) poly += pt(full.x[i], full.y[i]);
  for (std::size_t i = n; i-- > 0;) poly += pt(full.x[i], -full.y[i]);
  for (std::size_t i = 0; i < n; ++i) poly += pt(-full.x[i], -full.y[i]);
  for (std::size_t i = n; i-- > 0;) poly += pt(-full.x[i], full.y[i]);
  poly.pop_back();

  auto line = [&](double x0, double y0, double x1, double y1, const char* style) {
    char l[200];
    std::snprintf(l, sizeof l, "  <line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" %s/>\n", px(x0), py(y0), px(x1),
                  py(y1), style);
    out << l;
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "  <title>" << title << "</title>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  line(-extent, 0, extent, 0, "stroke=\"#888\" stroke-width=\"1\"");
  line(0, -extent, 0, extent, "stroke=\"#888\" stroke-width=\"1\"");
  line(-extent, -extent, extent, extent, "stroke=\"#aaa\" stroke-width=\"1\" stroke-dasharray=\"4 4\"");
  line(-extent, extent, extent, -extent, "stroke=\"#aaa\" stroke-width=\"1\" stroke-dasharray=\"4 4\"");
  out << "  <polygon points=\"" << poly << "\" fill=\"#dde8f5\" fill-opacity=\"0.6\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";
  out << "</svg>\n";
}

}  // namespace blob
