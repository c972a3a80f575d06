#include "convexkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "convexkit/errors.hpp"

namespace convexkit::io {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(line, "not a number: '" + tok + "'");
  if (!std::isfinite(v)) fail(line, "non-finite value: '" + tok + "'");
  return v;
}

Vector parse_vector(const Line& l, std::size_t first, std::size_t count) {
  if (l.tokens.size() != first + count) {
    fail(l.number, "expected " + std::to_string(count) + " values, found " +
                       std::to_string(l.tokens.size() - first));
  }
  Vector v(static_cast<Index>(count));
  for (std::size_t i = 0; i < count; ++i) v(static_cast<Index>(i)) = parse_double(l.tokens[first + i], l.number);
  return v;
}

// Consumes the leading `dim d` line.
Index parse_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError("empty input: missing 'dim' line");
  const Line& h = lines.front();
  if (h.tokens.size() != 2 || h.tokens[0] != "dim") fail(h.number, "expected 'dim <d>'");
  int d = 0;
  const auto& t = h.tokens[1];
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), d);
  if (ec != std::errc() || ptr != t.data() + t.size() || d < 1) fail(h.number, "dimension must be a positive integer");
  return d;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vector(const Vector& v, char sep) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += format_number(v(i));
  }
  return out;
}

ConeFile parse_cone_file(std::istream& in) {
  const auto lines = tokenize(in);
  ConeFile f;
  f.dim = parse_header(lines);
  enum class Section { kPlain, kLineality, kPointed } section = Section::kPlain;
  const auto d = static_cast<std::size_t>(f.dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() == 1 && l.tokens[0] == "[lineality]") {
      if (!f.generators.empty()) fail(l.number, "section header after plain generators");
      section = Section::kLineality;
      f.structured = true;
      continue;
    }
    if (l.tokens.size() == 1 && l.tokens[0] == "[pointed]") {
      if (!f.generators.empty()) fail(l.number, "section header after plain generators");
      section = Section::kPointed;
      f.structured = true;
      continue;
    }
    if (l.tokens.front().front() == '[') fail(l.number, "unknown section '" + l.tokens.front() + "'");
    Vector v = parse_vector(l, 0, d);
    switch (section) {
      case Section::kPlain: f.generators.push_back(std::move(v)); break;
      case Section::kLineality: f.lineality.push_back(std::move(v)); break;
      case Section::kPointed: f.pointed.push_back(std::move(v)); break;
    }
  }
  return f;
}

ConeFile load_cone_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_cone_file(in);
}

PolyhedralCone to_cone(const ConeFile& f, const ToleranceProfile& tol) {
  if (!f.structured) return PolyhedralCone(f.dim, f.generators, tol);
  return to_structured(f, tol).flattened();
}

StructuredCone to_structured(const ConeFile& f, const ToleranceProfile& tol) {
  if (!f.structured) throw InvariantViolation("cone file has no [lineality]/[pointed] sections");
  return StructuredCone(orthonormalize(f.dim, f.lineality, tol), f.pointed, tol);
}

void write_cone(std::ostream& out, const PolyhedralCone& c) {
  out << "dim " << c.ambient_dim() << '\n';
  for (const auto& g : c.generators()) out << format_vector(g) << '\n';
}

void write_structured_cone(std::ostream& out, const StructuredCone& s) {
  out << "dim " << s.ambient_dim() << '\n' << "[lineality]\n";
  for (Index k = 0; k < s.lineality().rank(); ++k) out << format_vector(s.lineality().basis_vector(k)) << '\n';
  out << "[pointed]\n";
  for (const auto& p : s.pointed_generators()) out << format_vector(p) << '\n';
}

PointCloudFile parse_point_cloud(std::istream& in) {
  const auto lines = tokenize(in);
  PointCloudFile f;
  f.dim = parse_header(lines);
  const auto d = static_cast<std::size_t>(f.dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] == "interior") {
      if (f.interior) fail(l.number, "repeated 'interior' line");
      f.interior = parse_vector(l, 1, d);
    } else if (l.tokens[0] == "resolution") {
      if (l.tokens.size() != 2) fail(l.number, "expected 'resolution <r>'");
      f.resolution = parse_double(l.tokens[1], l.number);
      if (f.resolution < 0.0) fail(l.number, "resolution must be non-negative");
    } else {
      f.points.push_back(parse_vector(l, 0, d));
    }
  }
  if (f.points.empty()) throw ParseError("point cloud has no points");
  return f;
}

PointCloudFile load_point_cloud(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_point_cloud(in);
}

void write_point_cloud(std::ostream& out, const PointCloudFile& f) {
  out << "dim " << f.dim << '\n';
  if (f.interior) out << "interior " << format_vector(*f.interior) << '\n';
  if (f.resolution > 0.0) out << "resolution " << format_number(f.resolution) << '\n';
  for (const auto& p : f.points) out << format_vector(p) << '\n';
}

SampledSet to_sampled_set(const PointCloudFile& f, const ToleranceProfile& tol) {
  return SampledSet(f.points, tol, f.resolution);
}

ConvexBody to_convex_body(const PointCloudFile& f, const ToleranceProfile& tol) {
  if (!f.interior) throw InvariantViolation("point cloud has no 'interior' line");
  return ConvexBody(to_sampled_set(f, tol), *f.interior);
}

SampledHypersurface parse_hypersurface(std::istream& in, const ToleranceProfile& tol) {
  const auto lines = tokenize(in);
  const Index dim = parse_header(lines);
  const auto d = static_cast<std::size_t>(dim);
  std::vector<Vector> dirs;
  std::vector<double> radii;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Vector row = parse_vector(lines[i], 0, d + 1);
    dirs.push_back(row.head(dim));
    radii.push_back(row(dim));
  }
  if (dirs.empty()) throw ParseError("hypersurface has no rows");
  return SampledHypersurface::from_radii(SphereSampling(dim, std::move(dirs), tol), radii, tol);
}

SampledHypersurface load_hypersurface(const std::filesystem::path& path, const ToleranceProfile& tol) {
  auto in = open(path);
  return parse_hypersurface(in, tol);
}

void write_hypersurface(std::ostream& out, const SampledHypersurface& h) {
  out << "dim " << h.ambient_dim() << '\n';
  const auto radii = h.radii();
  for (std::size_t i = 0; i < h.size(); ++i) {
    out << format_vector(h.sampling().directions()[i]) << ' ' << format_number(radii[i]) << '\n';
  }
}

}  // namespace convexkit::io
