#pragma once

// Plain-text formats. Every file starts with `dim d`; `#` starts a comment;
// vectors are whitespace-separated decimals, one per line.
//
//   cone file         generator lines, or the sections `[lineality]` and
//                     `[pointed]` for a structured cone
//   point cloud       point lines, optionally `interior x_1 ... x_d` and
//                     `resolution r`
//   hypersurface      rows `u_1 ... u_d r` (unit direction, radius)
//
// Writers print numbers with 17 significant digits so files re-parse to
// the same doubles.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convexkit/cone.hpp"
#include "convexkit/hypersurface.hpp"
#include "convexkit/linalg.hpp"

namespace convexkit::io {

std::string format_number(double v);
std::string format_vector(const Vector& v, char sep = ' ');

struct ConeFile {
  Index dim = 0;
  bool structured = false;
  std::vector<Vector> generators;  // plain files
  std::vector<Vector> lineality;   // structured files: spanning vectors
  std::vector<Vector> pointed;
};

ConeFile parse_cone_file(std::istream& in);
ConeFile load_cone_file(const std::filesystem::path& path);
// Plain cone, or the flattened generators of a structured file.
PolyhedralCone to_cone(const ConeFile& f, const ToleranceProfile& tol = {});
StructuredCone to_structured(const ConeFile& f, const ToleranceProfile& tol = {});
void write_cone(std::ostream& out, const PolyhedralCone& c);
void write_structured_cone(std::ostream& out, const StructuredCone& s);

struct PointCloudFile {
  Index dim = 0;
  std::vector<Vector> points;
  std::optional<Vector> interior;
  double resolution = 0.0;
};

PointCloudFile parse_point_cloud(std::istream& in);
PointCloudFile load_point_cloud(const std::filesystem::path& path);
void write_point_cloud(std::ostream& out, const PointCloudFile& f);
SampledSet to_sampled_set(const PointCloudFile& f, const ToleranceProfile& tol = {});
// Throws InvariantViolation when the file has no interior line.
ConvexBody to_convex_body(const PointCloudFile& f, const ToleranceProfile& tol = {});

SampledHypersurface parse_hypersurface(std::istream& in, const ToleranceProfile& tol = {});
SampledHypersurface load_hypersurface(const std::filesystem::path& path,
                                      const ToleranceProfile& tol = {});
void write_hypersurface(std::ostream& out, const SampledHypersurface& h);

}  // namespace convexkit::io
