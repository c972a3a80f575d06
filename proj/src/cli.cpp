#include "convexkit/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "convexkit/cone.hpp"
#include "convexkit/errors.hpp"
#include "convexkit/io.hpp"

namespace convexkit::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 10> kCommands{{
    {Command::kDecompose, "decompose"},
    {Command::kPolar, "polar"},
    {Command::kSupport, "support"},
    {Command::kProject, "project"},
    {Command::kConvexityBody, "convexity-body"},
    {Command::kConvexityAnf, "convexity-anf"},
    {Command::kRayMap, "ray-map"},
    {Command::kPsiCheck, "psi-check"},
    {Command::kConvexify, "convexify"},
    {Command::kReport, "report"},
}};

std::string_view status_name(int status) {
  switch (status) {
    case kSuccess: return "success";
    case kNegative: return "negative-verdict";
    case kParseFailure: return "parse-error";
    case kInvariantFailure: return "invariant-violation";
    case kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string joined(const Vector& v) { return io::format_vector(v, ','); }

// Collects every artifact of a run and writes them in a fixed order.
class Artifacts {
 public:
  void line(const std::string& s) { report_ << s << '\n'; }
  void field(const std::string& key, const std::string& value) { line(key + ": " + value); }
  void record(const std::vector<std::pair<std::string, std::string>>& kv) {
    for (std::size_t i = 0; i < kv.size(); ++i) {
      if (i > 0) records_ << ' ';
      records_ << kv[i].first << '=' << kv[i].second;
    }
    records_ << '\n';
  }
  // Plot tables are emitted only for dimensions 2 and 3.
  void table(const std::string& name, Index dim, const std::vector<std::string>& extra_columns,
             const std::vector<std::pair<Vector, std::vector<std::string>>>& rows) {
    if (dim < 2 || dim > 3) return;
    std::ostringstream out;
    static constexpr std::array<const char*, 3> kAxes{"x", "y", "z"};
    for (Index i = 0; i < dim; ++i) out << (i > 0 ? "," : "") << kAxes[static_cast<std::size_t>(i)];
    for (const auto& c : extra_columns) out << ',' << c;
    out << '\n';
    for (const auto& [p, extra] : rows) {
      out << joined(p);
      for (const auto& e : extra) out << ',' << e;
      out << '\n';
    }
    files_.emplace_back(name, out.str());
  }
  void file(const std::string& name, std::string contents) { files_.emplace_back(name, std::move(contents)); }

  void write(const std::filesystem::path& dir, int status) {
    std::filesystem::create_directories(dir);
    field("status", std::to_string(status) + " (" + std::string(status_name(status)) + ")");
    write_file(dir / "report.txt", report_.str());
    write_file(dir / "records.kv", records_.str());
    for (const auto& [name, contents] : files_) write_file(dir / name, contents);
  }

 private:
  static void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvariantViolation("cannot write '" + path.string() + "'");
    out << contents;
  }

  std::ostringstream report_;
  std::ostringstream records_;
  std::vector<std::pair<std::string, std::string>> files_;
};

using Rows = std::vector<std::pair<Vector, std::vector<std::string>>>;

Rows plain_rows(const std::vector<Vector>& pts) {
  Rows rows;
  for (const auto& p : pts) rows.emplace_back(p, std::vector<std::string>{});
  return rows;
}

const std::filesystem::path& single_input(const RunConfig& c) {
  if (c.input_paths.size() != 1) {
    throw PreconditionError(std::string(command_name(c.command)) + " expects exactly one input file");
  }
  return c.input_paths.front();
}

std::vector<Vector> subspace_vectors(const Subspace& s) {
  std::vector<Vector> out;
  for (Index k = 0; k < s.rank(); ++k) out.push_back(s.basis_vector(k));
  return out;
}

int run_decompose(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_cone_file(single_input(cfg));
  const PolyhedralCone c = io::to_cone(file, tol);
  const StructuredCone s = decompose(c, tol);
  art.field("generators", std::to_string(c.size()));
  art.field("lineality_rank", std::to_string(s.lineality().rank()));
  for (Index k = 0; k < s.lineality().rank(); ++k) {
    art.field("lineality_basis[" + std::to_string(k) + "]", io::format_vector(s.lineality().basis_vector(k)));
    art.record({{"kind", "lineality"}, {"index", std::to_string(k)}, {"vector", joined(s.lineality().basis_vector(k))}});
  }
  art.field("pointed_generators", std::to_string(s.pointed_generators().size()));
  for (std::size_t i = 0; i < s.pointed_generators().size(); ++i) {
    art.field("pointed[" + std::to_string(i) + "]", io::format_vector(s.pointed_generators()[i]));
    art.record({{"kind", "pointed"}, {"index", std::to_string(i)}, {"vector", joined(s.pointed_generators()[i])}});
  }
  const bool pointed_ok = is_pointed(s.pointed_part(), tol);
  const auto probes = default_probes(c.ambient_dim(), c.generators(), rng,
                                     static_cast<std::size_t>(cfg.probe_count));
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const bool a = cone_member(c, probes[i], tol);
    const bool b = structured_member(s, probes[i], tol);
    if (a != b) ++disagreements;
    art.record({{"kind", "probe"}, {"index", std::to_string(i)}, {"cone_member", yes_no(a)},
                {"structured_member", yes_no(b)}});
  }
  art.field("pointed_part_is_pointed", yes_no(pointed_ok));
  art.field("round_trip_probes", std::to_string(probes.size()));
  art.field("round_trip_disagreements", std::to_string(disagreements));
  std::ostringstream cone_out;
  io::write_structured_cone(cone_out, s);
  art.file("decomposed.cone", cone_out.str());
  art.table("generators.csv", c.ambient_dim(), {}, plain_rows(c.generators()));
  art.table("lineality.csv", c.ambient_dim(), {}, plain_rows(subspace_vectors(s.lineality())));
  art.table("pointed.csv", c.ambient_dim(), {}, plain_rows(s.pointed_generators()));
  return pointed_ok && disagreements == 0 ? kSuccess : kInvariantFailure;
}

int run_polar(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_cone_file(single_input(cfg));
  const PolyhedralCone c = io::to_cone(file, tol);
  const HalfspaceCone h = polar(c);
  art.field("polar_normals", std::to_string(h.normals().size()));
  for (std::size_t i = 0; i < h.normals().size(); ++i) {
    art.record({{"kind", "normal"}, {"index", std::to_string(i)}, {"vector", joined(h.normals()[i])}});
  }
  const PolarGenerators pg = polar_generators(c, tol);
  art.field("polar_lineality_rank", std::to_string(pg.lineality.rank()));
  art.field("polar_extreme_rays", std::to_string(pg.rays.size()));
  art.field("polar_rays_exhaustive", yes_no(pg.exhaustive));
  for (Index k = 0; k < pg.lineality.rank(); ++k) {
    art.record({{"kind", "polar_lineality"}, {"index", std::to_string(k)}, {"vector", joined(pg.lineality.basis_vector(k))}});
  }
  for (std::size_t i = 0; i < pg.rays.size(); ++i) {
    art.record({{"kind", "polar_ray"}, {"index", std::to_string(i)}, {"vector", joined(pg.rays[i])}});
  }
  const bool pointed = is_pointed(c, tol);
  const auto cert = is_proper(c, tol);
  art.field("pointed", yes_no(pointed));
  art.field("proper", yes_no(cert.has_value()));
  if (cert) art.field("proper_certificate", io::format_vector(*cert));
  const auto probes = default_probes(c.ambient_dim(), c.generators(), rng,
                                     static_cast<std::size_t>(cfg.probe_count));
  const bool closure = double_polar_closure_check(c, probes, tol);
  art.field("double_polar_probes", std::to_string(probes.size()));
  art.field("double_polar_agrees", yes_no(closure));
  std::ostringstream cone_out;
  io::write_structured_cone(cone_out, StructuredCone(pg.lineality, pg.rays, tol));
  art.file("polar.cone", cone_out.str());
  art.table("generators.csv", c.ambient_dim(), {}, plain_rows(c.generators()));
  art.table("polar_rays.csv", c.ambient_dim(), {}, plain_rows(pg.rays));
  art.table("polar_lineality.csv", c.ambient_dim(), {}, plain_rows(subspace_vectors(pg.lineality)));
  return closure ? kSuccess : kInvariantFailure;
}

// Both half-space tables: point + unit normal, and for the plane a segment
// of the supporting line long enough to cross the sample.
void certificate_tables(Artifacts& art, const SampledSet& s,
                        const std::vector<SupportCertificate>& certs) {
  Rows normals;
  Rows lines;
  double extent = 0.0;
  for (const auto& p : s.points()) {
    for (const auto& q : s.points()) extent = std::max(extent, (p - q).norm());
  }
  for (const auto& c : certs) {
    std::vector<std::string> cols;
    for (Index i = 0; i < c.normal.size(); ++i) cols.push_back(io::format_number(c.normal(i)));
    normals.emplace_back(c.point, cols);
    if (s.ambient_dim() == 2) {
      const Vector t = Eigen::Vector2d(-c.normal(1), c.normal(0));
      const Vector a = c.point - extent * t;
      const Vector b = c.point + extent * t;
      lines.emplace_back(a, std::vector<std::string>{io::format_number(b(0)), io::format_number(b(1))});
    }
  }
  const std::vector<std::string> ncols =
      s.ambient_dim() == 2 ? std::vector<std::string>{"nx", "ny"} : std::vector<std::string>{"nx", "ny", "nz"};
  art.table("certificates.csv", s.ambient_dim(), ncols, normals);
  if (s.ambient_dim() == 2) art.table("halfspace_lines.csv", 2, {"x_end", "y_end"}, lines);
}

int run_support(const RunConfig& cfg, const ToleranceProfile& tol, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const SampledSet s = io::to_sampled_set(file, tol);
  std::size_t extreme = 0;
  std::size_t supported = 0;
  std::vector<SupportCertificate> certs;
  Rows rows;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vector& x = s.points()[i];
    const bool ext = is_extreme_point(s, x);
    const bool boundary = is_boundary_point(s, x);
    const auto cert = support_certificate(s, x);
    extreme += ext ? 1 : 0;
    supported += cert ? 1 : 0;
    std::vector<std::pair<std::string, std::string>> rec{
        {"kind", "point"}, {"index", std::to_string(i)}, {"point", joined(x)},
        {"boundary", yes_no(boundary)}, {"extreme", yes_no(ext)}, {"support", yes_no(cert.has_value())}};
    if (cert) {
      rec.emplace_back("normal", joined(cert->normal));
      rec.emplace_back("slack", io::format_number(cert->slack));
      certs.push_back(*cert);
    }
    art.record(rec);
    rows.emplace_back(x, std::vector<std::string>{yes_no(ext), yes_no(cert.has_value())});
  }
  art.field("points", std::to_string(s.size()));
  art.field("extreme_points", std::to_string(extreme));
  art.field("support_points", std::to_string(supported));
  art.table("points.csv", s.ambient_dim(), {"extreme", "support"}, rows);
  certificate_tables(art, s, certs);
  return kSuccess;
}

int run_project(const RunConfig& cfg, const ToleranceProfile& tol, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  if (!cfg.query) throw PreconditionError("project requires --query");
  const auto& q = *cfg.query;
  if (static_cast<Index>(q.size()) != file.dim) {
    throw DimensionMismatch("query has " + std::to_string(q.size()) + " coordinates, cloud has dim " +
                            std::to_string(file.dim));
  }
  const Vector y = Eigen::Map<const Vector>(q.data(), static_cast<Index>(q.size()));
  const SampledSet s = io::to_sampled_set(file, tol);
  const Projection p = file.interior ? project_onto_hull(ConvexBody(s, *file.interior), y)
                                     : project_onto_hull(s, y);
  art.field("query", io::format_vector(y));
  art.field("inside_hull", yes_no(!p.certificate.has_value()));
  art.field("projection", io::format_vector(p.point));
  art.field("distance", io::format_number(p.distance));
  std::vector<std::pair<std::string, std::string>> rec{
      {"kind", "projection"}, {"query", joined(y)}, {"point", joined(p.point)}, {"distance", io::format_number(p.distance)}};
  if (p.certificate) {
    art.field("certificate_normal", io::format_vector(p.certificate->normal));
    art.field("certificate_slack", io::format_number(p.certificate->slack));
    rec.emplace_back("normal", joined(p.certificate->normal));
    rec.emplace_back("slack", io::format_number(p.certificate->slack));
  }
  art.record(rec);
  const auto witness = anf_membership(s, y);
  art.field("anf_witness", witness ? std::to_string(witness->index) + " " + io::format_vector(witness->point) : "none");
  if (witness) art.record({{"kind", "anf_witness"}, {"index", std::to_string(witness->index)}, {"point", joined(witness->point)}});
  art.table("points.csv", s.ambient_dim(), {}, plain_rows(s.points()));
  art.table("projection.csv", s.ambient_dim(), {"role"},
            Rows{{y, {"query"}}, {p.point, {"projection"}}});
  if (p.certificate) certificate_tables(art, s, {*p.certificate});
  return kSuccess;
}

std::vector<Vector> load_points_matching(const std::filesystem::path& path, Index dim) {
  const auto f = io::load_point_cloud(path);
  if (f.dim != dim) throw DimensionMismatch("'" + path.string() + "' has dim " + std::to_string(f.dim));
  return f.points;
}

int run_convexity_body(const RunConfig& cfg, const ToleranceProfile& tol, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const ConvexBody b = io::to_convex_body(file, tol);
  // A body's cloud samples its boundary, so every sample is checked by default.
  const std::vector<Vector> boundary =
      cfg.boundary_path ? load_points_matching(*cfg.boundary_path, file.dim) : b.base().points();
  std::vector<Vector> excluded;
  if (cfg.excluded_path) excluded = load_points_matching(*cfg.excluded_path, file.dim);
  const BodyConvexityReport r = convexity_check_body(b, boundary, excluded);
  std::vector<SupportCertificate> certs;
  Rows rows;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& pr = r.points[i];
    std::vector<std::pair<std::string, std::string>> rec{
        {"kind", "boundary_point"}, {"index", std::to_string(i)}, {"point", joined(pr.point)},
        {"hull_interior", yes_no(pr.hull_interior)}, {"certified", yes_no(pr.certificate.has_value())}};
    if (pr.certificate) {
      rec.emplace_back("normal", joined(pr.certificate->normal));
      rec.emplace_back("slack", io::format_number(pr.certificate->slack));
      certs.push_back(*pr.certificate);
    }
    art.record(rec);
    rows.emplace_back(pr.point, std::vector<std::string>{yes_no(pr.certificate.has_value())});
  }
  for (const auto& [ci, si] : r.halfspace_violations) {
    art.record({{"kind", "halfspace_violation"}, {"certificate", std::to_string(ci)}, {"sample", std::to_string(si)}});
  }
  for (const auto i : r.excluded_inside) {
    art.record({{"kind", "excluded_inside"}, {"probe", std::to_string(i)}, {"point", joined(excluded[i])}});
  }
  const auto uncertified = static_cast<std::size_t>(
      std::count_if(r.points.begin(), r.points.end(), [](const auto& p) { return !p.certificate; }));
  art.field("boundary_points", std::to_string(r.points.size()));
  art.field("uncertified_points", std::to_string(uncertified));
  art.field("halfspace_violations", std::to_string(r.halfspace_violations.size()));
  art.field("excluded_probes", std::to_string(excluded.size()));
  art.field("excluded_inside", std::to_string(r.excluded_inside.size()));
  art.field("convex_consistent", yes_no(r.convex_consistent));
  art.table("boundary.csv", file.dim, {"certified"}, rows);
  certificate_tables(art, b.base(), certs);
  return r.convex_consistent ? kSuccess : kNegative;
}

int run_convexity_anf(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const SampledSet s = io::to_sampled_set(file, tol);
  const std::vector<Vector> probes =
      cfg.outside_path ? load_points_matching(*cfg.outside_path, file.dim)
                       : default_outside_probes(s, file.interior.has_value(), rng,
                                                static_cast<std::size_t>(cfg.probe_count));
  const AnfConvexityReport r = convexity_check_anf(s, probes);
  Rows rows;
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    const auto& pc = r.probes[i];
    std::vector<std::pair<std::string, std::string>> rec{
        {"kind", "probe"}, {"index", std::to_string(i)}, {"probe", joined(pc.probe)},
        {"inside_hull", yes_no(pc.inside_hull)}, {"covered", yes_no(pc.witness.has_value())}};
    if (pc.witness) rec.emplace_back("witness", std::to_string(pc.witness->index));
    art.record(rec);
    rows.emplace_back(pc.probe, std::vector<std::string>{yes_no(pc.witness.has_value())});
  }
  art.field("probe_source", cfg.outside_path ? "file" : "generated");
  art.field("probes", std::to_string(r.probes.size()));
  art.field("uncovered", std::to_string(r.uncovered.size()));
  for (const auto i : r.uncovered) art.field("uncovered_probe[" + std::to_string(i) + "]", io::format_vector(r.probes[i].probe));
  art.field("anf_covered", yes_no(r.covered));
  art.table("points.csv", s.ambient_dim(), {}, plain_rows(s.points()));
  art.table("probes.csv", s.ambient_dim(), {"covered"}, rows);
  return r.covered ? kSuccess : kNegative;
}

std::size_t direction_count(const RunConfig& cfg) { return static_cast<std::size_t>(std::max(cfg.probe_count, 8)); }

int run_ray_map(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const ConvexBody b = io::to_convex_body(file, tol);
  const SphereSampling sampling = default_sampling(file.dim, direction_count(cfg), rng);
  const SampledHypersurface phi = radial_homeo(b, sampling);
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double err = (radial_inverse(phi.points()[i]) - sampling.directions()[i]).norm();
    worst = std::max(worst, err);
    art.record({{"kind", "ray"}, {"index", std::to_string(i)}, {"direction", joined(sampling.directions()[i])},
                {"point", joined(phi.points()[i])}, {"round_trip_error", io::format_number(err)}});
  }
  art.field("directions", std::to_string(phi.size()));
  art.field("min_radius", io::format_number(phi.min_radius()));
  art.field("max_radius", io::format_number(phi.max_radius()));
  art.field("max_round_trip_error", io::format_number(worst));
  std::ostringstream hs;
  io::write_hypersurface(hs, phi);
  art.file("phi.hs", hs.str());
  art.table("points.csv", file.dim, {}, plain_rows(file.points));
  art.table("boundary.csv", file.dim, {}, plain_rows(phi.points()));
  return worst <= tol.tol_fix ? kSuccess : kInvariantFailure;
}

int run_psi_check(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const ConvexBody b = io::to_convex_body(file, tol);
  const SphereSampling sampling = default_sampling(file.dim, direction_count(cfg), rng);
  const RadialMapTable t = make_radial_map(b, sampling);
  double forward = 0.0;
  double backward = 0.0;
  Rows rows;
  for (int i = 0; i < cfg.probe_count; ++i) {
    const Vector u = rng.unit_vector(file.dim);
    const Vector y = rng.uniform(1.0, 2.0) * u;
    const Vector py = psi_extend(t, y);
    const double e1 = (psi_inverse(t, py) - y).norm();
    const Vector z = rng.uniform(1.0, t.gamma_norm(u)) * u;
    const double e2 = (psi_extend(t, psi_inverse(t, z)) - z).norm();
    forward = std::max(forward, e1);
    backward = std::max(backward, e2);
    art.record({{"kind", "annulus_sample"}, {"index", std::to_string(i)}, {"y", joined(y)}, {"psi_y", joined(py)},
                {"inverse_error", io::format_number(e1)}, {"forward_error", io::format_number(e2)}});
    std::vector<std::string> cols;
    for (Index k = 0; k < py.size(); ++k) cols.push_back(io::format_number(py(k)));
    rows.emplace_back(y, std::move(cols));
  }
  double branch = 0.0;
  for (const auto& u : sampling.directions()) {
    branch = std::max(branch, (psi_extend(t, u) - u).norm());
    branch = std::max(branch, (psi_extend(t, 2.0 * u) - t.gamma(2.0 * u)).norm());
  }
  art.field("scale", io::format_number(t.scale()));
  art.field("samples", std::to_string(cfg.probe_count));
  art.field("max_inverse_round_trip_error", io::format_number(forward));
  art.field("max_forward_round_trip_error", io::format_number(backward));
  art.field("max_boundary_branch_error", io::format_number(branch));
  const std::vector<std::string> psi_cols =
      file.dim == 2 ? std::vector<std::string>{"psi_x", "psi_y"} : std::vector<std::string>{"psi_x", "psi_y", "psi_z"};
  art.table("psi.csv", file.dim, psi_cols, rows);
  const bool ok = forward <= tol.tol_fix && backward <= tol.tol_fix && branch <= tol.tol_fix;
  return ok ? kSuccess : kInvariantFailure;
}

int run_convexify(const RunConfig& cfg, const ToleranceProfile& tol, Artifacts& art) {
  const SampledHypersurface phi = io::load_hypersurface(single_input(cfg), tol);
  const Convexification cx = convexify(phi);
  const Convexification again = convexify(cx.omega);
  double drift = 0.0;
  for (std::size_t i = 0; i < cx.omega.size(); ++i) {
    drift = std::max(drift, (again.omega.points()[i] - cx.omega.points()[i]).norm());
  }
  const auto phi_report = is_convex_hypersurface(phi);
  const auto omega_report = is_convex_hypersurface(cx.omega);
  const bool extension = affine_extension_check(cx.omega);
  for (const auto& [a, b] : cx.correspondence) {
    art.record({{"kind", "correspondence"}, {"phi", std::to_string(a)}, {"omega", std::to_string(b)},
                {"phi_radius", io::format_number(phi.points()[a].norm())},
                {"omega_radius", io::format_number(cx.omega.points()[b].norm())}});
  }
  art.field("directions", std::to_string(phi.size()));
  art.field("input_convex", yes_no(phi_report.convex));
  art.field("input_unsupported_points", std::to_string(phi_report.unsupported.size()));
  art.field("omega_convex", yes_no(omega_report.convex));
  art.field("idempotence_drift", io::format_number(drift));
  art.field("affine_extension_full", yes_no(extension));
  std::ostringstream hs;
  io::write_hypersurface(hs, cx.omega);
  art.file("omega.hs", hs.str());
  art.table("phi.csv", phi.ambient_dim(), {}, plain_rows(phi.points()));
  art.table("omega.csv", phi.ambient_dim(), {}, plain_rows(cx.omega.points()));
  const bool ok = drift <= tol.tol_fix && omega_report.convex && extension;
  return ok ? kSuccess : kInvariantFailure;
}

int run_report(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  const auto file = io::load_point_cloud(single_input(cfg));
  const SampledSet s = io::to_sampled_set(file, tol);
  std::size_t extreme = 0;
  std::size_t supported = 0;
  for (const auto& x : s.points()) {
    extreme += is_extreme_point(s, x) ? 1 : 0;
    supported += support_certificate(s, x) ? 1 : 0;
  }
  art.field("points", std::to_string(s.size()));
  art.field("affine_hull_dim", std::to_string(affine_hull_dim(s.points(), tol)));
  art.field("resolution", io::format_number(s.resolution()));
  art.field("extreme_points", std::to_string(extreme));
  art.field("support_points", std::to_string(supported));
  if (file.interior) {
    const ConvexBody b = io::to_convex_body(file, tol);
    art.field("body_convex_consistent", yes_no(convexity_check_body(b, s.points()).convex_consistent));
  }
  const auto probes = default_outside_probes(s, file.interior.has_value(), rng,
                                             static_cast<std::size_t>(cfg.probe_count));
  const auto anf = convexity_check_anf(s, probes);
  art.field("anf_probes", std::to_string(probes.size()));
  art.field("anf_uncovered", std::to_string(anf.uncovered.size()));
  art.field("anf_covered", yes_no(anf.covered));
  art.record({{"kind", "summary"}, {"points", std::to_string(s.size())}, {"extreme", std::to_string(extreme)},
              {"support", std::to_string(supported)}, {"anf_covered", yes_no(anf.covered)}});
  art.table("points.csv", s.ambient_dim(), {}, plain_rows(s.points()));
  return kSuccess;
}

int dispatch(const RunConfig& cfg, const ToleranceProfile& tol, Rng& rng, Artifacts& art) {
  switch (cfg.command) {
    case Command::kDecompose: return run_decompose(cfg, tol, rng, art);
    case Command::kPolar: return run_polar(cfg, tol, rng, art);
    case Command::kSupport: return run_support(cfg, tol, art);
    case Command::kProject: return run_project(cfg, tol, art);
    case Command::kConvexityBody: return run_convexity_body(cfg, tol, art);
    case Command::kConvexityAnf: return run_convexity_anf(cfg, tol, rng, art);
    case Command::kRayMap: return run_ray_map(cfg, tol, rng, art);
    case Command::kPsiCheck: return run_psi_check(cfg, tol, rng, art);
    case Command::kConvexify: return run_convexify(cfg, tol, art);
    case Command::kReport: return run_report(cfg, tol, rng, art);
  }
  throw PreconditionError("unknown command");
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& [cmd, n] : kCommands) v.push_back(n);
    return v;
  }();
  return names;
}

ToleranceProfile RunConfig::tolerances() const {
  ToleranceProfile t;
  if (tol_mem) t.tol_mem = *tol_mem;
  if (tol_ortho) t.tol_ortho = *tol_ortho;
  if (tol_rank) t.tol_rank = *tol_rank;
  if (tol_fix) t.tol_fix = *tol_fix;
  if (max_iter) t.max_iter = *max_iter;
  return t;
}

std::vector<double> parse_coordinates(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      throw ParseError("bad coordinate list '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<Vector> default_outside_probes(const SampledSet& s, bool body, Rng& rng, std::size_t count) {
  const Index d = s.ambient_dim();
  Vector lo = s.points().front();
  Vector hi = s.points().front();
  for (const auto& p : s.points()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1.0);
  lo.array() -= 0.5 * extent;
  hi.array() += 0.5 * extent;
  const double clearance = 2.0 * s.resolution() + s.tol().tol_fix;
  std::vector<Vector> probes;
  const std::size_t max_attempts = 100 * count + 100;
  for (std::size_t attempt = 0; attempt < max_attempts && probes.size() < count; ++attempt) {
    Vector z(d);
    for (Index i = 0; i < d; ++i) z(i) = rng.uniform(lo(i), hi(i));
    if (body) {
      if (hull_member(s, z)) continue;
    } else {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& p : s.points()) nearest = std::min(nearest, (p - z).norm());
      if (nearest <= clearance) continue;
    }
    probes.push_back(std::move(z));
  }
  return probes;
}

SphereSampling default_sampling(Index dim, std::size_t count, Rng& rng) {
  if (dim == 2) return SphereSampling::circle(count);
  if (dim == 3) return SphereSampling::fibonacci(count);
  return SphereSampling::random(dim, count, rng);
}

int run(const RunConfig& config, std::ostream& log) {
  Artifacts art;
  art.field("command", std::string(command_name(config.command)));
  for (std::size_t i = 0; i < config.input_paths.size(); ++i) {
    art.field("input[" + std::to_string(i) + "]", config.input_paths[i].string());
  }
  art.field("generator", std::string(Rng::kGeneratorName));
  art.field("seed", std::to_string(config.seed));
  art.field("probe_count", std::to_string(config.probe_count));
  const ToleranceProfile tol = config.tolerances();
  art.field("tol_mem", io::format_number(tol.tol_mem));
  art.field("tol_ortho", io::format_number(tol.tol_ortho));
  art.field("tol_rank", io::format_number(tol.tol_rank));
  art.field("tol_fix", io::format_number(tol.tol_fix));
  art.field("max_iter", std::to_string(tol.max_iter));
  int status = kSuccess;
  std::string message;
  try {
    tol.validate();
    if (config.probe_count < 1) throw InvariantViolation("probe count must be positive");
    Rng rng(config.seed);
    status = dispatch(config, tol, rng, art);
  } catch (const ParseError& e) {
    status = kParseFailure;
    message = e.what();
  } catch (const IndeterminateError& e) {
    status = kIndeterminate;
    message = e.what();
  } catch (const Error& e) {
    status = kInvariantFailure;
    message = e.what();
  }
  if (!message.empty()) {
    art.field("error", message);
    log << "convexkit " << command_name(config.command) << ": " << status_name(status) << ": " << message << '\n';
  }
  try {
    art.write(config.output_dir, status);
  } catch (const std::exception& e) {
    log << "convexkit: cannot write artifacts: " << e.what() << '\n';
    return kInvariantFailure;
  }
  return status;
}

}  // namespace convexkit::cli
