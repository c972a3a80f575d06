#pragma once

// Command dispatch behind the convexkit executable. Every run writes
// report.txt (human-readable), records.kv (one `key=value ...` record per
// line) and, for ambient dimension 2 or 3, comma-separated plot tables into
// the output directory.
//
// Exit status: 0 success, 1 negative verdict, 2 parse error, 3 invariant or
// precondition violation, 4 indeterminate numerical result.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convexkit/hypersurface.hpp"
#include "convexkit/linalg.hpp"
#include "convexkit/random.hpp"
#include "convexkit/support.hpp"

namespace convexkit::cli {

enum class Command {
  kDecompose,
  kPolar,
  kSupport,
  kProject,
  kConvexityBody,
  kConvexityAnf,
  kRayMap,
  kPsiCheck,
  kConvexify,
  kReport,
};

enum ExitStatus : int {
  kSuccess = 0,
  kNegative = 1,
  kParseFailure = 2,
  kInvariantFailure = 3,
  kIndeterminate = 4,
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);
const std::vector<std::string_view>& command_names();

struct RunConfig {
  Command command = Command::kReport;
  std::vector<std::filesystem::path> input_paths;
  std::optional<double> tol_mem;
  std::optional<double> tol_ortho;
  std::optional<double> tol_rank;
  std::optional<double> tol_fix;
  std::optional<int> max_iter;
  std::uint64_t seed = 0;
  int probe_count = 1000;
  std::filesystem::path output_dir = "convexkit-out";
  std::optional<std::vector<double>> query;            // project
  std::optional<std::filesystem::path> boundary_path;  // convexity-body
  std::optional<std::filesystem::path> excluded_path;  // convexity-body
  std::optional<std::filesystem::path> outside_path;   // convexity-anf

  ToleranceProfile tolerances() const;
};

// Runs one command; diagnostics go to `log`. Never throws for library
// errors: they are mapped to exit statuses and recorded in report.txt.
int run(const RunConfig& config, std::ostream& log);

// Comma-separated reals, e.g. "2,0.5". Throws ParseError.
std::vector<double> parse_coordinates(std::string_view text);

// Probes for the ANF check when none are given: uniform points in the
// bounding box enlarged by half its extent. For a sample of a body's
// boundary (`body`) probes must lie outside the hull; otherwise they must
// be farther than 2 resolution + tol_fix from every sample.
std::vector<Vector> default_outside_probes(const SampledSet& s, bool body, Rng& rng,
                                           std::size_t count);

// Circle directions in R^2, Fibonacci directions in R^3, random unit
// directions otherwise.
SphereSampling default_sampling(Index dim, std::size_t count, Rng& rng);

}  // namespace convexkit::cli
