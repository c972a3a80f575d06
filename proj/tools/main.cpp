#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convexkit/cli.hpp"
#include "convexkit/errors.hpp"

int main(int argc, char** argv) {
  using convexkit::cli::RunConfig;
  CLI::App app{"convexkit: cone calculus, support analysis and hypersurface tools"};
  app.set_help_all_flag("--help-all", "Expand help for all options");

  RunConfig cfg;
  std::string command;
  std::vector<std::string> inputs;
  std::string query;
  std::string boundary;
  std::string excluded;
  std::string outside;
  std::string output_dir = cfg.output_dir.string();
  double tol_mem = 0.0;
  double tol_fix = 0.0;
  double tol_ortho = 0.0;
  double tol_rank = 0.0;
  int max_iter = 0;

  std::vector<std::string> names;
  for (const auto n : convexkit::cli::command_names()) names.emplace_back(n);
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("inputs", inputs, "Input files")->required();
  auto* mem_opt = app.add_option("--tol-mem", tol_mem, "Membership slack")->envname("CONVEXKIT_TOL_MEM");
  auto* fix_opt = app.add_option("--tol-fix", tol_fix, "Round-trip distance tolerance")->envname("CONVEXKIT_TOL_FIX");
  auto* ortho_opt = app.add_option("--tol-ortho", tol_ortho, "Orthonormality tolerance")->envname("CONVEXKIT_TOL_ORTHO");
  auto* rank_opt = app.add_option("--tol-rank", tol_rank, "Relative singular-value cutoff")->envname("CONVEXKIT_TOL_RANK");
  auto* iter_opt = app.add_option("--max-iter", max_iter, "Iteration cap of the numerical kernels")->envname("CONVEXKIT_MAX_ITER");
  app.add_option("--seed", cfg.seed, "Seed of the mt19937_64 probe stream")->envname("CONVEXKIT_SEED");
  app.add_option("--probes", cfg.probe_count, "Probe, direction or sample count")->envname("CONVEXKIT_PROBES");
  app.add_option("--out", output_dir, "Output directory")->envname("CONVEXKIT_OUT");
  auto* query_opt = app.add_option("--query", query, "Point to project, comma-separated (project)");
  auto* boundary_opt = app.add_option("--boundary", boundary, "Boundary sample point cloud (convexity-body)");
  auto* excluded_opt = app.add_option("--excluded", excluded, "Points known outside the set (convexity-body)");
  auto* outside_opt = app.add_option("--outside", outside, "Probe point cloud (convexity-anf)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return convexkit::cli::kParseFailure;
  }

  cfg.command = *convexkit::cli::parse_command(command);
  for (const auto& p : inputs) cfg.input_paths.emplace_back(p);
  cfg.output_dir = output_dir;
  if (*mem_opt) cfg.tol_mem = tol_mem;
  if (*fix_opt) cfg.tol_fix = tol_fix;
  if (*ortho_opt) cfg.tol_ortho = tol_ortho;
  if (*rank_opt) cfg.tol_rank = tol_rank;
  if (*iter_opt) cfg.max_iter = max_iter;
  if (*boundary_opt) cfg.boundary_path = boundary;
  if (*excluded_opt) cfg.excluded_path = excluded;
  if (*outside_opt) cfg.outside_path = outside;
  if (*query_opt) {
    try {
      cfg.query = convexkit::cli::parse_coordinates(query);
    } catch (const convexkit::ParseError& e) {
      std::cerr << "convexkit: " << e.what() << '\n';
      return convexkit::cli::kParseFailure;
    }
  }
  return convexkit::cli::run(cfg, std::cerr);
}
