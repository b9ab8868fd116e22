// nc3: command-line driver for the cubic nonconforming rectangle element.
//
//   nc3 solve          --problem dirichlet-paper --n 8
//   nc3 convergence    --problem neumann-paper --levels 2,4,8,16 --format csv --out t.csv
//   nc3 verify-element [--enrichment x3y+xy3] [--uncorrected-g12]
//   nc3 dump-matrix    --problem dirichlet-paper --n 4 --out k.txt
//   nc3 dump-mesh      --n 2
//
// Exit codes: 0 success, 1 check failure, 2 configuration error, 3 solver failure.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "nc3/assembly.hpp"
#include "nc3/convergence.hpp"
#include "nc3/errors.hpp"
#include "nc3/mesh.hpp"
#include "nc3/problems.hpp"
#include "nc3/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

// Flags shared by the solving subcommands. Values only override the config
// file when given on the command line.
struct RunFlags {
  std::string config_path;
  std::optional<std::string> problem;
  std::optional<std::string> levels;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> quad_volume;
  std::optional<int> quad_edge;
  std::optional<int> quad_error;
  std::optional<int> threads;

  void attach(CLI::App* app, bool with_levels) {
    app->add_option("--config", config_path, "Flat key-value config file");
    app->add_option("--problem", problem, "Problem preset (dirichlet-paper | neumann-paper)");
    if (with_levels) app->add_option("--levels", levels, "Comma-separated mesh resolutions n");
    app->add_option("--tol", tol, "CG relative tolerance");
    app->add_option("--max-iter", max_iter, "CG iteration limit (0: 20 x dimension)");
    app->add_option("--out", out, "Output path");
    app->add_option("--format", format, "Output format (csv | pretty)");
    app->add_option("--quad-volume", quad_volume, "Gauss points per direction, element integrals");
    app->add_option("--quad-edge", quad_edge, "Gauss points, boundary edge integrals");
    app->add_option("--quad-error", quad_error, "Gauss points per direction, error norms");
    app->add_option("--threads", threads, "Worker threads for element kernels");
  }

  nc3::RunConfig resolve() const {
    nc3::RunConfig cfg;
    if (!config_path.empty()) cfg = nc3::load_config_file(config_path, cfg);
    if (problem) cfg.problem = *problem;
    if (levels) cfg.levels = nc3::parse_levels(*levels);
    if (tol) cfg.solver_tol = *tol;
    if (max_iter) cfg.solver_max_iter = *max_iter;
    if (out) cfg.output_path = *out;
    if (format) cfg.format = nc3::parse_format(*format);
    if (quad_volume) cfg.orders.volume = *quad_volume;
    if (quad_edge) cfg.orders.edge = *quad_edge;
    if (quad_error) cfg.orders.error = *quad_error;
    if (threads) cfg.threads = *threads;
    return cfg;
  }
};

// Writes through `emit` to the configured path, or stdout when none is set.
template <class Emit>
void write_output(const std::string& path, Emit&& emit) {
  if (path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw nc3::ConfigurationError("cannot open output file '" + path + "'");
  emit(os);
}

int run_solve(const RunFlags& flags, int n) {
  nc3::RunConfig cfg = flags.resolve();
  cfg.levels = {n};
  cfg.validate();
  const nc3::PresetProblem preset = nc3::preset_problem(cfg.problem);
  const nc3::LevelResult r = nc3::run_level(preset, n, cfg);
  write_output(cfg.output_path, [&](std::ostream& os) {
    os << "problem        " << cfg.problem << '\n'
       << "n              " << n << "  (h = 1/" << n << ")\n"
       << "dofs           " << r.dofs << '\n'
       << "cg_iterations  " << r.iterations << '\n'
       << std::scientific << std::setprecision(4)
       << "cg_residual    " << r.solve_residual << '\n'
       << "l2_error       " << r.errors.l2 << '\n'
       << "energy_error   " << r.errors.energy << '\n';
  });
  return kExitOk;
}

int run_convergence(const RunFlags& flags) {
  const nc3::RunConfig cfg = flags.resolve();
  cfg.validate();
  const nc3::ConvergenceReport report = nc3::run_convergence(cfg, &std::cerr);
  const auto emit = [&](std::ostream& os) {
    if (cfg.format == nc3::OutputFormat::Csv) {
      nc3::write_csv(os, report);
    } else {
      nc3::write_pretty(os, report);
    }
  };
  write_output(cfg.output_path, emit);
  if (!cfg.output_path.empty()) nc3::write_pretty(std::cout, report);
  return kExitOk;
}

int run_verify(const std::string& enrichment, bool uncorrected, int samples) {
  static const std::map<std::string, nc3::Enrichment> names{
      {"x3y-xy3", nc3::Enrichment::XCubedYMinusXYCubed},
      {"x3y+xy3", nc3::Enrichment::XCubedYPlusXYCubed},
      {"x3y", nc3::Enrichment::XCubedY},
      {"xy3", nc3::Enrichment::XYCubed},
  };
  const auto it = names.find(enrichment);
  if (it == names.end()) throw nc3::ConfigurationError("unknown enrichment '" + enrichment + "'");
  nc3::VerifyOptions opt;
  opt.enrichment = it->second;
  opt.uncorrected_g12 = uncorrected;
  opt.random_samples = samples;
  const nc3::VerifyReport report = nc3::verify_element(opt);
  nc3::write_verify_report(std::cout, report);
  return report.all_passed() ? kExitOk : kExitCheckFailure;
}

int run_dump_matrix(const RunFlags& flags, int n) {
  nc3::RunConfig cfg = flags.resolve();
  cfg.levels = {n};
  cfg.validate();
  const nc3::PresetProblem preset = nc3::preset_problem(cfg.problem);
  const nc3::Mesh mesh = nc3::unit_square_grid(n);
  const nc3::DofMap dofs = nc3::build_dofmap(mesh, preset.problem.space_kind());
  nc3::AssemblyOptions opts;
  opts.orders = cfg.orders;
  opts.threads = cfg.threads;
  const nc3::SparseSystem sys = nc3::assemble(mesh, dofs, preset.problem, opts);
  write_output(cfg.output_path, [&](std::ostream& os) { nc3::write_coordinate(os, sys.matrix); });
  return kExitOk;
}

int run_dump_mesh(int n, const std::string& out) {
  const nc3::Mesh mesh = nc3::unit_square_grid(n);
  write_output(out, [&](std::ostream& os) { nc3::write_mesh(os, mesh); });
  return kExitOk;
}

int exit_code_for(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const nc3::StageError& e) {
    return exit_code_for(e.cause());
  } catch (const nc3::SolverError&) {
    return kExitSolver;
  } catch (const nc3::ConfigurationError&) {
    return kExitConfig;
  } catch (const nc3::InvalidArgumentError&) {
    return kExitConfig;
  } catch (const nc3::InvalidDomainError&) {
    return kExitConfig;
  } catch (const nc3::EmptySpaceError&) {
    return kExitConfig;
  } catch (...) {
    return kExitCheckFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic nonconforming rectangle element: solver, convergence studies, checks"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  int solve_n = 8;
  auto* solve = app.add_subcommand("solve", "Solve one mesh level and print its errors");
  solve_flags.attach(solve, false);
  solve->add_option("--n", solve_n, "Mesh resolution (n x n)")->capture_default_str();

  RunFlags conv_flags;
  auto* conv = app.add_subcommand("convergence", "Mesh-refinement sweep with observed orders");
  conv_flags.attach(conv, true);

  std::string enrichment = "x3y-xy3";
  bool uncorrected = false;
  int samples = 100000;
  auto* verify = app.add_subcommand("verify-element", "Run the element property suite");
  verify->add_option("--enrichment", enrichment, "x3y-xy3 | x3y+xy3 | x3y | xy3")
      ->capture_default_str();
  verify->add_flag("--uncorrected-g12", uncorrected, "Use the misprinted g12 = (-1, +sqrt(3/5)), a duplicate of g10");
  verify->add_option("--samples", samples, "Random samples per identity check")
      ->capture_default_str();

  RunFlags dump_flags;
  int dump_n = 4;
  auto* dump = app.add_subcommand("dump-matrix", "Write the assembled matrix as sorted triplets");
  dump_flags.attach(dump, false);
  dump->add_option("--n", dump_n, "Mesh resolution (n x n)")->capture_default_str();

  int mesh_n = 2;
  std::string mesh_out;
  auto* dump_mesh = app.add_subcommand("dump-mesh", "Write the unit-square mesh in text form");
  dump_mesh->add_option("--n", mesh_n, "Mesh resolution (n x n)")->capture_default_str();
  dump_mesh->add_option("--out", mesh_out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return run_solve(solve_flags, solve_n);
    if (*conv) return run_convergence(conv_flags);
    if (*verify) return run_verify(enrichment, uncorrected, samples);
    if (*dump) return run_dump_matrix(dump_flags, dump_n);
    if (*dump_mesh) return run_dump_mesh(mesh_n, mesh_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(std::current_exception());
  }
  return kExitOk;
}
