#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nc3/assembly.hpp"
#include "nc3/errors.hpp"
#include "nc3/problems.hpp"

namespace nc3 {

enum class OutputFormat { Csv, Pretty };

struct RunConfig {
  std::string problem = "dirichlet-paper";
  /// Mesh resolutions n (mesh is n x n, h = 1/n), strictly increasing.
  std::vector<int> levels = {2, 4, 8, 16, 32};
  QuadratureOrders orders;
  double solver_tol = kDefaultSolverTolerance;
  /// <= 0 selects 20 * dimension.
  int solver_max_iter = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::Pretty;
  int threads = 1;

  /// Throws ConfigurationError on invalid settings.
  void validate() const;
};

/// Parses "2,4,8" (whitespace tolerated).
std::vector<int> parse_levels(const std::string& text);

OutputFormat parse_format(const std::string& text);

/// Applies a flat key-value config (one "key = value" per line, '#' starts a
/// comment) on top of `base`. Keys: problem, levels, quad.volume, quad.edge,
/// quad.error, solver.tol, solver.max_iter, output.path, output.format,
/// threads. Throws ConfigurationError on unknown keys or malformed values.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

struct ConvergenceRow {
  double h = 0.0;
  int dofs = 0;
  double l2_error = 0.0;
  std::optional<double> l2_order;
  double energy_error = 0.0;
  std::optional<double> energy_order;

  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

/// Error raised by a pipeline stage (mesh, dofmap, assemble, solve, errors),
/// wrapping the original exception.
class StageError : public Error {
 public:
  StageError(std::string stage, int level, const std::string& what, std::exception_ptr cause)
      : Error("[" + stage + ", n=" + std::to_string(level) + "] " + what),
        stage_(std::move(stage)),
        cause_(std::move(cause)) {}

  const std::string& stage() const { return stage_; }
  std::exception_ptr cause() const { return cause_; }

 private:
  std::string stage_;
  std::exception_ptr cause_;
};

struct LevelResult {
  int n = 0;
  int dofs = 0;
  ErrorPair errors;
  int iterations = 0;
  double solve_residual = 0.0;
};

/// Mesh, dof map, assembly, solve and error evaluation for one resolution.
/// Every failure surfaces as a StageError.
LevelResult run_level(const PresetProblem& preset, int n, const RunConfig& config);

/// Runs every level of the config in order and chains observed orders.
/// When `log` is given, one progress line per level is written to it.
ConvergenceReport run_convergence(const RunConfig& config, std::ostream* log = nullptr);

/// CSV with header h,dofs,l2_error,l2_order,energy_error,energy_order; reals
/// with 17 significant digits, orders empty on the first row.
void write_csv(std::ostream& os, const ConvergenceReport& report);
ConvergenceReport parse_csv(std::istream& in);

/// Human-readable table: errors to 4 significant digits, orders to 2 decimals.
void write_pretty(std::ostream& os, const ConvergenceReport& report);

}  // namespace nc3
