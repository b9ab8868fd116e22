#include "nc3/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace nc3 {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw ConfigurationError(key + ": expected an integer, got '" + text + "'");
  }
  if (pos != text.size()) throw ConfigurationError(key + ": trailing characters in '" + text + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigurationError(key + ": expected a number, got '" + text + "'");
  }
  if (pos != text.size()) throw ConfigurationError(key + ": trailing characters in '" + text + "'");
  return v;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class F>
auto staged(const std::string& stage, int n, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const std::exception& e) {
    throw StageError(stage, n, e.what(), std::current_exception());
  }
}

}  // namespace

void RunConfig::validate() const {
  const auto known = preset_names();
  if (std::find(known.begin(), known.end(), problem) == known.end()) {
    throw ConfigurationError("unknown problem preset '" + problem + "'");
  }
  if (levels.empty()) throw ConfigurationError("levels: at least one level required");
  const int min_n = problem == "dirichlet-paper" ? 2 : 1;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < min_n) {
      throw ConfigurationError("levels: n must be >= " + std::to_string(min_n) + " for " + problem);
    }
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw ConfigurationError("levels: must be strictly increasing");
    }
  }
  for (int q : {orders.volume, orders.edge, orders.error}) {
    if (q < 1 || q > kMaxGaussPoints) {
      throw ConfigurationError("quadrature order must be in [1, 16], got " + std::to_string(q));
    }
  }
  if (!(solver_tol > 0.0)) throw ConfigurationError("solver.tol must be positive");
  if (threads < 1) throw ConfigurationError("threads must be >= 1");
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  for (const auto& cell : split(text, ',')) {
    if (cell.empty()) throw ConfigurationError("levels: empty entry in '" + text + "'");
    out.push_back(parse_int("levels", cell));
  }
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "pretty" || text == "pretty-table") return OutputFormat::Pretty;
  throw ConfigurationError("output.format must be 'csv' or 'pretty', got '" + text + "'");
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigurationError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") {
      cfg.problem = value;
    } else if (key == "levels") {
      cfg.levels = parse_levels(value);
    } else if (key == "quad.volume") {
      cfg.orders.volume = parse_int(key, value);
    } else if (key == "quad.edge") {
      cfg.orders.edge = parse_int(key, value);
    } else if (key == "quad.error") {
      cfg.orders.error = parse_int(key, value);
    } else if (key == "solver.tol") {
      cfg.solver_tol = parse_real(key, value);
    } else if (key == "solver.max_iter") {
      cfg.solver_max_iter = parse_int(key, value);
    } else if (key == "output.path") {
      cfg.output_path = value;
    } else if (key == "output.format") {
      cfg.format = parse_format(value);
    } else if (key == "threads") {
      cfg.threads = parse_int(key, value);
    } else {
      throw ConfigurationError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

LevelResult run_level(const PresetProblem& preset, int n, const RunConfig& config) {
  const Problem& problem = preset.problem;
  const Mesh mesh = staged("mesh", n, [&] { return unit_square_grid(n); });
  const DofMap dofs = staged("dofmap", n, [&] { return build_dofmap(mesh, problem.space_kind()); });
  AssemblyOptions opts;
  opts.orders = config.orders;
  opts.threads = config.threads;
  const SparseSystem sys = staged("assemble", n, [&] { return assemble(mesh, dofs, problem, opts); });
  SolveOutcome sol =
      staged("solve", n, [&] { return solve(sys, config.solver_tol, config.solver_max_iter); });
  LevelResult out;
  out.n = n;
  out.dofs = dofs.total;
  out.iterations = sol.iterations;
  out.solve_residual = sol.final_residual;
  const FeFunction uh(dofs, std::move(sol.coefficients));
  out.errors = staged("errors", n, [&] {
    return compute_errors(mesh, uh, preset.exact, preset.grad_exact, problem, config.orders.error);
  });
  return out;
}

ConvergenceReport run_convergence(const RunConfig& config, std::ostream* log) {
  config.validate();
  const PresetProblem preset = preset_problem(config.problem);
  ConvergenceReport report;
  for (int n : config.levels) {
    const LevelResult lr = run_level(preset, n, config);
    ConvergenceRow row;
    row.h = 1.0 / n;
    row.dofs = lr.dofs;
    row.l2_error = lr.errors.l2;
    row.energy_error = lr.errors.energy;
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.l2_order = observed_order(prev.l2_error, row.l2_error);
      row.energy_order = observed_order(prev.energy_error, row.energy_error);
    }
    report.rows.push_back(row);
    if (log) {
      *log << "n=" << n << " dofs=" << lr.dofs << " cg_iterations=" << lr.iterations
           << " residual=" << std::scientific << std::setprecision(2) << lr.solve_residual
           << std::defaultfloat << '\n';
    }
  }
  return report;
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "h,dofs,l2_error,l2_order,energy_error,energy_order\n";
  for (const auto& r : report.rows) {
    os << format_real(r.h) << ',' << r.dofs << ',' << format_real(r.l2_error) << ','
       << (r.l2_order ? format_real(*r.l2_order) : "") << ',' << format_real(r.energy_error)
       << ',' << (r.energy_order ? format_real(*r.energy_order) : "") << '\n';
  }
}

ConvergenceReport parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "h,dofs,l2_error,l2_order,energy_error,energy_order") {
    throw ConfigurationError("CSV header mismatch");
  }
  ConvergenceReport report;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != 6) throw ConfigurationError("CSV row must have 6 columns: " + line);
    ConvergenceRow r;
    r.h = parse_real("h", cells[0]);
    r.dofs = parse_int("dofs", cells[1]);
    r.l2_error = parse_real("l2_error", cells[2]);
    if (!cells[3].empty()) r.l2_order = parse_real("l2_order", cells[3]);
    r.energy_error = parse_real("energy_error", cells[4]);
    if (!cells[5].empty()) r.energy_order = parse_real("energy_order", cells[5]);
    report.rows.push_back(r);
  }
  return report;
}

void write_pretty(std::ostream& os, const ConvergenceReport& report) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %8s  %12s %6s  %12s %6s\n", "h", "DOFs", "||u-u_h||_0",
                "ratio", "||u-u_h||_h", "ratio");
  os << buf;
  for (const auto& r : report.rows) {
    const std::string h = "1/" + std::to_string(static_cast<long>(std::lround(1.0 / r.h)));
    char l2o[16] = "-";
    char eo[16] = "-";
    if (r.l2_order) std::snprintf(l2o, sizeof l2o, "%.2f", *r.l2_order);
    if (r.energy_order) std::snprintf(eo, sizeof eo, "%.2f", *r.energy_order);
    std::snprintf(buf, sizeof buf, "%-8s %8d  %12.3e %6s  %12.3e %6s\n", h.c_str(), r.dofs,
                  r.l2_error, l2o, r.energy_error, eo);
    os << buf;
  }
}

}  // namespace nc3
