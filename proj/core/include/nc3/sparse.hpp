#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace nc3 {

/// Square matrix in compressed-row storage with sorted column indices.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Empty matrix with a fixed sparsity pattern: `pattern[i]` lists the
  /// columns of row i (duplicates allowed, order irrelevant).
  static CsrMatrix from_pattern(const std::vector<std::vector<int>>& pattern);

  /// Dense-to-sparse helper, keeping nonzero entries only.
  static CsrMatrix from_dense(const std::vector<std::vector<double>>& dense);

  int rows() const { return static_cast<int>(row_ptr_.empty() ? 0 : row_ptr_.size() - 1); }
  std::size_t nonzeros() const { return values_.size(); }

  /// Adds v to entry (i, j); the entry must be in the pattern.
  void add(int i, int j, double v);
  double at(int i, int j) const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  std::vector<double> diagonal() const;

  /// max_i sum_j |a_ij|.
  double norm_inf() const;

  /// ||A - A^T||_inf.
  double asymmetry_inf() const;

  std::vector<std::vector<double>> to_dense() const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Coordinate text dump: one "row col value" line per stored entry, sorted by
/// row then column, values with 17 significant digits.
void write_coordinate(std::ostream& os, const CsrMatrix& a);

struct PcgResult {
  std::vector<double> x;
  int iterations = 0;
  /// Preconditioned residual norm sqrt(r^T D^{-1} r), initial value first.
  std::vector<double> residual_history;
  /// Recomputed sqrt(r^T D^{-1} r) for r = b - A x at exit.
  double final_residual = 0.0;
};

/// Conjugate gradients with Jacobi preconditioning, starting from zero.
/// Converged when the preconditioned residual falls to rel_tol times its
/// initial value; convergence is confirmed against the recomputed residual.
/// Throws SolverError: NonConvergence after max_iter iterations, Indefinite
/// on non-positive curvature or diagonal, Stagnation when no progress is made
/// over a long window (singular inconsistent systems).
PcgResult pcg_solve(const CsrMatrix& a, std::span<const double> b, double rel_tol, int max_iter);

}  // namespace nc3
