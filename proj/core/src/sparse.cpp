#include "nc3/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "nc3/errors.hpp"

namespace nc3 {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Curvature below this fraction of p^T D p is treated as singular.
constexpr double kCurvatureFloor = 1e-14;
// Iterations without a 1% improvement of the best residual before giving up.
constexpr int kStagnationWindow = 500;
constexpr int kMaxResidualReplacements = 5;

}  // namespace

CsrMatrix CsrMatrix::from_pattern(const std::vector<std::vector<int>>& pattern) {
  CsrMatrix m;
  const int n = static_cast<int>(pattern.size());
  m.row_ptr_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> cols = pattern[i];
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (int c : cols) {
      if (c < 0 || c >= n) throw InvalidArgumentError("pattern column out of range");
    }
    m.col_idx_.insert(m.col_idx_.end(), cols.begin(), cols.end());
    m.row_ptr_[i + 1] = static_cast<int>(m.col_idx_.size());
  }
  m.values_.assign(m.col_idx_.size(), 0.0);
  return m;
}

CsrMatrix CsrMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  std::vector<std::vector<int>> pattern(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].size() != dense.size()) throw InvalidArgumentError("matrix must be square");
    for (std::size_t j = 0; j < dense[i].size(); ++j) {
      if (dense[i][j] != 0.0) pattern[i].push_back(static_cast<int>(j));
    }
  }
  CsrMatrix m = from_pattern(pattern);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    for (int j : pattern[i]) m.add(static_cast<int>(i), j, dense[i][j]);
  }
  return m;
}

void CsrMatrix::add(int i, int j, double v) {
  const auto first = col_idx_.begin() + row_ptr_[i];
  const auto last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) {
    throw InvalidArgumentError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                               ") is not in the sparsity pattern");
  }
  values_[it - col_idx_.begin()] += v;
}

double CsrMatrix::at(int i, int j) const {
  const auto first = col_idx_.begin() + row_ptr_[i];
  const auto last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[it - col_idx_.begin()];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const int n = rows();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows());
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows());
  for (int i = 0; i < rows(); ++i) d[i] = at(i, i);
  return d;
}

double CsrMatrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows(); ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(values_[k]);
    best = std::max(best, s);
  }
  return best;
}

double CsrMatrix::asymmetry_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows(); ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      s += std::abs(values_[k] - at(col_idx_[k], i));
    }
    best = std::max(best, s);
  }
  return best;
}

std::vector<std::vector<double>> CsrMatrix::to_dense() const {
  std::vector<std::vector<double>> d(rows(), std::vector<double>(rows(), 0.0));
  for (int i = 0; i < rows(); ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d[i][col_idx_[k]] = values_[k];
  }
  return d;
}

void write_coordinate(std::ostream& os, const CsrMatrix& a) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  const auto& rp = a.row_ptr();
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = rp[i]; k < rp[i + 1]; ++k) {
      os << i << ' ' << a.col_idx()[k] << ' ' << a.values()[k] << '\n';
    }
  }
  os.flags(flags);
  os.precision(prec);
}

PcgResult pcg_solve(const CsrMatrix& a, std::span<const double> b, double rel_tol, int max_iter) {
  const int n = a.rows();
  if (static_cast<int>(b.size()) != n) throw InvalidArgumentError("rhs size mismatch");
  if (!(rel_tol > 0.0)) throw InvalidArgumentError("rel_tol must be positive");

  PcgResult res;
  res.x.assign(n, 0.0);

  std::vector<double> inv_diag = a.diagonal();
  for (int i = 0; i < n; ++i) {
    if (!(inv_diag[i] > 0.0)) {
      throw SolverError(SolverError::Kind::Indefinite,
                        "non-positive diagonal entry in row " + std::to_string(i), {});
    }
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), q(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  double rz = dot(r, z);
  const double initial = std::sqrt(rz);
  res.residual_history.push_back(initial);
  if (initial == 0.0) return res;
  const double target = rel_tol * initial;

  p = z;
  double best = initial;
  int best_iter = 0;
  int replacements = 0;

  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(p, q);
    const double pq = dot(p, q);
    double pdp = 0.0;
    for (int i = 0; i < n; ++i) pdp += p[i] * p[i] / inv_diag[i];
    if (!(pq > kCurvatureFloor * pdp)) {
      throw SolverError(SolverError::Kind::Indefinite,
                        "non-positive curvature at iteration " + std::to_string(it) +
                            " (matrix singular or indefinite)",
                        res.residual_history);
    }
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
      z[i] = inv_diag[i] * r[i];
    }
    double rz_new = dot(r, z);
    double rnorm = std::sqrt(rz_new);
    res.iterations = it;

    bool restart = false;
    if (rnorm <= target) {
      // Confirm against the true residual; drift can fake convergence.
      a.multiply(res.x, q);
      for (int i = 0; i < n; ++i) {
        r[i] = b[i] - q[i];
        z[i] = inv_diag[i] * r[i];
      }
      rz_new = dot(r, z);
      rnorm = std::sqrt(rz_new);
      if (rnorm <= target) {
        res.residual_history.push_back(rnorm);
        res.final_residual = rnorm;
        return res;
      }
      if (++replacements > kMaxResidualReplacements) {
        res.residual_history.push_back(rnorm);
        throw SolverError(SolverError::Kind::Stagnation,
                          "true residual stalls above tolerance (" + std::to_string(rnorm) +
                              " > " + std::to_string(target) + ")",
                          res.residual_history);
      }
      restart = true;
    }
    res.residual_history.push_back(rnorm);

    if (rnorm < 0.99 * best) {
      best = rnorm;
      best_iter = it;
    } else if (it - best_iter > kStagnationWindow) {
      throw SolverError(SolverError::Kind::Stagnation,
                        "no residual reduction over " + std::to_string(kStagnationWindow) +
                            " iterations (singular or inconsistent system)",
                        res.residual_history);
    }

    if (restart) {
      p = z;
    } else {
      const double beta = rz_new / rz;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rz = rz_new;
  }
  throw SolverError(SolverError::Kind::NonConvergence,
                    "no convergence after " + std::to_string(max_iter) + " iterations",
                    res.residual_history);
}

}  // namespace nc3
