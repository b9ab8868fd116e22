#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nc3/assembly.hpp"
#include "nc3/errors.hpp"
#include "nc3/sparse.hpp"

namespace nc3 {
namespace {

std::vector<std::vector<double>> random_dense(int n, double fill, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (auto& row : a) {
    for (auto& x : row) {
      if (u(rng) < 2 * fill - 1) x = u(rng);
    }
  }
  return a;
}

TEST(Sparse, PatternAddAndLookup) {
  CsrMatrix a = CsrMatrix::from_pattern({{2, 0, 2}, {1}, {0, 2}});
  EXPECT_EQ(a.rows(), 3);
  EXPECT_EQ(a.nonzeros(), 5u);
  a.add(0, 2, 1.5);
  a.add(0, 2, 0.5);
  a.add(2, 0, -1.0);
  EXPECT_EQ(a.at(0, 2), 2.0);
  EXPECT_EQ(a.at(2, 0), -1.0);
  EXPECT_EQ(a.at(1, 0), 0.0);
  EXPECT_THROW(a.add(1, 0, 1.0), InvalidArgumentError);
  EXPECT_EQ(a.row_ptr(), (std::vector<int>{0, 2, 3, 5}));
  EXPECT_EQ(a.col_idx(), (std::vector<int>{0, 2, 1, 0, 2}));
}

TEST(Sparse, MultiplyMatchesDenseOracle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto dense = random_dense(17, 0.3, rng);
  const CsrMatrix a = CsrMatrix::from_dense(dense);
  std::vector<double> x(17);
  for (auto& v : x) v = u(rng);
  const std::vector<double> y = a.multiply(x);
  for (int i = 0; i < 17; ++i) {
    double s = 0.0;
    for (int j = 0; j < 17; ++j) s += dense[i][j] * x[j];
    EXPECT_NEAR(y[i], s, 1e-14);
  }
  EXPECT_EQ(a.to_dense(), dense);
}

TEST(Sparse, NormsAndDiagonal) {
  const CsrMatrix a = CsrMatrix::from_dense({{2, -1, 0}, {-3, 4, 1}, {0, 1, 5}});
  EXPECT_EQ(a.norm_inf(), 8.0);
  EXPECT_EQ(a.asymmetry_inf(), 2.0);
  EXPECT_EQ(a.diagonal(), (std::vector<double>{2, 4, 5}));
}

TEST(Sparse, CoordinateDump) {
  const CsrMatrix a = CsrMatrix::from_dense({{0.1, 0}, {0, 2}});
  std::ostringstream os;
  write_coordinate(os, a);
  EXPECT_EQ(os.str(), "0 0 0.10000000000000001\n1 1 2\n");
}

TEST(Pcg, IdentitySolvesInOneIteration) {
  const CsrMatrix id = CsrMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const std::vector<double> b = {1.0, -2.0, 3.5};
  const PcgResult r = pcg_solve(id, b, 1e-12, 10);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.x, b);
  EXPECT_EQ(r.final_residual, 0.0);
}

TEST(Pcg, ZeroRhsNeedsNoIterations) {
  const CsrMatrix a = CsrMatrix::from_dense({{2, 1}, {1, 2}});
  const PcgResult r = pcg_solve(a, std::vector<double>{0.0, 0.0}, 1e-12, 10);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.x, (std::vector<double>{0.0, 0.0}));
}

TEST(Pcg, DirichletSystemResidualByRecomputation) {
  const Mesh m = unit_square_grid(4);
  const DofMap map = build_dofmap(m, SpaceKind::Dirichlet0);
  Problem p;
  p.f = [](Vec2 x) { return std::sin(3 * x.x) + x.y; };
  const SparseSystem sys = assemble(m, map, p);
  const PcgResult r = pcg_solve(sys.matrix, sys.rhs, 1e-12, 1000);

  const auto ax = sys.matrix.multiply(r.x);
  const auto d = sys.matrix.diagonal();
  double r0 = 0.0, rk = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    r0 += sys.rhs[i] * sys.rhs[i] / d[i];
    const double ri = sys.rhs[i] - ax[i];
    rk += ri * ri / d[i];
  }
  EXPECT_LE(std::sqrt(rk), 1e-12 * std::sqrt(r0));
  EXPECT_NEAR(r.final_residual, std::sqrt(rk), 1e-3 * std::sqrt(rk) + 1e-300);
  EXPECT_EQ(r.residual_history.front(), std::sqrt(r0));
  EXPECT_EQ(static_cast<int>(r.residual_history.size()), r.iterations + 1);
}

TEST(Pcg, NonConvergenceCarriesHistory) {
  const Mesh m = unit_square_grid(4);
  const DofMap map = build_dofmap(m, SpaceKind::Dirichlet0);
  Problem p;
  p.f = [](Vec2) { return 1.0; };
  const SparseSystem sys = assemble(m, map, p);
  try {
    pcg_solve(sys.matrix, sys.rhs, 1e-12, 3);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::NonConvergence);
    EXPECT_EQ(e.history().size(), 4u);
  }
}

TEST(Pcg, IndefiniteMatrixIsReported) {
  const CsrMatrix a = CsrMatrix::from_dense({{1, 2}, {2, 1}});
  try {
    pcg_solve(a, std::vector<double>{1.0, -1.0}, 1e-12, 10);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::Indefinite);
  }
  const CsrMatrix neg = CsrMatrix::from_dense({{-1, 0}, {0, 1}});
  EXPECT_THROW(pcg_solve(neg, std::vector<double>{1.0, 1.0}, 1e-12, 10), SolverError);
}

TEST(Pcg, SingularPureNeumannSystemIsReported) {
  const Mesh m = unit_square_grid(4);
  const DofMap map = build_dofmap(m, SpaceKind::Full);
  Problem p;
  p.f = [](Vec2) { return 1.0; };
  p.bc = NeumannBC{[](Vec2, Vec2) { return 0.0; }, [](Vec2) { return 0.0; }};
  const SparseSystem sys = assemble(m, map, p);
  try {
    solve(sys);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_TRUE(e.kind() == SolverError::Kind::Indefinite ||
                e.kind() == SolverError::Kind::Stagnation);
  }
}

TEST(Pcg, InvalidArguments) {
  const CsrMatrix a = CsrMatrix::from_dense({{1, 0}, {0, 1}});
  EXPECT_THROW(pcg_solve(a, std::vector<double>{1.0}, 1e-12, 10), InvalidArgumentError);
  EXPECT_THROW(pcg_solve(a, std::vector<double>{1.0, 1.0}, 0.0, 10), InvalidArgumentError);
}

}  // namespace
}  // namespace nc3
