#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "p1nc/manufactured.hpp"
#include "p1nc/solver.hpp"
#include "test_support.hpp"

using namespace p1nc;

namespace {

SolverConfig with_method(SolverMethod method, double tol = 1e-12) {
  SolverConfig config;
  config.method = method;
  config.tolerance = tol;
  return config;
}

}  // namespace

TEST_CASE("solver method names") {
  CHECK(parse_solver_method("cg") == SolverMethod::ConjugateGradient);
  CHECK(parse_solver_method("dense") == SolverMethod::DenseCholesky);
  CHECK(parse_solver_method("sparse") == SolverMethod::SparseCholesky);
  CHECK_THROWS_AS(parse_solver_method("lu"), InvalidArgument);
  for (auto m : {SolverMethod::ConjugateGradient, SolverMethod::DenseCholesky,
                 SolverMethod::SparseCholesky}) {
    CHECK(parse_solver_method(to_string(m)) == m);
  }
}

TEST_CASE("config validation") {
  SolverConfig config;
  config.tolerance = 0.0;
  CHECK_THROWS_AS(config.validate(), InvalidArgument);
  config.tolerance = 1e-8;
  config.max_iterations = 0;
  CHECK_THROWS_AS(config.validate(), InvalidArgument);
}

TEST_CASE("zero right-hand side and empty blocks") {
  const auto mesh = SquareMesh::rectangular(8, 8, 1.0 / 8);
  const auto K = assemble_stiffness(mesh, SquareColor::Red);
  SolveReport report;
  const auto x = solve_color(K, std::vector<double>(K.dim(), 0.0), {}, &report);
  CHECK(x == std::vector<double>(K.dim(), 0.0));
  CHECK(report.iterations == 0);

  const SparseSpdMatrix empty;
  CHECK(solve_color(empty, std::vector<double>{}, {}).empty());
  CHECK_THROWS_AS(solve_color(K, std::vector<double>(3, 1.0), {}), InvalidArgument);
}

TEST_CASE("manufactured right-hand side recovers all ones") {
  const auto mesh = SquareMesh::rectangular(8, 8, 1.0 / 8);
  for (auto color : {SquareColor::Red, SquareColor::Black}) {
    const auto K = assemble_stiffness(mesh, color);
    const auto b = K.multiply(std::vector<double>(K.dim(), 1.0));
    for (auto method : {SolverMethod::ConjugateGradient, SolverMethod::DenseCholesky,
                        SolverMethod::SparseCholesky}) {
      SolveReport report;
      const auto x = solve_color(K, b, with_method(method), &report);
      for (double v : x) CHECK(std::abs(v - 1.0) <= 1e-9);
      CHECK(report.relative_residual <= 1e-12);
      CHECK(report.dimension == 18);
      CHECK(report.method == method);
    }
  }
}

TEST_CASE("cg and cholesky agree on 16x16") {
  const auto mesh = SquareMesh::rectangular(16, 16, 1.0 / 16);
  const auto exact = benchmark_case();
  const auto cg = solve_velocity(mesh, exact.forcing, with_method(SolverMethod::ConjugateGradient));
  const auto dense = solve_velocity(mesh, exact.forcing, with_method(SolverMethod::DenseCholesky));
  const auto sparse =
      solve_velocity(mesh, exact.forcing, with_method(SolverMethod::SparseCholesky));
  for (auto color : {SquareColor::Red, SquareColor::Black}) {
    const auto a = cg.coefficients.block(color);
    const auto b = dense.coefficients.block(color);
    const auto c = sparse.coefficients.block(color);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(a[k] - b[k]) <= 1e-8);
      CHECK(std::abs(c[k] - b[k]) <= 1e-8);
    }
  }
  CHECK(cg.red.relative_residual <= 1e-12);
  CHECK(cg.black.relative_residual <= 1e-12);
  CHECK(cg.red.iterations > 0);
}

TEST_CASE("residual contract at the configured tolerance") {
  const auto mesh = SquareMesh::rectangular(32, 32, 1.0 / 32);
  for (double tol : {1e-4, 1e-8, 1e-10}) {
    const auto u = solve_velocity(mesh, benchmark_case().forcing,
                                  with_method(SolverMethod::ConjugateGradient, tol));
    CHECK(u.red.relative_residual <= tol);
    CHECK(u.black.relative_residual <= tol);
  }
}

TEST_CASE("concurrent colors give identical results") {
  const auto mesh = SquareMesh::rectangular(24, 24, 1.0 / 24);
  auto config = with_method(SolverMethod::ConjugateGradient, 1e-10);
  const auto serial = solve_velocity(mesh, benchmark_case().forcing, config);
  config.concurrent_colors = true;
  const auto concurrent = solve_velocity(mesh, benchmark_case().forcing, config);
  for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
    CHECK(serial.velocity.x.coeff(v) == concurrent.velocity.x.coeff(v));
    CHECK(serial.velocity.y.coeff(v) == concurrent.velocity.y.coeff(v));
  }
}

TEST_CASE("solved velocity is divergence-free") {
  const auto mesh = SquareMesh::from_mask(
      Mask::from_rows({"1111000", "1111000", "1111111", "1111111", "1111111", "1111111"}), 0.1);
  const auto u = solve_velocity(mesh, benchmark_case().forcing);
  CHECK(testing::max_abs(div_h(u.velocity).values()) <= 1e-12 / mesh.h());
}

TEST_CASE("error paths") {
  // Indefinite 2x2.
  const auto bad = SparseSpdMatrix::from_rows({{{0, 1.0}, {1, 2.0}}, {{0, 2.0}, {1, 1.0}}});
  const std::vector<double> b{1.0, 0.0};
  for (auto method : {SolverMethod::ConjugateGradient, SolverMethod::DenseCholesky,
                      SolverMethod::SparseCholesky}) {
    try {
      solve_color(bad, b, with_method(method));
      FAIL("indefinite matrix accepted");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverErrorKind::NotPositiveDefinite);
      CHECK(e.report().method == method);
    }
  }
  const auto negative = SparseSpdMatrix::from_rows({{{0, -1.0}}});
  CHECK_THROWS_AS(solve_color(negative, std::vector<double>{1.0}, {}), SolverError);

  const auto mesh = SquareMesh::rectangular(32, 32, 1.0 / 32);
  const auto K = assemble_stiffness(mesh, SquareColor::Red);
  const auto rhs = K.multiply(std::vector<double>(K.dim(), 1.0));
  auto config = with_method(SolverMethod::ConjugateGradient, 1e-12);
  config.max_iterations = 3;
  try {
    solve_color(K, rhs, config);
    FAIL("three iterations converged");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverErrorKind::NotConverged);
    CHECK(e.report().iterations == 3);
    CHECK(e.report().relative_residual > 1e-12);
  }

  std::vector<std::vector<SparseSpdMatrix::Entry>> rows(kMaxDenseDimension + 1);
  for (int r = 0; r <= kMaxDenseDimension; ++r) rows[r].push_back({r, 1.0});
  const auto big = SparseSpdMatrix::from_rows(std::move(rows));
  try {
    solve_color(big, std::vector<double>(big.dim(), 1.0), with_method(SolverMethod::DenseCholesky));
    FAIL("oversized dense solve accepted");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverErrorKind::TooLarge);
  }
}
