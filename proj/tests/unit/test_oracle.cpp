#include <doctest.h>

#include <cmath>

#include "p1nc/manufactured.hpp"
#include "p1nc/oracle.hpp"
#include "p1nc/pressure.hpp"
#include "p1nc/solver.hpp"
#include "test_support.hpp"

using namespace p1nc;

TEST_CASE("brute quadrature basics") {
  const auto mesh = SquareMesh::rectangular(4, 4, 0.3, {1.0, 2.0});
  for (int q = 0; q < mesh.n_squares(); ++q) {
    CHECK(oracle::brute_quadrature([](double, double) { return 1.0; }, mesh, q, 5) ==
          doctest::Approx(0.09).epsilon(1e-14));
    const auto c = mesh.square_center(q);
    const double xy = oracle::brute_quadrature(
        [c](double x, double y) { return (x - c.x) * (y - c.y); }, mesh, q, 7);
    CHECK(std::abs(xy) <= 1e-16);
  }
  CHECK_THROWS_AS(oracle::brute_quadrature([](double, double) { return 1.0; }, mesh, 0, 0),
                  InvalidArgument);
}

TEST_CASE("brute quadrature reproduces stencil entries") {
  const auto mesh = SquareMesh::rectangular(6, 6, 1.0 / 6);
  const auto gram = oracle::gram_by_quadrature(mesh, SquareColor::Red, SquareColor::Red, 64);
  const ColorBlocks blocks(mesh);
  const int a = blocks.local_index(mesh.square_id(2, 2));
  const int b = blocks.local_index(mesh.square_id(3, 3));
  CHECK(std::abs(gram(a, b) + 8.0) <= 1e-9);
  CHECK(std::abs(gram(a, a) - 20.0) <= 1e-9);
}

TEST_CASE("mixed solve with zero forcing") {
  const auto mesh = SquareMesh::rectangular(6, 6, 1.0 / 6);
  const auto mixed = oracle::solve_mixed(mesh, zero_case().forcing);
  CHECK(testing::max_abs(mixed.velocity.x.coeffs()) == 0.0);
  CHECK(testing::max_abs(mixed.velocity.y.coeffs()) == 0.0);
  CHECK(testing::max_abs(mixed.pressure.values()) == 0.0);
  CHECK(mixed.rcond > 0.0);
}

TEST_CASE("mixed solve agrees with the divergence-free pipeline") {
  std::vector<SquareMesh> meshes;
  meshes.push_back(SquareMesh::rectangular(8, 8, 1.0 / 8));
  meshes.push_back(SquareMesh::rectangular(16, 16, 1.0 / 16));
  meshes.push_back(SquareMesh::from_mask(
      Mask::from_rows({"11110000", "11110000", "11110000", "11111111", "11111111", "11111111",
                       "11111111", "11111111"}),
      0.125));
  SolverConfig config;
  config.tolerance = 1e-13;
  const auto exact = benchmark_case();
  for (const auto& mesh : meshes) {
    const auto mixed = oracle::solve_mixed(mesh, exact.forcing);
    const LoadMoments moments(mesh, exact.forcing, 3);
    const auto u = solve_velocity(moments, config);
    const auto p = recover_pressure(u.velocity, moments);

    NCVectorField diff = u.velocity;
    NCVectorField neg = mixed.velocity;
    neg *= -1.0;
    diff += neg;
    CHECK(seminorm_1h(diff) <= 1e-8);
    for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
      CHECK(std::abs(u.velocity.x.coeff(v) - mixed.velocity.x.coeff(v)) <= 1e-8);
      CHECK(std::abs(u.velocity.y.coeff(v) - mixed.velocity.y.coeff(v)) <= 1e-8);
    }
    PiecewiseConstField dp(mesh);
    for (int q = 0; q < mesh.n_squares(); ++q) dp[q] = p.pressure[q] - mixed.pressure[q];
    CHECK(l2_norm(dp) <= 1e-8);

    // Problem (P) with the oracle pressure.
    for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
      const auto w = psi_vab(mesh, v, 1.0, 0.0);
      CHECK(std::abs(momentum_residual(u.velocity, moments, w) -
                     l2_inner(mixed.pressure, div_h(w))) <= 1e-8);
    }
  }
}

TEST_CASE("mixed velocity error on 8x8") {
  const auto mesh = SquareMesh::rectangular(8, 8, 1.0 / 8);
  const auto exact = benchmark_case();
  const auto mixed = oracle::solve_mixed(mesh, exact.forcing);
  const auto errors = error_norms(mixed.velocity, mixed.pressure, exact);
  CHECK(errors.velocity_l2 == doctest::Approx(5.6091e-2).epsilon(0.02));
}

TEST_CASE("mixed solve size limit") {
  const auto mesh = SquareMesh::rectangular(40, 40, 1.0 / 40);
  try {
    oracle::solve_mixed(mesh, zero_case().forcing);
    FAIL("oversized mixed solve accepted");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverErrorKind::TooLarge);
  }
}

TEST_CASE("numerical rank helper") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  CHECK(oracle::numerical_rank(m) == 2);
  CHECK(oracle::numerical_rank(Eigen::MatrixXd::Identity(4, 4)) == 4);
}
