#include <doctest.h>

#include <cmath>
#include <random>

#include "p1nc/manufactured.hpp"
#include "p1nc/pressure.hpp"
#include "p1nc/solver.hpp"
#include "test_support.hpp"

using namespace p1nc;

namespace {

SolverConfig tight() {
  SolverConfig config;
  config.tolerance = 1e-12;
  return config;
}

double color_mean(const PiecewiseConstField& p, SquareColor color) {
  const auto& mesh = p.mesh();
  double sum = 0.0;
  int n = 0;
  for (int q = 0; q < mesh.n_squares(); ++q) {
    if (mesh.color(q) != color) continue;
    sum += p[q];
    ++n;
  }
  return sum / n;
}

// Largest |(p_h, div_h v) - residual(v)| over every hat test field.
double problem_p_defect(const SquareMesh& mesh, const NCVectorField& u_h,
                        const PiecewiseConstField& p_h, const LoadMoments& moments) {
  double worst = 0.0;
  for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}}) {
      const auto w = psi_vab(mesh, v, a, b);
      const double lhs = l2_inner(p_h, div_h(w));
      worst = std::max(worst, std::abs(lhs - momentum_residual(u_h, moments, w)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("telescoping steps follow the divergence table") {
  const double h = 0.125;
  const auto step = telescoping_step(0, 2, h);
  CHECK(step[0] == -h / 2);
  CHECK(step[1] == -h / 2);
  const auto mesh = SquareMesh::rectangular(4, 4, h);
  const int v = mesh.interior_vertex_id(2, 2);
  const auto around = mesh.vertex_squares(v);
  for (int to = 0; to < 4; ++to) {
    const int from = (to + 2) % 4;
    const auto [a, b] = telescoping_step(to, from, h);
    CHECK(std::abs(a) == h / 2);
    CHECK(std::abs(b) == h / 2);
    const auto div = div_h(psi_vab(mesh, v, a, b));
    for (int k = 0; k < 4; ++k) {
      const double expected = k == to ? 1.0 : k == from ? -1.0 : 0.0;
      CHECK(div[around[k]] == doctest::Approx(expected));
    }
  }
  CHECK_THROWS_AS(telescoping_step(0, 1, h), InvalidArgument);
  CHECK_THROWS_AS(telescoping_step(0, 0, h), InvalidArgument);
  CHECK_THROWS_AS(telescoping_step(4, 2, h), InvalidArgument);
}

TEST_CASE("checkerboard functions") {
  const auto mesh = SquareMesh::rectangular(6, 6, 1.0 / 6);
  const auto red = checkerboard(mesh, SquareColor::Red);
  const auto black = checkerboard(mesh, SquareColor::Black);
  CHECK(l2_inner(red, black) == 0.0);
  for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}}) {
      const auto div = div_h(psi_vab(mesh, v, a, b));
      CHECK(std::abs(l2_inner(red, div)) <= 1e-15);
      CHECK(std::abs(l2_inner(black, div)) <= 1e-15);
    }
  }
  const auto anchors = default_anchors(mesh);
  CHECK(anchors.red == 0);
  CHECK(anchors.black == 1);
}

TEST_CASE("momentum residual of the zero test field") {
  const auto mesh = SquareMesh::rectangular(5, 5, 0.2);
  std::mt19937_64 rng(4);
  const auto u = testing::random_field(rng, mesh);
  CHECK(momentum_residual(u, benchmark_case().forcing, NCVectorField(mesh)) == 0.0);
  const auto other = SquareMesh::rectangular(5, 5, 0.2);
  CHECK_THROWS_AS(momentum_residual(u, benchmark_case().forcing, NCVectorField(other)),
                  InvalidArgument);
}

TEST_CASE("zero forcing gives zero pressure") {
  const auto mesh = SquareMesh::rectangular(8, 8, 1.0 / 8);
  const auto f = zero_case().forcing;
  const auto u = solve_velocity(mesh, f);
  const auto p = recover_pressure(mesh, u.velocity, f);
  CHECK(testing::max_abs(u.velocity.x.coeffs()) == 0.0);
  CHECK(testing::max_abs(p.pressure.values()) == 0.0);
}

TEST_CASE("galerkin orthogonality against the divergence-free basis") {
  const auto mesh = SquareMesh::rectangular(16, 16, 1.0 / 16);
  const LoadMoments moments(mesh, benchmark_case().forcing, 3);
  const auto u = solve_velocity(moments, tight());
  double scale = 0.0;
  double worst = 0.0;
  for (int q : mesh.interior_squares()) {
    const auto psi = basis_function(mesh, q);
    worst = std::max(worst, std::abs(momentum_residual(u.velocity, moments, psi)));
    scale = std::max(scale, std::abs(h1_inner(u.velocity, psi)));
  }
  CHECK(worst <= 1e-10 * std::max(1.0, scale));
}

TEST_CASE("recovered pressure solves the momentum equation for every hat") {
  std::vector<SquareMesh> meshes;
  for (int n : {3, 4, 8, 13, 32}) meshes.push_back(SquareMesh::rectangular(n, n, 1.0 / n));
  meshes.push_back(SquareMesh::from_mask(testing::l_mask(), 1.0 / 3));
  meshes.push_back(SquareMesh::from_mask(
      Mask::from_rows({"11110000", "11110000", "11110000", "11111111", "11111111", "11111111",
                       "11111111", "11111111"}),
      0.125));
  for (const auto& mesh : meshes) {
    const LoadMoments moments(mesh, benchmark_case().forcing, 3);
    const auto u = solve_velocity(moments, tight());
    const auto p = recover_pressure(u.velocity, moments);
    CHECK(problem_p_defect(mesh, u.velocity, p.pressure, moments) <= 1e-8);
    CHECK(std::abs(color_mean(p.pressure, SquareColor::Red)) <= 1e-12);
    CHECK(std::abs(color_mean(p.pressure, SquareColor::Black)) <= 1e-12);
    CHECK(p.telescoped[default_anchors(mesh).red] == 0.0);
    CHECK(p.telescoped[default_anchors(mesh).black] == 0.0);
  }
}

TEST_CASE("property: recovered pressure does not depend on the anchors") {
  std::mt19937_64 rng(77);
  const auto mesh = SquareMesh::rectangular(12, 10, 0.1);
  const LoadMoments moments(mesh, benchmark_case().forcing, 3);
  const auto u = solve_velocity(moments, tight());
  const auto base = recover_pressure(u.velocity, moments);
  std::vector<int> red;
  std::vector<int> black;
  for (int q = 0; q < mesh.n_squares(); ++q) {
    (mesh.color(q) == SquareColor::Red ? red : black).push_back(q);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const PressureAnchors anchors{
        red[std::uniform_int_distribution<std::size_t>(0, red.size() - 1)(rng)],
        black[std::uniform_int_distribution<std::size_t>(0, black.size() - 1)(rng)]};
    const auto other = recover_pressure(u.velocity, moments, anchors);
    for (int q = 0; q < mesh.n_squares(); ++q) {
      CHECK(std::abs(other.pressure[q] - base.pressure[q]) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(recover_pressure(u.velocity, moments, PressureAnchors{black[0], black[1]}),
                  InvalidArgument);
  CHECK_THROWS_AS(recover_pressure(u.velocity, moments, PressureAnchors{red[0], red[1]}),
                  InvalidArgument);
}

TEST_CASE("pressure error on 32x32") {
  const auto mesh = SquareMesh::rectangular(32, 32, 1.0 / 32);
  const auto exact = benchmark_case();
  const auto u = solve_velocity(mesh, exact.forcing);
  const auto p = recover_pressure(mesh, u.velocity, exact.forcing);
  const auto errors = error_norms(u.velocity, p.pressure, exact);
  CHECK(errors.pressure_l2 == doctest::Approx(7.6081e-1).epsilon(0.02));
}
