#include "self_check.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "p1nc/p1nc.hpp"

namespace p1nc::tools {

namespace {

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2e", v);
  return buffer;
}

struct Check {
  const char* name;
  std::function<bool(std::string&)> run;
};

std::vector<SquareMesh> small_meshes() {
  std::vector<SquareMesh> meshes;
  meshes.push_back(SquareMesh::rectangular(6, 6, 1.0 / 6));
  meshes.push_back(SquareMesh::rectangular(9, 7, 1.0 / 9));
  meshes.push_back(SquareMesh::from_mask(
      Mask::from_rows({"1111000", "1111000", "1111000", "1111111", "1111111", "1111111"}),
      1.0 / 7));
  return meshes;
}

NCVectorField random_field(std::mt19937_64& rng, const SquareMesh& mesh) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  NCVectorField u(mesh);
  for (auto& c : u.x.coeffs()) c = d(rng);
  for (auto& c : u.y.coeffs()) c = d(rng);
  return u;
}

bool norm_split(std::string& detail) {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (const auto& mesh : small_meshes()) {
    for (int k = 0; k < 20; ++k) {
      const auto u = random_field(rng, mesh);
      const double s = seminorm_1h_squared(u);
      const double split = std::pow(l2_norm(div_h(u)), 2) + std::pow(l2_norm(curl_h(u)), 2);
      worst = std::max(worst, std::abs(s - split) / s);
    }
  }
  detail = "max relative defect " + sci(worst);
  return worst <= 1e-12;
}

bool basis(std::string& detail) {
  double worst_div = 0.0;
  double worst_gram = 0.0;
  for (const auto& mesh : small_meshes()) {
    for (int q : mesh.interior_squares()) {
      const auto div = div_h(basis_function(mesh, q));
      for (double d : div.values()) worst_div = std::max(worst_div, std::abs(d));
    }
    for (auto color : {SquareColor::Red, SquareColor::Black}) {
      const auto K = oracle::to_dense(assemble_stiffness(mesh, color));
      const auto G = oracle::gram_by_quadrature(mesh, color, color);
      if (K.size() > 0) worst_gram = std::max(worst_gram, (K - G).cwiseAbs().maxCoeff());
    }
  }
  detail = "max |div| " + sci(worst_div) + ", stencil vs quadrature " + sci(worst_gram);
  return worst_div <= 1e-14 && worst_gram <= 1e-12;
}

bool rank(std::string& detail) {
  int bad = 0;
  for (const auto& mesh : small_meshes()) {
    const int r = oracle::numerical_rank(oracle::divergence_operator(mesh));
    if (r != mesh.n_squares() - 2 ||
        2 * mesh.n_interior_vertices() - r != mesh.n_interior_squares()) {
      ++bad;
    }
  }
  detail = std::to_string(bad) + " meshes with a wrong rank";
  return bad == 0;
}

bool pressure(std::string& detail) {
  SolverConfig config;
  config.tolerance = 1e-12;
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (const auto& mesh : small_meshes()) {
    const LoadMoments moments(mesh, benchmark_case().forcing, 3);
    const auto u = solve_velocity(moments, config);
    const auto p = recover_pressure(u.velocity, moments);
    for (int v = 0; v < mesh.n_interior_vertices(); ++v) {
      for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}}) {
        const auto w = psi_vab(mesh, v, a, b);
        worst = std::max(worst, std::abs(l2_inner(p.pressure, div_h(w)) -
                                         momentum_residual(u.velocity, moments, w)));
      }
    }
    const auto mixed = oracle::solve_mixed(mesh, benchmark_case().forcing);
    PiecewiseConstField dp(mesh);
    for (int q = 0; q < mesh.n_squares(); ++q) dp[q] = p.pressure[q] - mixed.pressure[q];
    worst_oracle = std::max(worst_oracle, l2_norm(dp));
  }
  detail = "problem-(P) defect " + sci(worst) + ", mixed oracle gap " + sci(worst_oracle);
  return worst <= 1e-8 && worst_oracle <= 1e-8;
}

bool validation(std::string& detail) {
  auto kind = [](const Mask& mask) -> int {
    try {
      validate_mask(mask);
    } catch (const MeshError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  Mask pinched(6, 5);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) pinched.set(i, j, true);
  for (int j = 2; j < 5; ++j)
    for (int i = 3; i < 6; ++i) pinched.set(i, j, true);
  const bool ok =
      kind(Mask(1, 5, true)) == static_cast<int>(MeshErrorKind::SquareWithFourBoundaryVertices) &&
      kind(pinched) == static_cast<int>(MeshErrorKind::InteriorEdgeWithTwoBoundaryVertices) &&
      kind(Mask::from_rows({"111", "101", "111"})) ==
          static_cast<int>(MeshErrorKind::DomainWithHole);
  detail = "strip, edge-pinched and holed masks";
  return ok;
}

}  // namespace

bool run_self_check(std::ostream& out) {
  const std::vector<Check> checks{
      {"norm decomposition", norm_split},
      {"divergence-free basis", basis},
      {"divergence rank", rank},
      {"pressure recovery", pressure},
      {"mesh validation", validation},
  };
  bool all = true;
  for (const auto& check : checks) {
    std::string detail;
    bool pass = false;
    try {
      pass = check.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << check.name << ": " << detail << '\n';
  }
  return all;
}

}  // namespace p1nc::tools
