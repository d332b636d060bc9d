#include "p1nc/oracle.hpp"

#include <map>

#include "p1nc/divfree.hpp"
#include "p1nc/solver.hpp"

namespace p1nc::oracle {

namespace {

struct Gradients {
  double ux, uy, vx, vy;  // d/dx and d/dy of the x and y components
};

// Per-square gradients of Psi^Q over its 3x3 support, read off the full field.
std::map<int, Gradients> basis_gradients(const SquareMesh& mesh, int q) {
  const auto field = basis_function(mesh, q);
  const auto c = mesh.square_cell(q);
  std::map<int, Gradients> out;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const int s = mesh.square_id(c.i + di, c.j + dj);
      const auto lx = field.x.local_linear(s);
      const auto ly = field.y.local_linear(s);
      out[s] = {lx.beta, lx.gamma, ly.beta, ly.gamma};
    }
  }
  return out;
}

}  // namespace

double brute_quadrature(const ScalarFunction& g, const SquareMesh& mesh, int q, int n) {
  if (n < 1) throw InvalidArgument("brute quadrature needs n >= 1");
  const double h = mesh.h();
  const auto c = mesh.square_cell(q);
  const auto corner = mesh.vertex_point({c.i, c.j});
  const double step = h / n;
  double sum = 0.0;
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      sum += g(corner.x + (a + 0.5) * step, corner.y + (b + 0.5) * step);
    }
  }
  return sum * step * step;
}

Eigen::MatrixXd gram_by_quadrature(const SquareMesh& mesh, SquareColor row_color,
                                   SquareColor col_color, int n) {
  const ColorBlocks blocks(mesh);
  const auto& rows = blocks.squares(row_color);
  const auto& cols = blocks.squares(col_color);
  std::map<int, std::map<int, Gradients>> cache;
  auto gradients = [&](int q) -> const std::map<int, Gradients>& {
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, basis_gradients(mesh, q)).first;
    return it->second;
  };

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                               static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto cr = mesh.square_cell(rows[r]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto ck = mesh.square_cell(cols[k]);
      if (std::abs(cr.i - ck.i) > 2 || std::abs(cr.j - ck.j) > 2) continue;
      const auto& ga = gradients(rows[r]);
      const auto& gb = gradients(cols[k]);
      double sum = 0.0;
      for (const auto& [s, a] : ga) {
        const auto it = gb.find(s);
        if (it == gb.end()) continue;
        const auto b = it->second;
        const auto integrand = [a, b](double, double) {
          return a.ux * b.ux + a.uy * b.uy + a.vx * b.vx + a.vy * b.vy;
        };
        sum += brute_quadrature(integrand, mesh, s, n);
      }
      gram(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = sum;
    }
  }
  return gram;
}

Eigen::MatrixXd gram_curl_form(const SquareMesh& mesh, SquareColor color) {
  const ColorBlocks blocks(mesh);
  const auto& squares = blocks.squares(color);
  std::vector<PiecewiseConstField> curls;
  curls.reserve(squares.size());
  for (int q : squares) curls.push_back(curl_h(basis_function(mesh, q)));
  const auto n = static_cast<Eigen::Index>(squares.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) gram(r, c) = l2_inner(curls[r], curls[c]);
  }
  return gram;
}

Eigen::MatrixXd to_dense(const SparseSpdMatrix& matrix) {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(matrix.dim(), matrix.dim());
  for (int r = 0; r < matrix.dim(); ++r) {
    const auto cols = matrix.row_cols(r);
    const auto vals = matrix.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) dense(r, cols[k]) = vals[k];
  }
  return dense;
}

Eigen::MatrixXd divergence_operator(const SquareMesh& mesh) {
  const int nv = mesh.n_interior_vertices();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(mesh.n_squares(), 2 * nv);
  for (int v = 0; v < nv; ++v) {
    const auto dx = div_h(psi_vab(mesh, v, 1.0, 0.0));
    const auto dy = div_h(psi_vab(mesh, v, 0.0, 1.0));
    for (int q = 0; q < mesh.n_squares(); ++q) {
      D(q, v) = dx[q];
      D(q, nv + v) = dy[q];
    }
  }
  return D;
}

int numerical_rank(const Eigen::MatrixXd& matrix, double threshold) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  lu.setThreshold(threshold);
  return static_cast<int>(lu.rank());
}

double smallest_eigenvalue(const SparseSpdMatrix& matrix) {
  if (matrix.dim() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_dense(matrix),
                                                           Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

MixedSolution solve_mixed(const SquareMesh& mesh, const VectorFunction& f,
                          int points_per_direction) {
  const int nv = mesh.n_interior_vertices();
  const int nq = mesh.n_squares();
  if (nv > kMaxMixedInteriorVertices) {
    SolveReport report;
    report.dimension = 2 * nv + nq + 2;
    throw SolverError(SolverErrorKind::TooLarge,
                      "mixed oracle is limited to " + std::to_string(kMaxMixedInteriorVertices) +
                          " interior vertices, got " + std::to_string(nv),
                      report);
  }
  const int n = 2 * nv + nq + 2;
  const int p0 = 2 * nv;
  const int lam = 2 * nv + nq;
  const double h = mesh.h();
  const double area = h * h;
  const LoadMoments moments(mesh, f, points_per_direction);

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int q = 0; q < nq; ++q) {
    const auto corners = mesh.corner_vertices(q);
    // The corner slot k of the square is the slot of the square around
    // vertex corners[k].
    for (int k = 0; k < 4; ++k) {
      const int a = corners[k];
      if (a == SquareMesh::kAbsent) continue;
      const auto hk = hat_on_vertex_square(k, h);
      for (int l = 0; l < 4; ++l) {
        const int b = corners[l];
        if (b == SquareMesh::kAbsent) continue;
        const auto hl = hat_on_vertex_square(l, h);
        const double stiff = area * (hk.beta * hl.beta + hk.gamma * hl.gamma);
        M(a, b) += stiff;
        M(nv + a, nv + b) += stiff;
      }
      // (p, div v) couples the square to both components of the hat.
      M(a, p0 + q) -= area * hk.beta;
      M(nv + a, p0 + q) -= area * hk.gamma;
      M(p0 + q, a) += area * hk.beta;
      M(p0 + q, nv + a) += area * hk.gamma;
      rhs(a) += moments.integrate(q, hk, {});
      rhs(nv + a) += moments.integrate(q, {}, hk);
    }
    const int color_row = mesh.color(q) == SquareColor::Red ? lam : lam + 1;
    M(color_row, p0 + q) = area;
    M(p0 + q, color_row) = area;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    SolveReport report;
    report.dimension = n;
    throw SolverError(SolverErrorKind::Singular,
                      "mixed saddle-point matrix is numerically singular (rcond " +
                          std::to_string(rcond) + ")",
                      report);
  }
  const Eigen::VectorXd x = lu.solve(rhs);

  NCVectorField velocity(mesh);
  for (int v = 0; v < nv; ++v) {
    velocity.x.coeffs()[v] = x(v);
    velocity.y.coeffs()[v] = x(nv + v);
  }
  PiecewiseConstField pressure(mesh);
  for (int q = 0; q < nq; ++q) pressure[q] = x(p0 + q);
  return {std::move(velocity), std::move(pressure), rcond};
}

}  // namespace p1nc::oracle
