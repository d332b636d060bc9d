#include "p1nc/pressure.hpp"

#include <cmath>
#include <deque>

namespace p1nc {

namespace {

// div_h psi^V[a, b] on slot j, times h.
double div_table(int slot, double a, double b) noexcept {
  switch (slot) {
    case 0: return -(a + b);
    case 1: return a - b;
    case 2: return a + b;
    default: return b - a;
  }
}

}  // namespace

double momentum_residual(const NCVectorField& u_h, const LoadMoments& moments,
                         const NCVectorField& v) {
  const auto& mesh = u_h.mesh();
  require_same_mesh(mesh, v.mesh());
  require_same_mesh(mesh, moments.mesh());
  const double area = mesh.h() * mesh.h();
  const auto vx = v.x.coeffs();
  const auto vy = v.y.coeffs();
  double sum = 0.0;
  for (int q = 0; q < mesh.n_squares(); ++q) {
    bool touches = false;
    for (int c : mesh.corner_vertices(q)) {
      if (c != SquareMesh::kAbsent && (vx[c] != 0.0 || vy[c] != 0.0)) touches = true;
    }
    if (!touches) continue;
    const auto ux = u_h.x.local_linear(q);
    const auto uy = u_h.y.local_linear(q);
    const auto wx = v.x.local_linear(q);
    const auto wy = v.y.local_linear(q);
    sum += area * (ux.beta * wx.beta + ux.gamma * wx.gamma + uy.beta * wy.beta +
                   uy.gamma * wy.gamma);
    sum -= moments.integrate(q, wx, wy);
  }
  return sum;
}

double momentum_residual(const NCVectorField& u_h, const VectorFunction& f,
                         const NCVectorField& v, int points_per_direction) {
  return momentum_residual(u_h, LoadMoments(u_h.mesh(), f, points_per_direction), v);
}

PressureAnchors default_anchors(const SquareMesh& mesh) {
  int red = -1;
  int black = -1;
  for (int q = 0; q < mesh.n_squares() && (red < 0 || black < 0); ++q) {
    if (mesh.color(q) == SquareColor::Red && red < 0) red = q;
    if (mesh.color(q) == SquareColor::Black && black < 0) black = q;
  }
  if (red < 0 || black < 0) throw InvalidArgument("mesh lacks a square of each color");
  return {red, black};
}

PiecewiseConstField checkerboard(const SquareMesh& mesh, SquareColor color) {
  PiecewiseConstField chi(mesh);
  for (int q = 0; q < mesh.n_squares(); ++q) chi[q] = mesh.color(q) == color ? 1.0 : 0.0;
  return chi;
}

std::array<double, 2> telescoping_step(int to, int from, double h) {
  if (to < 0 || to > 3 || from < 0 || from > 3 || (to + 2) % 4 != from) {
    throw InvalidArgument("telescoping step needs two diagonally opposite slots");
  }
  const double half = 0.5 * h;
  for (const double a : {half, -half}) {
    for (const double b : {half, -half}) {
      bool match = true;
      for (int slot = 0; slot < 4; ++slot) {
        const double target = slot == to ? 1.0 : slot == from ? -1.0 : 0.0;
        match = match && std::abs(div_table(slot, a, b) / h - target) < 1e-12;
      }
      if (match) return {a, b};
    }
  }
  throw InternalError("no telescoping test function matches the divergence table");
}

PressureField recover_pressure(const NCVectorField& u_h, const LoadMoments& moments,
                               std::optional<PressureAnchors> anchors) {
  const auto& mesh = u_h.mesh();
  require_same_mesh(mesh, moments.mesh());
  const auto anchor = anchors.value_or(default_anchors(mesh));
  if (anchor.red < 0 || anchor.red >= mesh.n_squares() ||
      mesh.color(anchor.red) != SquareColor::Red) {
    throw InvalidArgument("red anchor " + std::to_string(anchor.red) + " is not a red square");
  }
  if (anchor.black < 0 || anchor.black >= mesh.n_squares() ||
      mesh.color(anchor.black) != SquareColor::Black) {
    throw InvalidArgument("black anchor " + std::to_string(anchor.black) +
                          " is not a black square");
  }

  const double h = mesh.h();
  const double area = h * h;
  std::vector<LocalLinear> ux(static_cast<std::size_t>(mesh.n_squares()));
  std::vector<LocalLinear> uy(ux.size());
  for (int q = 0; q < mesh.n_squares(); ++q) {
    ux[q] = u_h.x.local_linear(q);
    uy[q] = u_h.y.local_linear(q);
  }

  // (grad u_h, grad w) - (f, w) for w = psi^V[a, b].
  auto residual = [&](int v, double a, double b) {
    const auto squares = mesh.vertex_squares(v);
    double sum = 0.0;
    for (int slot = 0; slot < 4; ++slot) {
      const int q = squares[slot];
      const auto hat = hat_on_vertex_square(slot, h);
      sum += area * (a * (ux[q].beta * hat.beta + ux[q].gamma * hat.gamma) +
                     b * (uy[q].beta * hat.beta + uy[q].gamma * hat.gamma));
      sum -= moments.integrate(q, {a * hat.alpha, a * hat.beta, a * hat.gamma},
                               {b * hat.alpha, b * hat.beta, b * hat.gamma});
    }
    return sum;
  };

  PiecewiseConstField telescoped(mesh);
  std::vector<unsigned char> reached(static_cast<std::size_t>(mesh.n_squares()), 0);
  // Diagonal step, shared lattice point offset, and the slots of the target
  // and source squares around that vertex.
  struct Step {
    int di, dj, vi, vj, to, from;
  };
  constexpr std::array<Step, 4> steps{{{1, 1, 1, 1, 0, 2},
                                       {-1, 1, 0, 1, 1, 3},
                                       {-1, -1, 0, 0, 2, 0},
                                       {1, -1, 1, 0, 3, 1}}};
  for (const int start : {anchor.red, anchor.black}) {
    std::deque<int> queue{start};
    reached[start] = 1;
    telescoped[start] = 0.0;
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      const auto c = mesh.square_cell(q);
      for (const auto& s : steps) {
        const int next = mesh.square_id(c.i + s.di, c.j + s.dj);
        if (next == SquareMesh::kAbsent || reached[next]) continue;
        const int v = mesh.interior_vertex_id(c.i + s.vi, c.j + s.vj);
        if (v == SquareMesh::kAbsent) continue;
        const auto [a, b] = telescoping_step(s.to, s.from, h);
        telescoped[next] = telescoped[q] + residual(v, a, b) / area;
        reached[next] = 1;
        queue.push_back(next);
      }
    }
  }
  for (int q = 0; q < mesh.n_squares(); ++q) {
    if (!reached[q]) {
      throw InternalError("square " + std::to_string(q) +
                          " is unreachable from its color's anchor through interior vertices");
    }
  }

  // D_C = (p_hat, chi_C) / (chi_C, chi_C): the mean over the color.
  std::array<double, 2> sums{};
  std::array<int, 2> counts{};
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const int k = mesh.color(q) == SquareColor::Red ? 0 : 1;
    sums[k] += telescoped[q];
    ++counts[k];
  }
  const double red_shift = sums[0] / counts[0];
  const double black_shift = sums[1] / counts[1];
  PiecewiseConstField pressure(mesh);
  for (int q = 0; q < mesh.n_squares(); ++q) {
    pressure[q] = telescoped[q] - (mesh.color(q) == SquareColor::Red ? red_shift : black_shift);
  }
  return {std::move(pressure), std::move(telescoped), red_shift, black_shift};
}

PressureField recover_pressure(const SquareMesh& mesh, const NCVectorField& u_h,
                               const VectorFunction& f, std::optional<PressureAnchors> anchors,
                               int points_per_direction) {
  require_same_mesh(mesh, u_h.mesh());
  return recover_pressure(u_h, LoadMoments(mesh, f, points_per_direction), anchors);
}

}  // namespace p1nc
