#pragma once

#include <array>
#include <optional>

#include "p1nc/common.hpp"
#include "p1nc/divfree.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"

namespace p1nc {

/// (grad u_h, grad v)_h - (f, v) for a velocity test field v. The gradient
/// term is exact; the forcing term uses the same Gauss rule as load assembly.
double momentum_residual(const NCVectorField& u_h, const LoadMoments& moments,
                         const NCVectorField& v);
double momentum_residual(const NCVectorField& u_h, const VectorFunction& f,
                         const NCVectorField& v, int points_per_direction = 3);

/// One red and one black square where the telescoped pressure is pinned to 0.
struct PressureAnchors {
  int red;
  int black;
};

/// Lowest-index red and black squares.
PressureAnchors default_anchors(const SquareMesh& mesh);

/// Indicator field of the squares of one color.
PiecewiseConstField checkerboard(const SquareMesh& mesh, SquareColor color);

/// (a, b) in {+-h/2}^2 such that div_h psi^V[a, b] is +1 on the square in
/// slot `to` and -1 on the square in slot `from` around V (slots 0..3 are
/// Q1..Q4). The two slots must be diagonally opposite.
std::array<double, 2> telescoping_step(int to, int from, double h);

struct PressureField {
  PiecewiseConstField pressure;    // final, zero mean on each color
  PiecewiseConstField telescoped;  // before the checkerboard correction
  double red_shift = 0.0;          // mean of `telescoped` over red squares
  double black_shift = 0.0;        // mean of `telescoped` over black squares
};

/// Explicit pressure recovery from a discrete velocity solving the
/// divergence-free problem for f: breadth-first sweeps over each color's
/// squares through shared interior vertices, then removal of the red and
/// black means.
///
/// Throws InvalidArgument when an anchor has the wrong color and
/// InternalError when a square cannot be reached.
PressureField recover_pressure(const NCVectorField& u_h, const LoadMoments& moments,
                               std::optional<PressureAnchors> anchors = std::nullopt);
PressureField recover_pressure(const SquareMesh& mesh, const NCVectorField& u_h,
                               const VectorFunction& f,
                               std::optional<PressureAnchors> anchors = std::nullopt,
                               int points_per_direction = 3);

}  // namespace p1nc
