#pragma once

#include <array>
#include <vector>

#include "p1nc/common.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"
#include "p1nc/sparse_matrix.hpp"

namespace p1nc {

/// One nonzero of the 13-point stiffness stencil between divergence-free
/// basis functions centred at interior squares Q and Q + (di, dj).
struct StencilEntry {
  int di;
  int dj;
  double value;
};

/// Gram entries of the gradient inner product between divergence-free basis
/// functions. The values do not depend on h.
inline constexpr std::array<StencilEntry, 13> kStiffnessStencil{{
    {0, 0, 20.0},
    {1, 1, -8.0}, {-1, 1, -8.0}, {-1, -1, -8.0}, {1, -1, -8.0},
    {2, 0, 2.0}, {-2, 0, 2.0}, {0, 2, 2.0}, {0, -2, 2.0},
    {2, 2, 1.0}, {-2, 2, 1.0}, {-2, -2, 1.0}, {2, -2, 1.0},
}};

/// Stencil value at offset (di, dj), 0 outside the stencil.
double stencil_value(int di, int dj) noexcept;

/// Per-color dense numbering of the interior squares (increasing square id).
class ColorBlocks {
 public:
  explicit ColorBlocks(const SquareMesh& mesh);

  const std::vector<int>& squares(SquareColor color) const noexcept {
    return color == SquareColor::Red ? red_ : black_;
  }
  int size(SquareColor color) const noexcept {
    return static_cast<int>(squares(color).size());
  }
  /// Position of interior square q in its color block, or -1.
  int local_index(int q) const { return local_.at(q); }

 private:
  std::vector<int> red_;
  std::vector<int> black_;
  std::vector<int> local_;
};

/// Coefficients of a velocity in the divergence-free basis, split by the
/// color of the centre square.
class DivFreeCoefficients {
 public:
  explicit DivFreeCoefficients(const SquareMesh& mesh);
  DivFreeCoefficients(const SquareMesh& mesh, std::vector<double> red, std::vector<double> black);

  const SquareMesh& mesh() const noexcept { return *mesh_; }
  const ColorBlocks& blocks() const noexcept { return blocks_; }
  std::span<const double> block(SquareColor color) const noexcept {
    return color == SquareColor::Red ? red_ : black_;
  }
  std::span<double> block(SquareColor color) noexcept {
    return color == SquareColor::Red ? red_ : black_;
  }
  /// Coefficient of the basis function centred at interior square q.
  double value(int q) const;
  int size() const noexcept { return static_cast<int>(red_.size() + black_.size()); }

 private:
  const SquareMesh* mesh_;
  ColorBlocks blocks_;
  std::vector<double> red_;
  std::vector<double> black_;
};

/// (a, b) times the hat of interior vertex v. Its discrete divergence on
/// Q1..Q4 around v is (-(a+b), a-b, a+b, b-a)/h and its curl
/// (a-b, a+b, b-a, -(a+b))/h.
NCVectorField psi_vab(const SquareMesh& mesh, int v, double a, double b);

/// Divergence-free basis function centred at interior square q:
/// psi^{rt}[1/2,-1/2] + psi^{lt}[1/2,1/2] + psi^{lb}[-1/2,1/2] + psi^{rb}[-1/2,-1/2].
/// Throws InvalidArgument when q is not interior.
NCVectorField basis_function(const SquareMesh& mesh, int q);

/// The basis function restricted to one square of its 3x3 support.
struct BasisPiece {
  int square;
  LocalLinear x;
  LocalLinear y;
};

/// Local linear data of basis_function(mesh, q) on its nine support squares,
/// ordered bottom-to-top, left-to-right.
std::array<BasisPiece, 9> basis_pieces(const SquareMesh& mesh, int q);

/// Stiffness block of one color, assembled from the stencil.
SparseSpdMatrix assemble_stiffness(const SquareMesh& mesh, SquareColor color);

/// Per-square first moments of a forcing term: for each square and component
/// c, the integrals of f_c, f_c * xhat and f_c * yhat, by tensor Gauss-Legendre
/// quadrature with `points_per_direction` points.
class LoadMoments {
 public:
  LoadMoments(const SquareMesh& mesh, const VectorFunction& f, int points_per_direction);

  const SquareMesh& mesh() const noexcept { return *mesh_; }
  /// int_Q f . (lx, ly) for linear components lx, ly on square q.
  double integrate(int q, const LocalLinear& lx, const LocalLinear& ly) const noexcept;

 private:
  const SquareMesh* mesh_;
  std::vector<std::array<double, 6>> moments_;
};

/// Entries int f . Psi^Q over the interior squares of one color.
/// `points_per_direction` must be at least 1 (default 3).
std::vector<double> assemble_load(const SquareMesh& mesh, const VectorFunction& f,
                                  SquareColor color, int points_per_direction = 3);
std::vector<double> assemble_load(const LoadMoments& moments, SquareColor color);

/// Sum of c_Q Psi^Q.
NCVectorField expand(const DivFreeCoefficients& coeffs);

}  // namespace p1nc
