#include "p1nc/divfree.hpp"

#include "p1nc/quadrature.hpp"

namespace p1nc {

namespace {

// Coefficients of Psi^Q at the corners of Q, indexed by Corner, for the x
// and y components.
constexpr std::array<double, 4> kBasisX{-0.5, -0.5, 0.5, 0.5};
constexpr std::array<double, 4> kBasisY{0.5, -0.5, -0.5, 0.5};

void require_interior_square(const SquareMesh& mesh, int q) {
  if (q < 0 || q >= mesh.n_squares() || !mesh.is_interior_square(q)) {
    throw InvalidArgument("square " + std::to_string(q) + " is not an interior square");
  }
}

}  // namespace

double stencil_value(int di, int dj) noexcept {
  for (const auto& e : kStiffnessStencil) {
    if (e.di == di && e.dj == dj) return e.value;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// ColorBlocks / DivFreeCoefficients

ColorBlocks::ColorBlocks(const SquareMesh& mesh)
    : local_(static_cast<std::size_t>(mesh.n_squares()), -1) {
  for (int q : mesh.interior_squares()) {
    auto& block = mesh.color(q) == SquareColor::Red ? red_ : black_;
    local_[q] = static_cast<int>(block.size());
    block.push_back(q);
  }
}

DivFreeCoefficients::DivFreeCoefficients(const SquareMesh& mesh)
    : mesh_(&mesh),
      blocks_(mesh),
      red_(static_cast<std::size_t>(blocks_.size(SquareColor::Red)), 0.0),
      black_(static_cast<std::size_t>(blocks_.size(SquareColor::Black)), 0.0) {}

DivFreeCoefficients::DivFreeCoefficients(const SquareMesh& mesh, std::vector<double> red,
                                         std::vector<double> black)
    : mesh_(&mesh), blocks_(mesh), red_(std::move(red)), black_(std::move(black)) {
  if (static_cast<int>(red_.size()) != blocks_.size(SquareColor::Red) ||
      static_cast<int>(black_.size()) != blocks_.size(SquareColor::Black)) {
    throw InvalidArgument("coefficient blocks do not match the interior squares of the mesh");
  }
}

double DivFreeCoefficients::value(int q) const {
  require_interior_square(*mesh_, q);
  const auto& values = mesh_->color(q) == SquareColor::Red ? red_ : black_;
  return values[blocks_.local_index(q)];
}

// ---------------------------------------------------------------------------
// Basis functions

NCVectorField psi_vab(const SquareMesh& mesh, int v, double a, double b) {
  auto hat = psi_vertex(mesh, v);
  NCVectorField out(hat, hat);
  out.x *= a;
  out.y *= b;
  return out;
}

NCVectorField basis_function(const SquareMesh& mesh, int q) {
  require_interior_square(mesh, q);
  NCVectorField out(mesh);
  const auto corners = mesh.corner_vertices(q);
  for (int k = 0; k < 4; ++k) {
    out.x.coeffs()[corners[k]] = kBasisX[k];
    out.y.coeffs()[corners[k]] = kBasisY[k];
  }
  return out;
}

std::array<BasisPiece, 9> basis_pieces(const SquareMesh& mesh, int q) {
  require_interior_square(mesh, q);
  const auto center = mesh.square_cell(q);
  const double h = mesh.h();
  std::array<BasisPiece, 9> pieces{};
  int n = 0;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      // Corner coefficients of Psi^Q on the neighbouring square: only the
      // lattice points shared with Q carry nonzero values.
      std::array<double, 4> cx{};
      std::array<double, 4> cy{};
      const std::array<std::array<int, 2>, 4> offsets{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
      for (int k = 0; k < 4; ++k) {
        const int pi = di + offsets[k][0];
        const int pj = dj + offsets[k][1];
        for (int m = 0; m < 4; ++m) {
          if (pi == offsets[m][0] && pj == offsets[m][1]) {
            cx[k] = kBasisX[m];
            cy[k] = kBasisY[m];
          }
        }
      }
      auto linear = [h](const std::array<double, 4>& c) {
        return LocalLinear{0.5 * (c[0] + c[1] + c[2] + c[3]), (c[1] + c[2] - c[0] - c[3]) / h,
                           (c[3] + c[2] - c[0] - c[1]) / h};
      };
      pieces[n++] = {mesh.square_id(center.i + di, center.j + dj), linear(cx), linear(cy)};
    }
  }
  return pieces;
}

// ---------------------------------------------------------------------------
// Assembly

SparseSpdMatrix assemble_stiffness(const SquareMesh& mesh, SquareColor color) {
  const ColorBlocks blocks(mesh);
  const auto& squares = blocks.squares(color);
  std::vector<std::vector<SparseSpdMatrix::Entry>> rows(squares.size());
  for (std::size_t r = 0; r < squares.size(); ++r) {
    const auto c = mesh.square_cell(squares[r]);
    rows[r].reserve(kStiffnessStencil.size());
    for (const auto& e : kStiffnessStencil) {
      const int other = mesh.square_id(c.i + e.di, c.j + e.dj);
      if (other == SquareMesh::kAbsent || !mesh.is_interior_square(other)) continue;
      rows[r].push_back({blocks.local_index(other), e.value});
    }
  }
  return SparseSpdMatrix::from_rows(std::move(rows));
}

LoadMoments::LoadMoments(const SquareMesh& mesh, const VectorFunction& f,
                         int points_per_direction)
    : mesh_(&mesh), moments_(static_cast<std::size_t>(mesh.n_squares())) {
  const auto rule = square_rule(points_per_direction, mesh.h());
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const auto center = mesh.square_center(q);
    std::array<double, 6> m{};
    for (int k = 0; k < rule.size(); ++k) {
      const double xh = rule.xhat[k];
      const double yh = rule.yhat[k];
      const auto value = f(center.x + xh, center.y + yh);
      const double w = rule.weights[k];
      m[0] += w * value[0];
      m[1] += w * value[0] * xh;
      m[2] += w * value[0] * yh;
      m[3] += w * value[1];
      m[4] += w * value[1] * xh;
      m[5] += w * value[1] * yh;
    }
    moments_[q] = m;
  }
}

double LoadMoments::integrate(int q, const LocalLinear& lx, const LocalLinear& ly) const noexcept {
  const auto& m = moments_[q];
  return lx.alpha * m[0] + lx.beta * m[1] + lx.gamma * m[2] + ly.alpha * m[3] + ly.beta * m[4] +
         ly.gamma * m[5];
}

std::vector<double> assemble_load(const SquareMesh& mesh, const VectorFunction& f,
                                  SquareColor color, int points_per_direction) {
  return assemble_load(LoadMoments(mesh, f, points_per_direction), color);
}

std::vector<double> assemble_load(const LoadMoments& moments, SquareColor color) {
  const auto& mesh = moments.mesh();
  const ColorBlocks blocks(mesh);
  const auto& squares = blocks.squares(color);
  std::vector<double> load(squares.size(), 0.0);
  for (std::size_t r = 0; r < squares.size(); ++r) {
    double sum = 0.0;
    for (const auto& piece : basis_pieces(mesh, squares[r])) {
      sum += moments.integrate(piece.square, piece.x, piece.y);
    }
    load[r] = sum;
  }
  return load;
}

NCVectorField expand(const DivFreeCoefficients& coeffs) {
  const auto& mesh = coeffs.mesh();
  NCVectorField out(mesh);
  auto cx = out.x.coeffs();
  auto cy = out.y.coeffs();
  for (const auto color : {SquareColor::Red, SquareColor::Black}) {
    const auto& squares = coeffs.blocks().squares(color);
    const auto values = coeffs.block(color);
    for (std::size_t r = 0; r < squares.size(); ++r) {
      const auto corners = mesh.corner_vertices(squares[r]);
      for (int k = 0; k < 4; ++k) {
        cx[corners[k]] += values[r] * kBasisX[k];
        cy[corners[k]] += values[r] * kBasisY[k];
      }
    }
  }
  return out;
}

}  // namespace p1nc
