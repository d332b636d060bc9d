#pragma once

// Test-only generators and brute-force references. Nothing here calls the
// code paths it is used to check.

#include <cmath>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"

namespace p1nc::testing {

/// 3x3 grid missing its top-right square.
inline Mask l_mask() { return Mask::from_rows({"110", "111", "111"}); }

/// Marks every absent cell that is not 8-connected to the exterior of the
/// box as present.
inline void fill_holes(Mask& mask) {
  const int nx = mask.nx();
  const int ny = mask.ny();
  const int px = nx + 2;
  const int py = ny + 2;
  std::vector<unsigned char> outside(static_cast<std::size_t>(px) * py, 0);
  std::deque<std::array<int, 2>> queue{{0, 0}};
  outside[0] = 1;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int i = c[0] + di;
        const int j = c[1] + dj;
        if (i < 0 || j < 0 || i >= px || j >= py) continue;
        if (mask(i - 1, j - 1)) continue;
        auto& o = outside[static_cast<std::size_t>(j) * px + i];
        if (o) continue;
        o = 1;
        queue.push_back({i, j});
      }
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!outside[static_cast<std::size_t>(j + 1) * px + i + 1]) mask.set(i, j, true);
    }
  }
}

/// Random 4-connected blob with its enclosed holes filled in, inside an
/// nx-by-ny box. Not every result satisfies the admissibility clauses.
inline Mask random_blob(std::mt19937_64& rng, int nx, int ny, int cells) {
  Mask mask(nx, ny);
  std::uniform_int_distribution<int> ci(0, nx - 1);
  std::uniform_int_distribution<int> cj(0, ny - 1);
  std::vector<std::array<int, 2>> present{{ci(rng), cj(rng)}};
  mask.set(present[0][0], present[0][1], true);
  constexpr std::array<std::array<int, 2>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  int guard = 0;
  while (static_cast<int>(present.size()) < cells && guard++ < 100 * cells) {
    std::uniform_int_distribution<std::size_t> pick(0, present.size() - 1);
    const auto base = present[pick(rng)];
    const auto s = steps[std::uniform_int_distribution<int>(0, 3)(rng)];
    const int i = base[0] + s[0];
    const int j = base[1] + s[1];
    if (i < 0 || j < 0 || i >= nx || j >= ny || mask(i, j)) continue;
    mask.set(i, j, true);
    present.push_back({i, j});
  }
  fill_holes(mask);
  return mask;
}

/// Union of random axis-aligned rectangles (each at least 3x3), each one
/// overlapping the union so far, with enclosed holes filled in.
inline Mask random_rectangle_union(std::mt19937_64& rng, int nx, int ny, int pieces) {
  Mask mask(nx, ny);
  std::uniform_int_distribution<int> wi(3, std::max(3, nx / 2));
  std::uniform_int_distribution<int> wj(3, std::max(3, ny / 2));
  for (int p = 0; p < pieces; ++p) {
    const int w = std::min(nx, wi(rng));
    const int h = std::min(ny, wj(rng));
    for (int attempt = 0; attempt < 100; ++attempt) {
      const int i0 = std::uniform_int_distribution<int>(0, nx - w)(rng);
      const int j0 = std::uniform_int_distribution<int>(0, ny - h)(rng);
      bool overlaps = p == 0;
      for (int j = j0; j < j0 + h; ++j)
        for (int i = i0; i < i0 + w; ++i) overlaps = overlaps || mask(i, j);
      if (!overlaps) continue;
      for (int j = j0; j < j0 + h; ++j)
        for (int i = i0; i < i0 + w; ++i) mask.set(i, j, true);
      break;
    }
  }
  fill_holes(mask);
  return mask;
}

/// Independent entity counts by direct lattice enumeration.
struct BruteCounts {
  int interior_vertices = 0;
  int boundary_vertices = 0;
  int squares = 0;
  int interior_squares = 0;
  int interior_edges = 0;
  int boundary_edges = 0;
  int red_interior_squares = 0;
};

inline BruteCounts brute_counts(const Mask& m) {
  BruteCounts c;
  auto around = [&](int i, int j) {
    return int(m(i - 1, j - 1)) + int(m(i, j - 1)) + int(m(i - 1, j)) + int(m(i, j));
  };
  for (int j = 0; j <= m.ny(); ++j) {
    for (int i = 0; i <= m.nx(); ++i) {
      const int k = around(i, j);
      if (k == 4) ++c.interior_vertices;
      else if (k > 0) ++c.boundary_vertices;
    }
  }
  for (int j = 0; j < m.ny(); ++j) {
    for (int i = 0; i < m.nx(); ++i) {
      if (!m(i, j)) continue;
      ++c.squares;
      bool interior = true;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) interior = interior && m(i + di, j + dj);
      if (interior) {
        ++c.interior_squares;
        if ((i + j) % 2 == 0) ++c.red_interior_squares;
      }
    }
  }
  // Each present square contributes its four sides; a side shared with a
  // present neighbour is interior and seen twice.
  int sides_shared = 0;
  int sides_free = 0;
  for (int j = 0; j < m.ny(); ++j) {
    for (int i = 0; i < m.nx(); ++i) {
      if (!m(i, j)) continue;
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        if (m(i + di, j + dj)) ++sides_shared;
        else ++sides_free;
      }
    }
  }
  c.interior_edges = sides_shared / 2;
  c.boundary_edges = sides_free;
  return c;
}

/// Random coefficients in [-1, 1] for both components.
inline NCVectorField random_field(std::mt19937_64& rng, const SquareMesh& mesh) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  NCVectorField u(mesh);
  for (auto& c : u.x.coeffs()) c = d(rng);
  for (auto& c : u.y.coeffs()) c = d(rng);
  return u;
}

inline double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace p1nc::testing
