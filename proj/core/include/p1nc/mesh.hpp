#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p1nc/common.hpp"

namespace p1nc {

enum class SquareColor { Red, Black };

/// Color of the lattice cell (i, j); (0, 0) is red.
constexpr SquareColor lattice_color(int i, int j) noexcept {
  return ((i + j) % 2 == 0) ? SquareColor::Red : SquareColor::Black;
}

const char* to_string(SquareColor color) noexcept;

/// Column/row position on the lattice. For a square it addresses the cell
/// whose lower-left vertex is origin + h*(i, j); for a vertex it addresses
/// that lattice point directly.
struct LatticeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

enum class EdgeOrientation { Horizontal, Vertical };

/// Horizontal edges run from vertex (i, j) to (i+1, j); vertical edges from
/// (i, j) to (i, j+1).
struct EdgeRef {
  EdgeOrientation orientation = EdgeOrientation::Horizontal;
  int i = 0;
  int j = 0;
  std::array<LatticeIndex, 2> endpoints() const noexcept;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

enum class MeshErrorKind {
  DimensionTooSmall,
  EmptyMask,
  MalformedMask,
  DisconnectedDomain,
  DomainWithHole,
  // Assumption clause 1: no square has four boundary vertices.
  SquareWithFourBoundaryVertices,
  // Assumption clause 2: no interior edge joins two boundary vertices.
  InteriorEdgeWithTwoBoundaryVertices,
  // Assumption clause 3: two boundary vertices of a square span an edge.
  SquareWithOppositeBoundaryVertices,
};

const char* to_string(MeshErrorKind kind) noexcept;

class MeshError : public Error {
 public:
  MeshError(MeshErrorKind kind, const std::string& message,
            std::optional<LatticeIndex> square = std::nullopt,
            std::optional<EdgeRef> edge = std::nullopt);

  MeshErrorKind kind() const noexcept { return kind_; }
  /// Offending square, for clause 1/3 violations.
  const std::optional<LatticeIndex>& square() const noexcept { return square_; }
  /// Offending edge, for clause 2 violations.
  const std::optional<EdgeRef>& edge() const noexcept { return edge_; }

 private:
  MeshErrorKind kind_;
  std::optional<LatticeIndex> square_;
  std::optional<EdgeRef> edge_;
};

/// Occupancy grid stored row-major, bottom row first.
class Mask {
 public:
  Mask() = default;
  Mask(int nx, int ny, bool filled = false);

  /// Rows given top row first, as they appear in a mask file.
  static Mask from_rows(const std::vector<std::string>& rows_top_first);
  /// Reads the plain-text mask format ('1' present, '0' absent).
  static Mask read(std::istream& in);
  static Mask read_file(const std::string& path);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  /// False outside the grid.
  bool operator()(int i, int j) const noexcept {
    return i >= 0 && j >= 0 && i < nx_ && j < ny_ &&
           cells_[static_cast<std::size_t>(j) * nx_ + i] != 0;
  }
  void set(int i, int j, bool present);
  int count() const noexcept;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<unsigned char> cells_;
};

struct EntityCounts {
  int n_interior_vertices = 0;
  int n_boundary_vertices = 0;
  int n_squares = 0;
  int n_interior_squares = 0;
  int n_interior_edges = 0;
  int n_boundary_edges = 0;
};

/// Squares meeting a given square in exactly one corner, labelled by that
/// corner. Empty slots mean the diagonal square is absent.
struct DiagonalNeighbors {
  std::optional<int> right_top;
  std::optional<int> left_top;
  std::optional<int> left_bottom;
  std::optional<int> right_bottom;

  std::size_t size() const noexcept;
};

/// Undirected graph over a subset of squares; adjacency lists hold
/// positions into `squares`.
struct SquareGraph {
  std::vector<int> squares;
  std::vector<std::vector<int>> adjacency;

  bool connected() const;
};

/// Corner slots, counterclockwise from the lower-left corner.
enum Corner : int { LeftBottom = 0, RightBottom = 1, RightTop = 2, LeftTop = 3 };

/// Uniform square lattice restricted to a validated, simply connected mask.
///
/// Squares are numbered densely row by row (bottom to top, left to right);
/// interior vertices likewise. Meshes are immutable once built.
class SquareMesh {
 public:
  static constexpr int kAbsent = -1;

  /// Full nx-by-ny grid. Throws MeshError(DimensionTooSmall) for nx or
  /// ny < 1, and whatever validation reports otherwise.
  static SquareMesh rectangular(int nx, int ny, double h, Point origin = {});

  /// Validates the mask: connectivity, simple connectivity and the three
  /// admissibility clauses, in that order.
  static SquareMesh from_mask(Mask mask, double h, Point origin = {});

  int nx() const noexcept { return mask_.nx(); }
  int ny() const noexcept { return mask_.ny(); }
  double h() const noexcept { return h_; }
  Point origin() const noexcept { return origin_; }
  const Mask& mask() const noexcept { return mask_; }

  int n_squares() const noexcept { return static_cast<int>(square_cells_.size()); }
  int n_interior_vertices() const noexcept {
    return static_cast<int>(interior_vertex_cells_.size());
  }
  int n_interior_squares() const noexcept {
    return static_cast<int>(interior_squares_.size());
  }

  /// Dense id of the square at cell (i, j), or kAbsent.
  int square_id(int i, int j) const noexcept;
  LatticeIndex square_cell(int q) const { return square_cells_.at(q); }
  Point square_center(int q) const;
  SquareColor color(int q) const {
    const auto c = square_cells_.at(q);
    return lattice_color(c.i, c.j);
  }
  bool is_interior_square(int q) const { return interior_square_flag_.at(q) != 0; }
  /// Interior squares in increasing square id.
  const std::vector<int>& interior_squares() const noexcept { return interior_squares_; }

  /// Dense id of the interior vertex at lattice point (i, j), or kAbsent
  /// when the point is a boundary vertex or not part of the mesh.
  int interior_vertex_id(int i, int j) const noexcept;
  LatticeIndex interior_vertex(int v) const { return interior_vertex_cells_.at(v); }
  Point vertex_point(LatticeIndex vertex) const noexcept {
    return {origin_.x + h_ * vertex.i, origin_.y + h_ * vertex.j};
  }
  bool is_mesh_vertex(int i, int j) const noexcept;

  /// Interior-vertex ids of the corners of square q, indexed by Corner;
  /// boundary corners are kAbsent.
  std::array<int, 4> corner_vertices(int q) const;

  /// Squares Q1..Q4 around interior vertex v, counterclockwise from the one
  /// whose lower-left corner is v. All four exist for an interior vertex.
  std::array<int, 4> vertex_squares(int v) const;

  EntityCounts counts() const;
  DiagonalNeighbors diagonal_neighbors(int q) const;

  /// Squares of one color, joined when their closures share an interior
  /// vertex. Throws InternalError if the graph is disconnected.
  SquareGraph same_color_adjacency(SquareColor color) const;

 private:
  SquareMesh(Mask mask, double h, Point origin);
  void index_entities();

  Mask mask_;
  double h_ = 1.0;
  Point origin_{};
  std::vector<int> square_ids_;             // nx*ny, kAbsent for holes
  std::vector<LatticeIndex> square_cells_;  // dense id -> cell
  std::vector<int> interior_vertex_ids_;    // (nx+1)*(ny+1)
  std::vector<LatticeIndex> interior_vertex_cells_;
  std::vector<unsigned char> interior_square_flag_;
  std::vector<int> interior_squares_;
};

/// Runs the validation used by SquareMesh::from_mask without building.
void validate_mask(const Mask& mask);

}  // namespace p1nc
