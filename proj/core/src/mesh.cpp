#include "p1nc/mesh.hpp"

#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

namespace p1nc {

namespace {

std::string cell_string(int i, int j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

// Lattice vertex (i, j) is interior iff all four cells around it are present.
bool vertex_is_interior(const Mask& mask, int i, int j) noexcept {
  return mask(i - 1, j - 1) && mask(i, j - 1) && mask(i - 1, j) && mask(i, j);
}

// Corner lattice points of cell (i, j), indexed by Corner.
std::array<LatticeIndex, 4> cell_corners(int i, int j) noexcept {
  return {LatticeIndex{i, j}, LatticeIndex{i + 1, j}, LatticeIndex{i + 1, j + 1},
          LatticeIndex{i, j + 1}};
}

void check_connected(const Mask& mask) {
  const int nx = mask.nx();
  const int ny = mask.ny();
  std::vector<unsigned char> seen(static_cast<std::size_t>(nx) * ny, 0);
  std::deque<LatticeIndex> queue;
  int start_i = -1;
  int start_j = -1;
  for (int j = 0; j < ny && start_i < 0; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (mask(i, j)) {
        start_i = i;
        start_j = j;
        break;
      }
    }
  }
  queue.push_back({start_i, start_j});
  seen[static_cast<std::size_t>(start_j) * nx + start_i] = 1;
  int reached = 1;
  constexpr std::array<std::array<int, 2>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      const int i = c.i + s[0];
      const int j = c.j + s[1];
      if (!mask(i, j)) continue;
      auto& flag = seen[static_cast<std::size_t>(j) * nx + i];
      if (flag) continue;
      flag = 1;
      ++reached;
      queue.push_back({i, j});
    }
  }
  if (reached != mask.count()) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (mask(i, j) && !seen[static_cast<std::size_t>(j) * nx + i]) {
          throw MeshError(MeshErrorKind::DisconnectedDomain,
                          "domain is not connected: square " + cell_string(i, j) +
                              " is unreachable from square " +
                              cell_string(start_i, start_j) + " across edges",
                          LatticeIndex{i, j});
        }
      }
    }
  }
}

// The complement of the open domain is closed, so absent cells that touch
// only at a corner belong to the same complement component (8-connectivity).
void check_simply_connected(const Mask& mask) {
  const int px = mask.nx() + 2;
  const int py = mask.ny() + 2;
  auto absent = [&](int pi, int pj) {
    return pi >= 0 && pj >= 0 && pi < px && pj < py && !mask(pi - 1, pj - 1);
  };
  std::vector<unsigned char> seen(static_cast<std::size_t>(px) * py, 0);
  std::deque<LatticeIndex> queue{{0, 0}};
  seen[0] = 1;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int i = c.i + di;
        const int j = c.j + dj;
        if (!absent(i, j)) continue;
        auto& flag = seen[static_cast<std::size_t>(j) * px + i];
        if (flag) continue;
        flag = 1;
        queue.push_back({i, j});
      }
    }
  }
  for (int j = 0; j < mask.ny(); ++j) {
    for (int i = 0; i < mask.nx(); ++i) {
      if (!mask(i, j) && !seen[static_cast<std::size_t>(j + 1) * px + (i + 1)]) {
        throw MeshError(MeshErrorKind::DomainWithHole,
                        "domain is not simply connected: absent cell " +
                            cell_string(i, j) + " is enclosed by the domain",
                        LatticeIndex{i, j});
      }
    }
  }
}

void check_admissible(const Mask& mask) {
  const int nx = mask.nx();
  const int ny = mask.ny();

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!mask(i, j)) continue;
      int n_boundary = 0;
      for (const auto& c : cell_corners(i, j)) {
        if (!vertex_is_interior(mask, c.i, c.j)) ++n_boundary;
      }
      if (n_boundary == 4) {
        throw MeshError(MeshErrorKind::SquareWithFourBoundaryVertices,
                        "square " + cell_string(i, j) + " has four boundary vertices",
                        LatticeIndex{i, j});
      }
    }
  }

  auto check_edge = [&](const EdgeRef& e) {
    const auto ends = e.endpoints();
    if (!vertex_is_interior(mask, ends[0].i, ends[0].j) &&
        !vertex_is_interior(mask, ends[1].i, ends[1].j)) {
      throw MeshError(MeshErrorKind::InteriorEdgeWithTwoBoundaryVertices,
                      std::string("interior ") +
                          (e.orientation == EdgeOrientation::Horizontal ? "horizontal"
                                                                         : "vertical") +
                          " edge from vertex " + cell_string(ends[0].i, ends[0].j) +
                          " to " + cell_string(ends[1].i, ends[1].j) +
                          " joins two boundary vertices",
                      std::nullopt, e);
    }
  };
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (mask(i, j - 1) && mask(i, j)) check_edge({EdgeOrientation::Horizontal, i, j});
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      if (mask(i - 1, j) && mask(i, j)) check_edge({EdgeOrientation::Vertical, i, j});
    }
  }

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!mask(i, j)) continue;
      std::array<bool, 4> boundary{};
      int n_boundary = 0;
      const auto corners = cell_corners(i, j);
      for (int k = 0; k < 4; ++k) {
        boundary[k] = !vertex_is_interior(mask, corners[k].i, corners[k].j);
        n_boundary += boundary[k] ? 1 : 0;
      }
      // Two boundary corners are opposite iff they are (lb, rt) or (rb, lt).
      if (n_boundary == 2 && boundary[LeftBottom] == boundary[RightTop]) {
        throw MeshError(MeshErrorKind::SquareWithOppositeBoundaryVertices,
                        "square " + cell_string(i, j) +
                            " has two boundary vertices that are not the endpoints "
                            "of one edge",
                        LatticeIndex{i, j});
      }
    }
  }
}

}  // namespace

const char* to_string(SquareColor color) noexcept {
  return color == SquareColor::Red ? "red" : "black";
}

const char* to_string(MeshErrorKind kind) noexcept {
  switch (kind) {
    case MeshErrorKind::DimensionTooSmall: return "dimension-too-small";
    case MeshErrorKind::EmptyMask: return "empty-mask";
    case MeshErrorKind::MalformedMask: return "malformed-mask";
    case MeshErrorKind::DisconnectedDomain: return "disconnected-domain";
    case MeshErrorKind::DomainWithHole: return "domain-with-hole";
    case MeshErrorKind::SquareWithFourBoundaryVertices:
      return "square-with-four-boundary-vertices";
    case MeshErrorKind::InteriorEdgeWithTwoBoundaryVertices:
      return "interior-edge-with-two-boundary-vertices";
    case MeshErrorKind::SquareWithOppositeBoundaryVertices:
      return "square-with-opposite-boundary-vertices";
  }
  return "unknown";
}

std::array<LatticeIndex, 2> EdgeRef::endpoints() const noexcept {
  if (orientation == EdgeOrientation::Horizontal) return {LatticeIndex{i, j}, LatticeIndex{i + 1, j}};
  return {LatticeIndex{i, j}, LatticeIndex{i, j + 1}};
}

MeshError::MeshError(MeshErrorKind kind, const std::string& message,
                     std::optional<LatticeIndex> square, std::optional<EdgeRef> edge)
    : Error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      square_(square),
      edge_(edge) {}

// ---------------------------------------------------------------------------
// Mask

Mask::Mask(int nx, int ny, bool filled) : nx_(nx), ny_(ny) {
  if (nx < 0 || ny < 0) {
    throw MeshError(MeshErrorKind::DimensionTooSmall, "negative mask extent");
  }
  cells_.assign(static_cast<std::size_t>(nx) * ny, filled ? 1 : 0);
}

Mask Mask::from_rows(const std::vector<std::string>& rows_top_first) {
  if (rows_top_first.empty() || rows_top_first.front().empty()) {
    throw MeshError(MeshErrorKind::EmptyMask, "mask has no rows");
  }
  const int ny = static_cast<int>(rows_top_first.size());
  const int nx = static_cast<int>(rows_top_first.front().size());
  Mask mask(nx, ny);
  for (int r = 0; r < ny; ++r) {
    const auto& row = rows_top_first[r];
    if (static_cast<int>(row.size()) != nx) {
      throw MeshError(MeshErrorKind::MalformedMask,
                      "row " + std::to_string(r + 1) + " has length " +
                          std::to_string(row.size()) + ", expected " + std::to_string(nx));
    }
    for (int i = 0; i < nx; ++i) {
      const char ch = row[i];
      if (ch != '0' && ch != '1') {
        throw MeshError(MeshErrorKind::MalformedMask,
                        "row " + std::to_string(r + 1) + " contains '" +
                            std::string(1, ch) + "'; only '0' and '1' are allowed");
      }
      mask.set(i, ny - 1 - r, ch == '1');
    }
  }
  return mask;
}

Mask Mask::read(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return from_rows(rows);
}

Mask Mask::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError(MeshErrorKind::MalformedMask, "cannot open mask file '" + path + "'");
  return read(in);
}

void Mask::set(int i, int j, bool present) {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) {
    throw InvalidArgument("mask cell " + cell_string(i, j) + " out of range");
  }
  cells_[static_cast<std::size_t>(j) * nx_ + i] = present ? 1 : 0;
}

int Mask::count() const noexcept {
  int n = 0;
  for (auto c : cells_) n += c;
  return n;
}

// ---------------------------------------------------------------------------
// Graph helpers

std::size_t DiagonalNeighbors::size() const noexcept {
  return static_cast<std::size_t>(right_top.has_value()) + left_top.has_value() +
         left_bottom.has_value() + right_bottom.has_value();
}

bool SquareGraph::connected() const {
  if (squares.empty()) return true;
  std::vector<unsigned char> seen(squares.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int m : adjacency[n]) {
      if (seen[m]) continue;
      seen[m] = 1;
      ++reached;
      queue.push_back(m);
    }
  }
  return reached == squares.size();
}

// ---------------------------------------------------------------------------
// SquareMesh

void validate_mask(const Mask& mask) {
  if (mask.nx() == 0 || mask.ny() == 0 || mask.count() == 0) {
    throw MeshError(MeshErrorKind::EmptyMask, "mask has no present squares");
  }
  check_connected(mask);
  check_simply_connected(mask);
  check_admissible(mask);
}

SquareMesh SquareMesh::rectangular(int nx, int ny, double h, Point origin) {
  if (nx < 1 || ny < 1) {
    throw MeshError(MeshErrorKind::DimensionTooSmall,
                    "grid extents must be at least 1, got " + std::to_string(nx) + " x " +
                        std::to_string(ny));
  }
  return from_mask(Mask(nx, ny, true), h, origin);
}

SquareMesh SquareMesh::from_mask(Mask mask, double h, Point origin) {
  if (!(h > 0.0)) throw InvalidArgument("square side h must be positive");
  validate_mask(mask);
  return SquareMesh(std::move(mask), h, origin);
}

SquareMesh::SquareMesh(Mask mask, double h, Point origin)
    : mask_(std::move(mask)), h_(h), origin_(origin) {
  index_entities();
}

void SquareMesh::index_entities() {
  const int nx = mask_.nx();
  const int ny = mask_.ny();

  square_ids_.assign(static_cast<std::size_t>(nx) * ny, kAbsent);
  square_cells_.clear();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!mask_(i, j)) continue;
      square_ids_[static_cast<std::size_t>(j) * nx + i] = static_cast<int>(square_cells_.size());
      square_cells_.push_back({i, j});
    }
  }

  interior_vertex_ids_.assign(static_cast<std::size_t>(nx + 1) * (ny + 1), kAbsent);
  interior_vertex_cells_.clear();
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (!vertex_is_interior(mask_, i, j)) continue;
      interior_vertex_ids_[static_cast<std::size_t>(j) * (nx + 1) + i] =
          static_cast<int>(interior_vertex_cells_.size());
      interior_vertex_cells_.push_back({i, j});
    }
  }

  interior_square_flag_.assign(square_cells_.size(), 0);
  interior_squares_.clear();
  for (int q = 0; q < n_squares(); ++q) {
    const auto c = square_cells_[q];
    bool interior = true;
    for (const auto& v : cell_corners(c.i, c.j)) {
      interior = interior && interior_vertex_id(v.i, v.j) != kAbsent;
    }
    if (interior) {
      interior_square_flag_[q] = 1;
      interior_squares_.push_back(q);
    }
  }
}

int SquareMesh::square_id(int i, int j) const noexcept {
  if (i < 0 || j < 0 || i >= nx() || j >= ny()) return kAbsent;
  return square_ids_[static_cast<std::size_t>(j) * nx() + i];
}

Point SquareMesh::square_center(int q) const {
  const auto c = square_cells_.at(q);
  return {origin_.x + h_ * (c.i + 0.5), origin_.y + h_ * (c.j + 0.5)};
}

int SquareMesh::interior_vertex_id(int i, int j) const noexcept {
  if (i < 0 || j < 0 || i > nx() || j > ny()) return kAbsent;
  return interior_vertex_ids_[static_cast<std::size_t>(j) * (nx() + 1) + i];
}

bool SquareMesh::is_mesh_vertex(int i, int j) const noexcept {
  return mask_(i - 1, j - 1) || mask_(i, j - 1) || mask_(i - 1, j) || mask_(i, j);
}

std::array<int, 4> SquareMesh::corner_vertices(int q) const {
  const auto c = square_cells_.at(q);
  std::array<int, 4> ids{};
  const auto corners = cell_corners(c.i, c.j);
  for (int k = 0; k < 4; ++k) ids[k] = interior_vertex_id(corners[k].i, corners[k].j);
  return ids;
}

std::array<int, 4> SquareMesh::vertex_squares(int v) const {
  const auto p = interior_vertex_cells_.at(v);
  return {square_id(p.i, p.j), square_id(p.i - 1, p.j), square_id(p.i - 1, p.j - 1),
          square_id(p.i, p.j - 1)};
}

EntityCounts SquareMesh::counts() const {
  EntityCounts out;
  out.n_squares = n_squares();
  out.n_interior_vertices = n_interior_vertices();
  out.n_interior_squares = n_interior_squares();
  int n_vertices = 0;
  for (int j = 0; j <= ny(); ++j) {
    for (int i = 0; i <= nx(); ++i) n_vertices += is_mesh_vertex(i, j) ? 1 : 0;
  }
  out.n_boundary_vertices = n_vertices - out.n_interior_vertices;
  for (int j = 0; j <= ny(); ++j) {
    for (int i = 0; i < nx(); ++i) {
      const bool below = mask_(i, j - 1);
      const bool above = mask_(i, j);
      if (below && above) ++out.n_interior_edges;
      else if (below || above) ++out.n_boundary_edges;
    }
  }
  for (int j = 0; j < ny(); ++j) {
    for (int i = 0; i <= nx(); ++i) {
      const bool left = mask_(i - 1, j);
      const bool right = mask_(i, j);
      if (left && right) ++out.n_interior_edges;
      else if (left || right) ++out.n_boundary_edges;
    }
  }
  return out;
}

DiagonalNeighbors SquareMesh::diagonal_neighbors(int q) const {
  const auto c = square_cells_.at(q);
  auto lookup = [&](int i, int j) -> std::optional<int> {
    const int id = square_id(i, j);
    if (id == kAbsent) return std::nullopt;
    return id;
  };
  return {lookup(c.i + 1, c.j + 1), lookup(c.i - 1, c.j + 1), lookup(c.i - 1, c.j - 1),
          lookup(c.i + 1, c.j - 1)};
}

SquareGraph SquareMesh::same_color_adjacency(SquareColor color) const {
  SquareGraph graph;
  std::vector<int> position(square_cells_.size(), kAbsent);
  for (int q = 0; q < n_squares(); ++q) {
    if (this->color(q) != color) continue;
    position[q] = static_cast<int>(graph.squares.size());
    graph.squares.push_back(q);
  }
  graph.adjacency.resize(graph.squares.size());
  // Diagonal offset and the lattice point shared with that diagonal square.
  constexpr std::array<std::array<int, 4>, 4> diagonals{
      {{1, 1, 1, 1}, {-1, 1, 0, 1}, {-1, -1, 0, 0}, {1, -1, 1, 0}}};
  for (std::size_t n = 0; n < graph.squares.size(); ++n) {
    const auto c = square_cells_[graph.squares[n]];
    for (const auto& d : diagonals) {
      const int other = square_id(c.i + d[0], c.j + d[1]);
      if (other == kAbsent) continue;
      if (interior_vertex_id(c.i + d[2], c.j + d[3]) == kAbsent) continue;
      graph.adjacency[n].push_back(position[other]);
    }
  }
  if (!graph.connected()) {
    throw InternalError(std::string("the ") + to_string(color) +
                        " squares are not connected through interior vertices");
  }
  return graph;
}

}  // namespace p1nc
