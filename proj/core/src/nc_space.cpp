#include "p1nc/nc_space.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace p1nc {

namespace {

void require_size(std::size_t actual, int expected, const char* what) {
  if (static_cast<int>(actual) != expected) {
    throw InvalidArgument(std::string(what) + " has " + std::to_string(actual) +
                          " entries, expected " + std::to_string(expected));
  }
}

double corner_coeff(std::span<const double> coeffs, int v) noexcept {
  return v == SquareMesh::kAbsent ? 0.0 : coeffs[v];
}

}  // namespace

void require_same_mesh(const SquareMesh& a, const SquareMesh& b) {
  if (&a != &b) throw InvalidArgument("fields live on different meshes");
}

LocalLinear local_linear_from_midpoints(const MidpointValues& m, double h) noexcept {
  return {0.25 * (m.left + m.right + m.bottom + m.top), (m.right - m.left) / h,
          (m.top - m.bottom) / h};
}

// ---------------------------------------------------------------------------
// NCScalarField

NCScalarField::NCScalarField(const SquareMesh& mesh)
    : mesh_(&mesh), coeffs_(static_cast<std::size_t>(mesh.n_interior_vertices()), 0.0) {}

NCScalarField::NCScalarField(const SquareMesh& mesh, std::vector<double> coeffs)
    : mesh_(&mesh), coeffs_(std::move(coeffs)) {
  require_size(coeffs_.size(), mesh.n_interior_vertices(), "coefficient vector");
}

MidpointValues NCScalarField::midpoints(int q) const {
  const auto c = mesh_->corner_vertices(q);
  const double lb = corner_coeff(coeffs_, c[LeftBottom]);
  const double rb = corner_coeff(coeffs_, c[RightBottom]);
  const double rt = corner_coeff(coeffs_, c[RightTop]);
  const double lt = corner_coeff(coeffs_, c[LeftTop]);
  return {lb + lt, rb + rt, lb + rb, lt + rt};
}

double NCScalarField::midpoint_value(const EdgeRef& edge) const {
  double value = 0.0;
  for (const auto& p : edge.endpoints()) {
    value += corner_coeff(coeffs_, mesh_->interior_vertex_id(p.i, p.j));
  }
  return value;
}

LocalLinear NCScalarField::local_linear(int q) const {
  const auto c = mesh_->corner_vertices(q);
  const double lb = corner_coeff(coeffs_, c[LeftBottom]);
  const double rb = corner_coeff(coeffs_, c[RightBottom]);
  const double rt = corner_coeff(coeffs_, c[RightTop]);
  const double lt = corner_coeff(coeffs_, c[LeftTop]);
  const double h = mesh_->h();
  return {0.5 * (lb + rb + rt + lt), (rb + rt - lb - lt) / h, (lt + rt - lb - rb) / h};
}

NCScalarField& NCScalarField::operator+=(const NCScalarField& other) {
  require_same_mesh(*mesh_, *other.mesh_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

NCScalarField& NCScalarField::operator*=(double s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// NCVectorField / PiecewiseConstField

NCVectorField::NCVectorField(NCScalarField x_component, NCScalarField y_component)
    : x(std::move(x_component)), y(std::move(y_component)) {
  require_same_mesh(x.mesh(), y.mesh());
}

NCVectorField& NCVectorField::operator+=(const NCVectorField& other) {
  x += other.x;
  y += other.y;
  return *this;
}

NCVectorField& NCVectorField::operator*=(double s) noexcept {
  x *= s;
  y *= s;
  return *this;
}

PiecewiseConstField::PiecewiseConstField(const SquareMesh& mesh)
    : mesh_(&mesh), values_(static_cast<std::size_t>(mesh.n_squares()), 0.0) {}

PiecewiseConstField::PiecewiseConstField(const SquareMesh& mesh, std::vector<double> values)
    : mesh_(&mesh), values_(std::move(values)) {
  require_size(values_.size(), mesh.n_squares(), "piecewise-constant field");
}

// ---------------------------------------------------------------------------
// Operations

NCScalarField psi_vertex(const SquareMesh& mesh, int v) {
  if (v < 0 || v >= mesh.n_interior_vertices()) {
    throw InvalidArgument("vertex id " + std::to_string(v) + " is not an interior vertex");
  }
  NCScalarField field(mesh);
  field.coeffs()[v] = 1.0;
  return field;
}

LocalLinear hat_on_vertex_square(int position, double h) noexcept {
  // Signs of (beta, gamma) for Q1..Q4; alpha is 1/2 since two of the four
  // midpoints carry the value 1.
  constexpr std::array<std::array<double, 2>, 4> signs{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  return {0.5, signs[position][0] / h, signs[position][1] / h};
}

NCScalarField interpolate(const SquareMesh& mesh, const ScalarFunction& v) {
  NCScalarField field(mesh);
  auto coeffs = field.coeffs();
  for (int k = 0; k < mesh.n_interior_vertices(); ++k) {
    const auto p = mesh.vertex_point(mesh.interior_vertex(k));
    coeffs[k] = 0.5 * v(p.x, p.y);
  }
  return field;
}

NCVectorField interpolate(const SquareMesh& mesh, const VectorFunction& v) {
  NCVectorField field(mesh);
  auto cx = field.x.coeffs();
  auto cy = field.y.coeffs();
  for (int k = 0; k < mesh.n_interior_vertices(); ++k) {
    const auto p = mesh.vertex_point(mesh.interior_vertex(k));
    const auto value = v(p.x, p.y);
    cx[k] = 0.5 * value[0];
    cy[k] = 0.5 * value[1];
  }
  return field;
}

LocalLinear local_linear(const NCScalarField& field, int q) { return field.local_linear(q); }

PiecewiseConstField div_h(const NCVectorField& u) {
  const auto& mesh = u.mesh();
  PiecewiseConstField out(mesh);
  for (int q = 0; q < mesh.n_squares(); ++q) {
    out[q] = u.x.local_linear(q).beta + u.y.local_linear(q).gamma;
  }
  return out;
}

PiecewiseConstField curl_h(const NCVectorField& u) {
  const auto& mesh = u.mesh();
  PiecewiseConstField out(mesh);
  for (int q = 0; q < mesh.n_squares(); ++q) {
    out[q] = u.y.local_linear(q).beta - u.x.local_linear(q).gamma;
  }
  return out;
}

double h1_inner(const NCScalarField& a, const NCScalarField& b) {
  require_same_mesh(a.mesh(), b.mesh());
  const auto& mesh = a.mesh();
  const double area = mesh.h() * mesh.h();
  double sum = 0.0;
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const auto la = a.local_linear(q);
    const auto lb = b.local_linear(q);
    sum += area * (la.beta * lb.beta + la.gamma * lb.gamma);
  }
  return sum;
}

double h1_inner(const NCVectorField& a, const NCVectorField& b) {
  return h1_inner(a.x, b.x) + h1_inner(a.y, b.y);
}

double seminorm_1h_squared(const NCScalarField& u) { return h1_inner(u, u); }
double seminorm_1h_squared(const NCVectorField& u) { return h1_inner(u, u); }
double seminorm_1h(const NCScalarField& u) { return std::sqrt(seminorm_1h_squared(u)); }
double seminorm_1h(const NCVectorField& u) { return std::sqrt(seminorm_1h_squared(u)); }

double l2_inner(const PiecewiseConstField& a, const PiecewiseConstField& b) {
  require_same_mesh(a.mesh(), b.mesh());
  const double area = a.mesh().h() * a.mesh().h();
  double sum = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t q = 0; q < va.size(); ++q) sum += va[q] * vb[q];
  return area * sum;
}

double l2_norm(const PiecewiseConstField& w) { return std::sqrt(l2_inner(w, w)); }

void write_field(std::ostream& out, const PiecewiseConstField& w) {
  const auto& mesh = w.mesh();
  char buffer[96];
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const auto c = mesh.square_cell(q);
    std::snprintf(buffer, sizeof buffer, "%d %d %.17g\n", c.i, c.j, w[q]);
    out << buffer;
  }
}

void write_field(std::ostream& out, const NCVectorField& u) {
  const auto& mesh = u.mesh();
  char buffer[256];
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const auto c = mesh.square_cell(q);
    const auto lx = u.x.local_linear(q);
    const auto ly = u.y.local_linear(q);
    std::snprintf(buffer, sizeof buffer, "%d %d %.17g %.17g %.17g %.17g %.17g %.17g\n", c.i, c.j,
                  lx.alpha, lx.beta, lx.gamma, ly.alpha, ly.beta, ly.gamma);
    out << buffer;
  }
}

}  // namespace p1nc
