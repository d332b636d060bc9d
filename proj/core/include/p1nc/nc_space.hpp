#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "p1nc/common.hpp"
#include "p1nc/mesh.hpp"

namespace p1nc {

/// Restriction of a nonconforming function to one square:
/// alpha + beta * xhat + gamma * yhat in center-relative coordinates.
struct LocalLinear {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double xhat, double yhat) const noexcept {
    return alpha + beta * xhat + gamma * yhat;
  }
};

/// Values at the four edge midpoints of one square.
struct MidpointValues {
  double left = 0.0;
  double right = 0.0;
  double bottom = 0.0;
  double top = 0.0;
};

/// Fit from midpoint values. Exact when left + right == bottom + top.
LocalLinear local_linear_from_midpoints(const MidpointValues& m, double h) noexcept;

/// Scalar P1-nonconforming function with zero boundary midpoint values,
/// stored by its coefficients in the vertex-hat basis (one per interior
/// vertex). The midpoint value on an edge is the sum of the coefficients of
/// its interior endpoints.
///
/// Fields keep a pointer to their mesh; the mesh must outlive them.
class NCScalarField {
 public:
  explicit NCScalarField(const SquareMesh& mesh);
  NCScalarField(const SquareMesh& mesh, std::vector<double> coeffs);

  const SquareMesh& mesh() const noexcept { return *mesh_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  double coeff(int v) const { return coeffs_.at(v); }

  MidpointValues midpoints(int q) const;
  /// Value at the midpoint of a mesh edge.
  double midpoint_value(const EdgeRef& edge) const;
  LocalLinear local_linear(int q) const;

  NCScalarField& operator+=(const NCScalarField& other);
  NCScalarField& operator*=(double s) noexcept;

 private:
  const SquareMesh* mesh_;
  std::vector<double> coeffs_;
};

/// Vector field with both components on the same mesh.
struct NCVectorField {
  NCScalarField x;
  NCScalarField y;

  explicit NCVectorField(const SquareMesh& mesh) : x(mesh), y(mesh) {}
  NCVectorField(NCScalarField x_component, NCScalarField y_component);

  const SquareMesh& mesh() const noexcept { return x.mesh(); }
  NCVectorField& operator+=(const NCVectorField& other);
  NCVectorField& operator*=(double s) noexcept;
};

/// One value per square.
class PiecewiseConstField {
 public:
  explicit PiecewiseConstField(const SquareMesh& mesh);
  PiecewiseConstField(const SquareMesh& mesh, std::vector<double> values);

  const SquareMesh& mesh() const noexcept { return *mesh_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](int q) const { return values_[q]; }
  double& operator[](int q) { return values_[q]; }

 private:
  const SquareMesh* mesh_;
  std::vector<double> values_;
};

/// Hat function of interior vertex v: midpoint value 1 on every edge
/// meeting v. Throws InvalidArgument for a vertex id out of range.
NCScalarField psi_vertex(const SquareMesh& mesh, int v);

/// Local linear part of psi_vertex on the square in slot `position`
/// (0..3 = Q1..Q4 counterclockwise from the square whose lower-left corner is
/// the vertex).
LocalLinear hat_on_vertex_square(int position, double h) noexcept;

/// coeff[V] = v(V) / 2, so the midpoint value on an edge with two interior
/// endpoints is the average of v there. No check that v vanishes on the
/// boundary.
NCScalarField interpolate(const SquareMesh& mesh, const ScalarFunction& v);
NCVectorField interpolate(const SquareMesh& mesh, const VectorFunction& v);

LocalLinear local_linear(const NCScalarField& field, int q);

PiecewiseConstField div_h(const NCVectorField& u);
PiecewiseConstField curl_h(const NCVectorField& u);

/// Broken gradient inner product sum_Q int_Q grad a . grad b.
double h1_inner(const NCScalarField& a, const NCScalarField& b);
double h1_inner(const NCVectorField& a, const NCVectorField& b);
double seminorm_1h_squared(const NCScalarField& u);
double seminorm_1h_squared(const NCVectorField& u);
double seminorm_1h(const NCScalarField& u);
double seminorm_1h(const NCVectorField& u);

double l2_inner(const PiecewiseConstField& a, const PiecewiseConstField& b);
double l2_norm(const PiecewiseConstField& w);

/// "i j value" per square.
void write_field(std::ostream& out, const PiecewiseConstField& w);
/// "i j alpha_x beta_x gamma_x alpha_y beta_y gamma_y" per square.
void write_field(std::ostream& out, const NCVectorField& u);

void require_same_mesh(const SquareMesh& a, const SquareMesh& b);

}  // namespace p1nc
