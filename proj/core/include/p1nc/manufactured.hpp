#pragma once

#include <array>
#include <functional>
#include <vector>

#include "p1nc/common.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"

namespace p1nc {

/// A 1D profile returning {value, first, second, third derivative}.
using Profile = std::function<std::array<double, 4>(double t)>;

/// sin(omega * t) * polynomial(t); coefficients in increasing degree.
Profile sine_times_polynomial(double omega, std::vector<double> coefficients);

/// Stream function phi(x, y) = X(x) * Y(y); the velocity is (phi_y, -phi_x).
struct SeparableStream {
  Profile x_profile;
  Profile y_profile;
};

struct PressureFunction {
  ScalarFunction value;
  VectorFunction gradient;
};

/// {du1/dx, du1/dy, du2/dx, du2/dy}.
using GradientFunction = std::function<std::array<double, 4>(double x, double y)>;

struct ManufacturedCase {
  VectorFunction velocity;
  ScalarFunction pressure;
  VectorFunction forcing;
  GradientFunction velocity_gradient;
};

/// f = -Laplace(u) + grad(p) for u = (phi_y, -phi_x), from the closed-form
/// derivatives of the stream function profiles (up to third order).
VectorFunction forcing_from(const SeparableStream& stream, const PressureFunction& pressure);

ManufacturedCase make_case(const SeparableStream& stream, const PressureFunction& pressure);

/// phi = sin(2 pi x) sin(3 pi y) (x^3 - x)(y^2 - y), p = sin(4 pi x) exp(pi y)
/// on the unit square.
ManufacturedCase benchmark_case();
SeparableStream benchmark_stream();
PressureFunction benchmark_pressure();

/// The trivial case u = 0, p = 0.
ManufacturedCase zero_case();

struct ErrorNorms {
  double velocity_l2 = 0.0;  // ||u - u_h||_0
  double velocity_h1 = 0.0;  // |u - u_h|_{1,h}, broken
  double pressure_l2 = 0.0;  // ||p - p_h||_0
};

/// Per-square tensor Gauss quadrature (default 4 points per direction).
ErrorNorms error_norms(const NCVectorField& u_h, const PiecewiseConstField& p_h,
                       const ManufacturedCase& exact, int points_per_direction = 4);

}  // namespace p1nc
