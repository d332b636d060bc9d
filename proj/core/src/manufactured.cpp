#include "p1nc/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "p1nc/quadrature.hpp"

namespace p1nc {

Profile sine_times_polynomial(double omega, std::vector<double> coefficients) {
  return [omega, c = std::move(coefficients)](double t) {
    // Polynomial and its first three derivatives by Horner.
    std::array<double, 4> poly{};
    const int degree = static_cast<int>(c.size()) - 1;
    for (int k = degree; k >= 0; --k) {
      poly[3] = poly[3] * t + 3.0 * poly[2];
      poly[2] = poly[2] * t + 2.0 * poly[1];
      poly[1] = poly[1] * t + poly[0];
      poly[0] = poly[0] * t + c[k];
    }
    const double s = std::sin(omega * t);
    const double co = std::cos(omega * t);
    const std::array<double, 4> sine{s, omega * co, -omega * omega * s,
                                     -omega * omega * omega * co};
    // Leibniz rule.
    return std::array<double, 4>{
        sine[0] * poly[0],
        sine[1] * poly[0] + sine[0] * poly[1],
        sine[2] * poly[0] + 2.0 * sine[1] * poly[1] + sine[0] * poly[2],
        sine[3] * poly[0] + 3.0 * sine[2] * poly[1] + 3.0 * sine[1] * poly[2] +
            sine[0] * poly[3]};
  };
}

VectorFunction forcing_from(const SeparableStream& stream, const PressureFunction& pressure) {
  return [stream, pressure](double x, double y) {
    const auto X = stream.x_profile(x);
    const auto Y = stream.y_profile(y);
    const auto grad_p = pressure.gradient(x, y);
    // u1 = X Y', u2 = -X' Y.
    const double lap_u1 = X[2] * Y[1] + X[0] * Y[3];
    const double lap_u2 = -(X[3] * Y[0] + X[1] * Y[2]);
    return std::array<double, 2>{-lap_u1 + grad_p[0], -lap_u2 + grad_p[1]};
  };
}

ManufacturedCase make_case(const SeparableStream& stream, const PressureFunction& pressure) {
  ManufacturedCase out;
  out.velocity = [stream](double x, double y) {
    const auto X = stream.x_profile(x);
    const auto Y = stream.y_profile(y);
    return std::array<double, 2>{X[0] * Y[1], -X[1] * Y[0]};
  };
  out.velocity_gradient = [stream](double x, double y) {
    const auto X = stream.x_profile(x);
    const auto Y = stream.y_profile(y);
    return std::array<double, 4>{X[1] * Y[1], X[0] * Y[2], -X[2] * Y[0], -X[1] * Y[1]};
  };
  out.pressure = pressure.value;
  out.forcing = forcing_from(stream, pressure);
  return out;
}

SeparableStream benchmark_stream() {
  using std::numbers::pi;
  return {sine_times_polynomial(2.0 * pi, {0.0, -1.0, 0.0, 1.0}),
          sine_times_polynomial(3.0 * pi, {0.0, -1.0, 1.0})};
}

PressureFunction benchmark_pressure() {
  using std::numbers::pi;
  return {[](double x, double y) { return std::sin(4.0 * pi * x) * std::exp(pi * y); },
          [](double x, double y) {
            const double e = std::exp(pi * y);
            return std::array<double, 2>{4.0 * pi * std::cos(4.0 * pi * x) * e,
                                         pi * std::sin(4.0 * pi * x) * e};
          }};
}

ManufacturedCase benchmark_case() { return make_case(benchmark_stream(), benchmark_pressure()); }

ManufacturedCase zero_case() {
  const Profile zero = [](double) { return std::array<double, 4>{}; };
  const PressureFunction p{[](double, double) { return 0.0; },
                           [](double, double) { return std::array<double, 2>{}; }};
  return make_case({zero, zero}, p);
}

ErrorNorms error_norms(const NCVectorField& u_h, const PiecewiseConstField& p_h,
                       const ManufacturedCase& exact, int points_per_direction) {
  const auto& mesh = u_h.mesh();
  require_same_mesh(mesh, p_h.mesh());
  const auto rule = square_rule(points_per_direction, mesh.h());
  double eu = 0.0;
  double eg = 0.0;
  double ep = 0.0;
  for (int q = 0; q < mesh.n_squares(); ++q) {
    const auto center = mesh.square_center(q);
    const auto lx = u_h.x.local_linear(q);
    const auto ly = u_h.y.local_linear(q);
    for (int k = 0; k < rule.size(); ++k) {
      const double xh = rule.xhat[k];
      const double yh = rule.yhat[k];
      const double x = center.x + xh;
      const double y = center.y + yh;
      const double w = rule.weights[k];
      const auto u = exact.velocity(x, y);
      const auto g = exact.velocity_gradient(x, y);
      const double du1 = u[0] - lx(xh, yh);
      const double du2 = u[1] - ly(xh, yh);
      eu += w * (du1 * du1 + du2 * du2);
      const double g0 = g[0] - lx.beta;
      const double g1 = g[1] - lx.gamma;
      const double g2 = g[2] - ly.beta;
      const double g3 = g[3] - ly.gamma;
      eg += w * (g0 * g0 + g1 * g1 + g2 * g2 + g3 * g3);
      const double dp = exact.pressure(x, y) - p_h[q];
      ep += w * dp * dp;
    }
  }
  return {std::sqrt(eu), std::sqrt(eg), std::sqrt(ep)};
}

}  // namespace p1nc
