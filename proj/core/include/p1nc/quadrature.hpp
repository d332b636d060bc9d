#pragma once

#include <vector>

namespace p1nc {

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// 2n - 1.
struct GaussLegendreRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

/// Throws InvalidArgument for n < 1. Rules are cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Tensor rule on a square of side h centred at the origin: points are
/// center-relative offsets (xhat, yhat), weights already scaled by (h/2)^2.
struct SquareRule {
  std::vector<double> xhat;
  std::vector<double> yhat;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(weights.size()); }
};

SquareRule square_rule(int points_per_direction, double h);

}  // namespace p1nc
