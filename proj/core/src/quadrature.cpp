#include "p1nc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "p1nc/common.hpp"

namespace p1nc {

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guess; the
// derivative comes from the standard three-term recurrence.
GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn_1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn_1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      // Recompute the derivative at the converged root.
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn_1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn_1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[k] = -x;
    rule.points[n - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("quadrature order must be at least 1, got " + std::to_string(n));
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

SquareRule square_rule(int points_per_direction, double h) {
  const auto& rule = gauss_legendre(points_per_direction);
  const double half = 0.5 * h;
  SquareRule out;
  const int n = rule.size();
  out.xhat.reserve(n * n);
  out.yhat.reserve(n * n);
  out.weights.reserve(n * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      out.xhat.push_back(half * rule.points[a]);
      out.yhat.push_back(half * rule.points[b]);
      out.weights.push_back(half * half * rule.weights[a] * rule.weights[b]);
    }
  }
  return out;
}

}  // namespace p1nc
