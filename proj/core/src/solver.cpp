#include "p1nc/solver.hpp"

#include <cmath>
#include <cstdio>
#include <future>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace p1nc {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

double relative_residual(const SparseSpdMatrix& K, std::span<const double> x,
                         std::span<const double> b) {
  auto r = K.multiply(x);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return norm(r) / norm(b);
}

std::vector<double> conjugate_gradient(const SparseSpdMatrix& K, std::span<const double> b,
                                       const SolverConfig& config, SolveReport& report) {
  const std::size_t n = b.size();
  const double b_norm = norm(b);
  const auto diag = K.diagonal();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(diag[k] > 0.0)) {
      throw SolverError(SolverErrorKind::NotPositiveDefinite,
                        "nonpositive diagonal entry in row " + std::to_string(k), report);
    }
  }
  std::vector<double> x(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n);
  std::vector<double> p(n);
  std::vector<double> Kp(n);

  int iterations = 0;
  // The recursive residual can drift from the true one; restart from the
  // current iterate until the true residual meets the tolerance.
  while (true) {
    for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
    p = z;
    double rz = dot(r, z);
    double r_norm = norm(r);
    while (r_norm > config.tolerance * b_norm && iterations < config.max_iterations) {
      K.multiply(p, Kp);
      const double pKp = dot(p, Kp);
      if (!(pKp > 0.0)) {
        report.iterations = iterations;
        report.relative_residual = r_norm / b_norm;
        throw SolverError(SolverErrorKind::NotPositiveDefinite,
                          "conjugate gradient met a direction with p^T K p <= 0", report);
      }
      const double alpha = rz / pKp;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += alpha * p[k];
        r[k] -= alpha * Kp[k];
      }
      for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
      r_norm = norm(r);
      ++iterations;
    }
    K.multiply(x, r);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
    report.iterations = iterations;
    report.relative_residual = norm(r) / b_norm;
    if (report.relative_residual <= config.tolerance) return x;
    if (iterations >= config.max_iterations) {
      char message[128];
      std::snprintf(message, sizeof message,
                    "conjugate gradient did not reach relative residual %.3g within %d iterations",
                    config.tolerance, config.max_iterations);
      throw SolverError(SolverErrorKind::NotConverged, message, report);
    }
  }
}

std::vector<double> dense_cholesky(const SparseSpdMatrix& K, std::span<const double> b,
                                   SolveReport& report) {
  const int n = K.dim();
  if (n > kMaxDenseDimension) {
    throw SolverError(SolverErrorKind::TooLarge,
                      "dense Cholesky is limited to dimension " +
                          std::to_string(kMaxDenseDimension) + ", got " + std::to_string(n),
                      report);
  }
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const auto cols = K.row_cols(r);
    const auto vals = K.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) dense(r, cols[k]) = vals[k];
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(dense);
  if (llt.info() != Eigen::Success) {
    throw SolverError(SolverErrorKind::NotPositiveDefinite,
                      "dense Cholesky factorization failed: matrix is not positive definite",
                      report);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  const Eigen::VectorXd x = llt.solve(rhs);
  return {x.data(), x.data() + n};
}

std::vector<double> sparse_cholesky(const SparseSpdMatrix& K, std::span<const double> b,
                                    SolveReport& report) {
  const int n = K.dim();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(K.nonzeros());
  for (int r = 0; r < n; ++r) {
    const auto cols = K.row_cols(r);
    const auto vals = K.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) triplets.emplace_back(r, cols[k], vals[k]);
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
  if (llt.info() != Eigen::Success) {
    throw SolverError(SolverErrorKind::NotPositiveDefinite,
                      "sparse Cholesky factorization failed: matrix is not positive definite",
                      report);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  const Eigen::VectorXd x = llt.solve(rhs);
  return {x.data(), x.data() + n};
}

}  // namespace

const char* to_string(SolverMethod method) noexcept {
  switch (method) {
    case SolverMethod::ConjugateGradient: return "cg";
    case SolverMethod::DenseCholesky: return "dense";
    case SolverMethod::SparseCholesky: return "sparse";
  }
  return "unknown";
}

SolverMethod parse_solver_method(const std::string& name) {
  if (name == "cg") return SolverMethod::ConjugateGradient;
  if (name == "dense") return SolverMethod::DenseCholesky;
  if (name == "sparse") return SolverMethod::SparseCholesky;
  throw InvalidArgument("unknown solver '" + name + "' (expected cg, dense or sparse)");
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
}

SolverError::SolverError(SolverErrorKind kind, const std::string& message, SolveReport report)
    : Error(message), kind_(kind), report_(report) {}

std::vector<double> solve_color(const SparseSpdMatrix& K, std::span<const double> b,
                                const SolverConfig& config, SolveReport* report) {
  config.validate();
  if (static_cast<int>(b.size()) != K.dim()) {
    throw InvalidArgument("right-hand side has " + std::to_string(b.size()) +
                          " entries for a matrix of dimension " + std::to_string(K.dim()));
  }
  SolveReport local;
  local.method = config.method;
  local.dimension = K.dim();
  std::vector<double> x;
  if (K.dim() == 0 || norm(b) == 0.0) {
    x.assign(b.size(), 0.0);
  } else {
    switch (config.method) {
      case SolverMethod::ConjugateGradient:
        x = conjugate_gradient(K, b, config, local);
        break;
      case SolverMethod::DenseCholesky:
        x = dense_cholesky(K, b, local);
        local.relative_residual = relative_residual(K, x, b);
        break;
      case SolverMethod::SparseCholesky:
        x = sparse_cholesky(K, b, local);
        local.relative_residual = relative_residual(K, x, b);
        break;
    }
  }
  if (report) *report = local;
  return x;
}

VelocitySolution solve_velocity(const SquareMesh& mesh, const VectorFunction& f,
                                const SolverConfig& config, int points_per_direction) {
  return solve_velocity(LoadMoments(mesh, f, points_per_direction), config);
}

VelocitySolution solve_velocity(const LoadMoments& moments, const SolverConfig& config) {
  config.validate();
  const auto& mesh = moments.mesh();
  auto solve_block = [&](SquareColor color, SolveReport& report) {
    const auto K = assemble_stiffness(mesh, color);
    const auto b = assemble_load(moments, color);
    return solve_color(K, b, config, &report);
  };

  SolveReport red_report;
  SolveReport black_report;
  std::vector<double> red;
  std::vector<double> black;
  if (config.concurrent_colors) {
    auto pending = std::async(std::launch::async,
                              [&] { return solve_block(SquareColor::Black, black_report); });
    red = solve_block(SquareColor::Red, red_report);
    black = pending.get();
  } else {
    red = solve_block(SquareColor::Red, red_report);
    black = solve_block(SquareColor::Black, black_report);
  }

  DivFreeCoefficients coeffs(mesh, std::move(red), std::move(black));
  auto velocity = expand(coeffs);
  return {std::move(coeffs), std::move(velocity), red_report, black_report};
}

}  // namespace p1nc
