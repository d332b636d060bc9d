#pragma once

#include <span>
#include <string>
#include <vector>

#include "p1nc/common.hpp"
#include "p1nc/divfree.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"
#include "p1nc/sparse_matrix.hpp"

namespace p1nc {

enum class SolverMethod {
  ConjugateGradient,  // Jacobi-preconditioned
  DenseCholesky,      // dimensions up to kMaxDenseDimension
  SparseCholesky,     // simplicial LL^T with AMD ordering
};

const char* to_string(SolverMethod method) noexcept;
/// Accepts "cg", "dense" and "sparse".
SolverMethod parse_solver_method(const std::string& name);

inline constexpr int kMaxDenseDimension = 5000;

struct SolverConfig {
  SolverMethod method = SolverMethod::ConjugateGradient;
  double tolerance = 1e-10;  // relative residual ||Kx - b|| / ||b|| for CG
  int max_iterations = 1000000;
  bool concurrent_colors = false;  // solve the red and black blocks on two threads

  void validate() const;
};

struct SolveReport {
  SolverMethod method = SolverMethod::ConjugateGradient;
  int dimension = 0;
  int iterations = 0;
  double relative_residual = 0.0;
};

enum class SolverErrorKind { NotConverged, NotPositiveDefinite, Singular, TooLarge };

class SolverError : public Error {
 public:
  SolverError(SolverErrorKind kind, const std::string& message, SolveReport report);

  SolverErrorKind kind() const noexcept { return kind_; }
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolverErrorKind kind_;
  SolveReport report_;
};

/// Solves K x = b for one color block. Returns the zero vector when b = 0 or
/// the block is empty.
std::vector<double> solve_color(const SparseSpdMatrix& K, std::span<const double> b,
                                const SolverConfig& config, SolveReport* report = nullptr);

struct VelocitySolution {
  DivFreeCoefficients coefficients;
  NCVectorField velocity;
  SolveReport red;
  SolveReport black;
};

/// Divergence-free velocity: assembles and solves the red and black blocks
/// independently, then expands the coefficients.
VelocitySolution solve_velocity(const SquareMesh& mesh, const VectorFunction& f,
                                const SolverConfig& config = {}, int points_per_direction = 3);
VelocitySolution solve_velocity(const LoadMoments& moments, const SolverConfig& config = {});

}  // namespace p1nc
