#pragma once

// Desk-scale reference computations used to cross-check the main pipeline.
// Everything here is dense and meant for meshes up to a few thousand
// unknowns.

#include <Eigen/Dense>

#include "p1nc/common.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/nc_space.hpp"
#include "p1nc/sparse_matrix.hpp"

namespace p1nc::oracle {

/// n x n composite midpoint rule for g over square q.
double brute_quadrature(const ScalarFunction& g, const SquareMesh& mesh, int q, int n);

/// Gram matrix (grad Psi^Q, grad Psi^Q') between the interior squares of
/// `row_color` and `col_color`, by brute-force quadrature of the gradient
/// products square by square.
Eigen::MatrixXd gram_by_quadrature(const SquareMesh& mesh, SquareColor row_color,
                                   SquareColor col_color, int n = 2);

/// Same Gram matrix from the curl form (curl_h Psi^Q, curl_h Psi^Q').
Eigen::MatrixXd gram_curl_form(const SquareMesh& mesh, SquareColor color);

Eigen::MatrixXd to_dense(const SparseSpdMatrix& matrix);

/// Matrix of div_h from the hat basis {psi^V[1,0]} then {psi^V[0,1]} to
/// values per square: n_squares x (2 * n_interior_vertices).
Eigen::MatrixXd divergence_operator(const SquareMesh& mesh);

/// Rank by full-pivot LU with a relative threshold.
int numerical_rank(const Eigen::MatrixXd& matrix, double threshold = 1e-10);

double smallest_eigenvalue(const SparseSpdMatrix& matrix);

inline constexpr int kMaxMixedInteriorVertices = 1500;

struct MixedSolution {
  NCVectorField velocity;
  PiecewiseConstField pressure;
  double rcond = 0.0;  // reciprocal condition estimate of the saddle-point matrix
};

/// Full discrete Stokes system in the hat basis, pressure constrained to zero
/// red and black means by two scalar multipliers; dense LU with partial
/// pivoting. Throws SolverError(TooLarge) above kMaxMixedInteriorVertices and
/// SolverError(Singular) when the factorization is numerically singular.
MixedSolution solve_mixed(const SquareMesh& mesh, const VectorFunction& f,
                          int points_per_direction = 3);

}  // namespace p1nc::oracle
