#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "p1nc/manufactured.hpp"
#include "p1nc/mesh.hpp"
#include "p1nc/solver.hpp"

namespace p1nc {

/// Sizes of the two divergence-free blocks and of the full mixed space
/// (two velocity components per interior vertex plus pressures with two
/// mean constraints).
struct DimensionReport {
  int red = 0;
  int black = 0;
  long long full = 0;
};

DimensionReport dimension_report(const SquareMesh& mesh);

struct ConvergenceRow {
  int level = 0;  // squares per side
  DimensionReport dims;
  ErrorNorms errors;
  std::optional<double> order_u_l2;
  std::optional<double> order_u_h1;
  std::optional<double> order_p_l2;
  double seconds = 0.0;  // solve + pressure recovery wall time
};

struct StudyOptions {
  SolverConfig solver;
  int load_points = 3;   // Gauss points per direction for the load and recovery
  int error_points = 4;  // Gauss points per direction for the error norms
};

/// Solves the case on the unit square at each level (n x n squares,
/// h = 1/n) and fills observed orders log2(e_coarse / e_fine) from the
/// previous row. Levels must be strictly increasing.
std::vector<ConvergenceRow> convergence_study(const std::vector<int>& levels,
                                              const StudyOptions& options = {},
                                              const ManufacturedCase& exact = benchmark_case());

/// Header "mesh,dim_red,dim_black,dim_full,err_u_l2,ord_u_l2,err_u_h1,ord_u_h1,
/// err_p_l2,ord_p_l2,seconds"; errors as %.4E, orders as %.4f. With
/// include_timing off the seconds column is left empty so the output is
/// reproducible byte for byte.
void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows,
               bool include_timing = true);

}  // namespace p1nc
