#include "p1nc/convergence.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "p1nc/divfree.hpp"
#include "p1nc/pressure.hpp"

namespace p1nc {

DimensionReport dimension_report(const SquareMesh& mesh) {
  const ColorBlocks blocks(mesh);
  return {blocks.size(SquareColor::Red), blocks.size(SquareColor::Black),
          2LL * mesh.n_interior_vertices() + mesh.n_squares() - 2};
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& levels,
                                              const StudyOptions& options,
                                              const ManufacturedCase& exact) {
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (levels[k] <= levels[k - 1]) throw InvalidArgument("levels must be strictly increasing");
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(levels.size());
  for (const int n : levels) {
    const auto mesh = SquareMesh::rectangular(n, n, 1.0 / n);
    ConvergenceRow row;
    row.level = n;
    row.dims = dimension_report(mesh);

    const auto start = std::chrono::steady_clock::now();
    const LoadMoments moments(mesh, exact.forcing, options.load_points);
    const auto velocity = solve_velocity(moments, options.solver);
    const auto pressure = recover_pressure(velocity.velocity, moments);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    row.errors = error_norms(velocity.velocity, pressure.pressure, exact, options.error_points);
    if (!rows.empty()) {
      const auto& prev = rows.back().errors;
      const double ratio = std::log2(static_cast<double>(n) / rows.back().level);
      row.order_u_l2 = std::log2(prev.velocity_l2 / row.errors.velocity_l2) / ratio;
      row.order_u_h1 = std::log2(prev.velocity_h1 / row.errors.velocity_h1) / ratio;
      row.order_p_l2 = std::log2(prev.pressure_l2 / row.errors.pressure_l2) / ratio;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows,
               bool include_timing) {
  out << "mesh,dim_red,dim_black,dim_full,err_u_l2,ord_u_l2,err_u_h1,ord_u_h1,err_p_l2,"
         "ord_p_l2,seconds\n";
  auto order = [](const std::optional<double>& value) {
    if (!value) return std::string();
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4f", *value);
    return std::string(buffer);
  };
  for (const auto& row : rows) {
    char seconds[32] = "";
    if (include_timing) std::snprintf(seconds, sizeof seconds, "%.3f", row.seconds);
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, "%dx%d,%d,%d,%lld,%.4E,%s,%.4E,%s,%.4E,%s,%s\n",
                  row.level, row.level, row.dims.red, row.dims.black, row.dims.full,
                  row.errors.velocity_l2, order(row.order_u_l2).c_str(), row.errors.velocity_h1,
                  order(row.order_u_h1).c_str(), row.errors.pressure_l2,
                  order(row.order_p_l2).c_str(), seconds);
    out << buffer;
  }
}

}  // namespace p1nc
