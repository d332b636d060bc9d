#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "p1nc/p1nc.hpp"
#include "self_check.hpp"

namespace {

using namespace p1nc;

constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;

struct SolveOptions {
  int nx = 0;
  int ny = 0;
  std::string mask;
  double h = 0.0;
  std::string solver = "cg";
  double tol = 1e-10;
  int max_iters = 1000000;
  int quad = 3;
  bool concurrent = false;
  std::string dump_dir;
  bool oracle = false;
};

struct ConvergeOptions {
  std::vector<int> levels{8, 16, 32, 64, 128, 256};
  std::string out = "-";
  std::string solver = "cg";
  double tol = 1e-10;
  int max_iters = 1000000;
  int quad = 3;
  bool no_timing = false;
};

const char* clause_label(MeshErrorKind kind) {
  switch (kind) {
    case MeshErrorKind::SquareWithFourBoundaryVertices: return " (admissibility clause 1)";
    case MeshErrorKind::InteriorEdgeWithTwoBoundaryVertices: return " (admissibility clause 2)";
    case MeshErrorKind::SquareWithOppositeBoundaryVertices: return " (admissibility clause 3)";
    default: return "";
  }
}

SolverConfig solver_config(const std::string& name, double tol, int max_iters, bool concurrent) {
  SolverConfig config;
  config.method = parse_solver_method(name);
  config.tolerance = tol;
  config.max_iterations = max_iters;
  config.concurrent_colors = concurrent;
  config.validate();
  return config;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  writer(out);
}

int run_solve(const SolveOptions& o) {
  const auto config = solver_config(o.solver, o.tol, o.max_iters, o.concurrent);
  if (o.quad < 1) throw InvalidArgument("--quad must be at least 1");

  Mask mask;
  if (!o.mask.empty()) {
    mask = Mask::read_file(o.mask);
    if ((o.nx && o.nx != mask.nx()) || (o.ny && o.ny != mask.ny())) {
      throw InvalidArgument("--nx/--ny disagree with the mask file (" +
                            std::to_string(mask.nx()) + " x " + std::to_string(mask.ny()) + ")");
    }
  } else {
    if (o.nx < 1 || o.ny < 1) {
      throw MeshError(MeshErrorKind::DimensionTooSmall, "--nx and --ny must be at least 1");
    }
    mask = Mask(o.nx, o.ny, true);
  }
  const double h = o.h > 0.0 ? o.h : 1.0 / std::max(mask.nx(), mask.ny());
  const bool unit_square = o.mask.empty() && mask.nx() == mask.ny() && h * mask.nx() == 1.0;
  const auto mesh = SquareMesh::from_mask(std::move(mask), h);
  const auto exact = benchmark_case();
  const auto dims = dimension_report(mesh);
  std::printf("mesh            %d x %d, h = %.6g, %d squares, %d interior vertices\n", mesh.nx(),
              mesh.ny(), h, mesh.n_squares(), mesh.n_interior_vertices());
  std::printf("dimensions      red %d, black %d, full space %lld\n", dims.red, dims.black,
              dims.full);

  const auto start = std::chrono::steady_clock::now();
  const LoadMoments moments(mesh, exact.forcing, o.quad);
  const auto velocity = solve_velocity(moments, config);
  const auto pressure = recover_pressure(velocity.velocity, moments);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto* r : {&velocity.red, &velocity.black}) {
    std::printf("solve %-9s %s, dim %d, iterations %d, relative residual %.3e\n",
                r == &velocity.red ? "red" : "black", to_string(r->method), r->dimension,
                r->iterations, r->relative_residual);
  }
  double max_div = 0.0;
  const auto div = div_h(velocity.velocity);
  for (double d : div.values()) max_div = std::max(max_div, std::abs(d));
  std::printf("max |div_h u_h| %.3e\n", max_div);
  std::printf("time            %.3f s\n", seconds);
  if (unit_square) {
    const auto e = error_norms(velocity.velocity, pressure.pressure, exact);
    std::printf("errors          ||u-u_h||_0 %.4E, |u-u_h|_1,h %.4E, ||p-p_h||_0 %.4E\n",
                e.velocity_l2, e.velocity_h1, e.pressure_l2);
  } else {
    std::printf("errors          n/a (reference solution lives on the unit square)\n");
  }

  if (o.oracle) {
    const auto mixed = oracle::solve_mixed(mesh, exact.forcing, o.quad);
    NCVectorField du = mixed.velocity;
    du *= -1.0;
    du += velocity.velocity;
    PiecewiseConstField dp(mesh);
    for (int q = 0; q < mesh.n_squares(); ++q) dp[q] = pressure.pressure[q] - mixed.pressure[q];
    std::printf("oracle          |u_h-u_mixed|_1,h %.3e, ||p_h-p_mixed||_0 %.3e, rcond %.3e\n",
                seminorm_1h(du), l2_norm(dp), mixed.rcond);
  }

  if (!o.dump_dir.empty()) {
    const std::filesystem::path dir(o.dump_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "velocity.txt", [&](std::ostream& s) { write_field(s, velocity.velocity); });
    write_file(dir / "pressure.txt", [&](std::ostream& s) { write_field(s, pressure.pressure); });
    write_file(dir / "stiffness_red.txt", [&](std::ostream& s) {
      write_matrix(s, assemble_stiffness(mesh, SquareColor::Red));
    });
    write_file(dir / "stiffness_black.txt", [&](std::ostream& s) {
      write_matrix(s, assemble_stiffness(mesh, SquareColor::Black));
    });
    std::printf("fields written  %s\n", dir.string().c_str());
  }
  return 0;
}

int run_converge(const ConvergeOptions& o) {
  StudyOptions options;
  options.solver = solver_config(o.solver, o.tol, o.max_iters, false);
  options.load_points = o.quad;
  const auto rows = convergence_study(o.levels, options);
  if (o.out == "-") {
    write_csv(std::cout, rows, !o.no_timing);
  } else {
    write_file(o.out, [&](std::ostream& s) { write_csv(s, rows, !o.no_timing); });
    for (const auto& row : rows) {
      std::printf("%5dx%-5d  u_l2 %.4E  u_h1 %.4E  p_l2 %.4E  %.3f s\n", row.level, row.level,
                  row.errors.velocity_l2, row.errors.velocity_h1, row.errors.pressure_l2,
                  row.seconds);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergence-free P1-nonconforming Stokes solver on square meshes"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Solve the manufactured Stokes problem on one mesh");
  s->set_help_flag("--help", "Print this help message and exit");
  s->add_option("--nx", solve.nx, "Squares per row");
  s->add_option("--ny", solve.ny, "Squares per column");
  s->add_option("--mask", solve.mask, "Mask file ('1' present, '0' absent, top row first)")
      ->check(CLI::ExistingFile);
  s->add_option("--h", solve.h, "Square side (default 1/max(nx, ny))");
  s->add_option("--solver", solve.solver, "cg, dense or sparse")
      ->check(CLI::IsMember({"cg", "dense", "sparse"}))
      ->capture_default_str();
  s->add_option("--tol", solve.tol, "Relative residual tolerance for cg")->capture_default_str();
  s->add_option("--max-iters", solve.max_iters, "Iteration cap for cg")->capture_default_str();
  s->add_option("--quad", solve.quad, "Gauss points per direction for the load")
      ->capture_default_str();
  s->add_flag("--concurrent", solve.concurrent, "Solve the two color blocks on two threads");
  s->add_option("--dump-fields", solve.dump_dir, "Directory for field and matrix dumps");
  s->add_flag("--oracle", solve.oracle, "Cross-check against the dense mixed solve");

  ConvergeOptions converge;
  auto* c = app.add_subcommand("converge", "Run a convergence study on the unit square");
  c->add_option("--levels", converge.levels, "Comma-separated squares per side")
      ->delimiter(',')
      ->capture_default_str();
  c->add_option("--out", converge.out, "CSV output file, '-' for stdout")->capture_default_str();
  c->add_option("--solver", converge.solver, "cg, dense or sparse")
      ->check(CLI::IsMember({"cg", "dense", "sparse"}))
      ->capture_default_str();
  c->add_option("--tol", converge.tol, "Relative residual tolerance for cg")
      ->capture_default_str();
  c->add_option("--max-iters", converge.max_iters, "Iteration cap for cg")
      ->capture_default_str();
  c->add_option("--quad", converge.quad, "Gauss points per direction for the load")
      ->capture_default_str();
  c->add_flag("--no-timing", converge.no_timing, "Leave the seconds column empty");

  auto* k = app.add_subcommand("check", "Run the invariant suite on small meshes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (c->parsed()) return run_converge(converge);
    if (k->parsed()) return tools::run_self_check(std::cout) ? 0 : 1;
  } catch (const MeshError& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "mesh error%s: %s\n", clause_label(e.kind()), e.what());
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitValidation;
  } catch (const SolverError& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "solver failure: %s (iterations %d, relative residual %.3e)\n",
                 e.what(), e.report().iterations, e.report().relative_residual);
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fflush(stdout);
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return 0;
}
