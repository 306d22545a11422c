#pragma once

#include "wg/assembly.hpp"
#include "wg/cases.hpp"
#include "wg/solver.hpp"

#include <iosfwd>
#include <optional>

namespace wg {

/// Algorithm::reconstructed tests the right-hand side against R_h(v) (the
/// locking-free scheme); Algorithm::standard tests against v_0.
enum class Algorithm { reconstructed, standard };

Algorithm algorithm_from_string(const std::string& s);  // "new" | "standard"
std::string algorithm_to_string(Algorithm a);

struct RunOptions {
  int quad_rhs = 4;
  int quad_err = 6;
  double tol = 1e-12;
  long max_iter = -1;
  SolveMethod method = SolveMethod::automatic;
};

struct ReportRow {
  int level = 0;       // 1/h for 2D families, refinement level for 3D
  double h = 0.0;
  double energy_error = 0.0;
  double energy_order = std::numeric_limits<double>::quiet_NaN();
  double l2_error = 0.0;
  double l2_order = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceReport {
  std::string case_name;
  std::string algorithm;
  double mu = 0.0;
  double lambda = 0.0;
  std::vector<ReportRow> rows;
};

/// Energy norm of Q_h u - u_h per the discrete semi-norm.
template <int dim>
double energy_error(const SimplicialMesh<dim>& mesh, const ManufacturedCase<dim>& mc, double mu,
                    double lambda, const WGField<dim>& solution, int quad_degree = 6);

/// L2 norm of Q_0 u - u_0, integrated exactly cell by cell.
template <int dim>
double l2_error(const SimplicialMesh<dim>& mesh, const ManufacturedCase<dim>& mc, double mu,
                double lambda, const WGField<dim>& solution, int quad_degree = 6);

/// Assembles and solves one case on one mesh. Dirichlet data is the facet
/// projection Q_b of the exact solution (zero whenever u vanishes on the
/// boundary). Throws on solver failure.
template <int dim>
std::pair<WGField<dim>, SolveReport> solve_case(const SimplicialMesh<dim>& mesh,
                                                const ManufacturedCase<dim>& mc, Algorithm algorithm,
                                                double mu, double lambda,
                                                const RunOptions& options = {});

/// Runs the case over the requested mesh levels and reports both error norms
/// with log2 orders between consecutive levels.
ConvergenceReport run_convergence(const std::string& case_name, Algorithm algorithm, double mu,
                                  double lambda, const std::vector<int>& levels,
                                  const RunOptions& options = {});

/// One report per (algorithm, lambda) pair, in declaration order.
std::vector<ConvergenceReport> run_locking_sweep(const std::string& case_name,
                                                 const std::vector<Algorithm>& algorithms, double mu,
                                                 const std::vector<double>& lambdas,
                                                 const std::vector<int>& levels,
                                                 const RunOptions& options = {});

enum class TableFormat { markdown, csv };

void emit_table(const ConvergenceReport& report, TableFormat format, std::ostream& out);
void emit_table(const std::vector<ConvergenceReport>& reports, TableFormat format, std::ostream& out);
void emit_table_to_file(const std::vector<ConvergenceReport>& reports, TableFormat format,
                        const std::string& path);

/// Parses a CSV produced by emit_table back into reports (full-precision columns).
std::vector<ConvergenceReport> parse_table_csv(std::istream& in);

}  // namespace wg
