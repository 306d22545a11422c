#pragma once

#include "wg/assembly.hpp"

#include <string>

namespace wg {

enum class SolveMethod { automatic, cg, cholesky };

enum class SolveStatus {
  converged,       // relative residual at or below the requested tolerance
  stalled,         // residual stagnated at the double-precision floor
  max_iterations,  // no convergence within the iteration budget
  indefinite       // breakdown: the matrix is not SPD (assembly bug)
};

struct SolveReport {
  SolveStatus status = SolveStatus::converged;
  std::string method;
  long iterations = 0;  // 0 for the direct path apart from refinement steps
  double rel_residual = 0.0;
  double seconds = 0.0;

  // A stalled solve still returns the best iterate; its residual is reported.
  bool ok() const { return status == SolveStatus::converged || status == SolveStatus::stalled; }
};

struct SolveOptions {
  double tol = 1e-12;   // relative residual |Ax-b| / |b|
  long max_iter = -1;   // default 20 * n_free
  SolveMethod method = SolveMethod::automatic;
};

/// Solves the SPD system A x = b. The automatic policy picks sparse Cholesky
/// for systems small enough to factor cheaply and Jacobi-preconditioned CG
/// otherwise; `precond_diag` overrides the CG preconditioner diagonal (the
/// assembled systems pass the diagonal of their lambda-independent part,
/// which keeps the penalty eigenvalue cluster intact for large lambda).
std::pair<Eigen::VectorXd, SolveReport> solve_spd(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                                                  const SolveOptions& options = {},
                                                  const Eigen::VectorXd* precond_diag = nullptr);

template <int dim>
std::pair<Eigen::VectorXd, SolveReport> solve_spd(const SparseSystem<dim>& system,
                                                  const SolveOptions& options = {}) {
  SolveOptions opt = options;
  if (opt.method == SolveMethod::automatic) {
    const long direct_limit = (dim == 2) ? 1'500'000 : 600'000;
    opt.method = (system.matrix.rows() <= direct_limit) ? SolveMethod::cholesky : SolveMethod::cg;
  }
  return solve_spd(system.matrix, system.rhs, opt, &system.jacobi_diag);
}

}  // namespace wg
