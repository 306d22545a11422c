#include "wg/solver.hpp"

#include <Eigen/SparseCholesky>

#include <chrono>

namespace wg {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::pair<Eigen::VectorXd, SolveReport> solve_cholesky(const SparseMat& A, const Eigen::VectorXd& b,
                                                       double tol) {
  const auto start = Clock::now();
  SolveReport report;
  report.method = "cholesky";

  Eigen::SimplicialLDLT<SparseMat> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 0.0) {
    report.status = SolveStatus::indefinite;
    report.rel_residual = std::numeric_limits<double>::infinity();
    report.seconds = elapsed(start);
    return {Eigen::VectorXd::Zero(A.rows()), report};
  }

  const double bnorm = b.norm();
  Eigen::VectorXd x = ldlt.solve(b);
  if (bnorm == 0.0) {
    report.seconds = elapsed(start);
    return {Eigen::VectorXd::Zero(A.rows()), report};
  }

  // Iterative refinement until the requested tolerance or the floor of
  // double precision, whichever comes first.
  Eigen::VectorXd r = b - A * x;
  double rel = r.norm() / bnorm;
  for (int pass = 0; pass < 3 && rel > tol; ++pass) {
    x += ldlt.solve(r);
    r = b - A * x;
    const double next = r.norm() / bnorm;
    ++report.iterations;
    if (next >= rel) break;
    rel = next;
  }
  report.rel_residual = rel;
  report.status = (rel <= tol) ? SolveStatus::converged : SolveStatus::stalled;
  report.seconds = elapsed(start);
  return {x, report};
}

std::pair<Eigen::VectorXd, SolveReport> solve_pcg(const SparseMat& A, const Eigen::VectorXd& b,
                                                  double tol, long max_iter,
                                                  const Eigen::VectorXd* precond_diag) {
  const auto start = Clock::now();
  SolveReport report;
  report.method = "pcg";
  const long n = A.rows();
  if (max_iter < 0) max_iter = 20 * n;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    report.seconds = elapsed(start);
    return {x, report};
  }

  Eigen::VectorXd diag = precond_diag ? *precond_diag : Eigen::VectorXd(A.diagonal());
  if (diag.minCoeff() <= 0.0) {
    report.status = SolveStatus::indefinite;
    report.rel_residual = std::numeric_limits<double>::infinity();
    report.seconds = elapsed(start);
    return {x, report};
  }
  const Eigen::VectorXd dinv = diag.cwiseInverse();

  // Row-major storage makes the matrix-vector product parallelizable.
  const Eigen::SparseMatrix<double, Eigen::RowMajor> Arm(A);

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = dinv.cwiseProduct(r);
  Eigen::VectorXd p = z;
  Eigen::VectorXd q(n);
  double rz = r.dot(z);

  Eigen::VectorXd best_x = x;
  double best_rel = 1.0;
  long best_iter = 0;
  constexpr long kStallWindow = 250;

  const double diag_max = Eigen::VectorXd(A.diagonal()).maxCoeff();

  for (long it = 1; it <= max_iter; ++it) {
    q.noalias() = Arm * p;
    const double pq = p.dot(q);
    if (pq <= 0.0) {
      // For strongly penalized systems p'Ap can round to a tiny negative
      // number at the double-precision floor; only a clearly negative value
      // signals indefiniteness.
      const bool genuine = pq < -1e-10 * diag_max * p.squaredNorm();
      report.status = genuine ? SolveStatus::indefinite : SolveStatus::stalled;
      report.iterations = it;
      report.rel_residual = (b - Arm * best_x).norm() / bnorm;
      report.seconds = elapsed(start);
      return {genuine ? x : best_x, report};
    }
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    const double rel = r.norm() / bnorm;
    if (rel < best_rel) {
      best_rel = rel;
      best_x = x;
      best_iter = it;
    }
    if (rel <= tol) {
      // Guard against drift of the recursive residual.
      const double true_rel = (b - Arm * x).norm() / bnorm;
      if (true_rel <= tol) {
        report.iterations = it;
        report.rel_residual = true_rel;
        report.seconds = elapsed(start);
        return {x, report};
      }
    }
    if (it - best_iter >= kStallWindow) {
      report.status = SolveStatus::stalled;
      report.iterations = it;
      report.rel_residual = (b - Arm * best_x).norm() / bnorm;
      report.seconds = elapsed(start);
      return {best_x, report};
    }
    z = dinv.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }

  report.status = SolveStatus::max_iterations;
  report.iterations = max_iter;
  report.rel_residual = (b - Arm * best_x).norm() / bnorm;
  report.seconds = elapsed(start);
  return {best_x, report};
}

}  // namespace

std::pair<Eigen::VectorXd, SolveReport> solve_spd(const SparseMat& matrix, const Eigen::VectorXd& rhs,
                                                  const SolveOptions& options,
                                                  const Eigen::VectorXd* precond_diag) {
  if (!(options.tol > 0.0 && options.tol < 1.0))
    throw std::invalid_argument("solve_spd: tol must lie in (0,1)");
  SolveMethod method = options.method;
  if (method == SolveMethod::automatic)
    method = (matrix.rows() <= 200'000) ? SolveMethod::cholesky : SolveMethod::cg;
  if (method == SolveMethod::cholesky) return solve_cholesky(matrix, rhs, options.tol);
  return solve_pcg(matrix, rhs, options.tol, options.max_iter, precond_diag);
}

}  // namespace wg
