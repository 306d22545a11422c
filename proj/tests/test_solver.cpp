#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wg/solver.hpp"

#include <random>

using namespace wg;

namespace {

SparseMat to_sparse(const Eigen::MatrixXd& dense) {
  SparseMat s = dense.sparseView();
  s.makeCompressed();
  return s;
}

}  // namespace

TEST_CASE("diagonal system") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  const SparseMat a = to_sparse(d);
  const Eigen::VectorXd b = Eigen::Vector2d(2.0, 3.0);
  for (SolveMethod method : {SolveMethod::cg, SolveMethod::cholesky}) {
    SolveOptions opt;
    opt.method = method;
    const auto [x, report] = solve_spd(a, b, opt);
    CHECK(report.status == SolveStatus::converged);
    CHECK((x - Eigen::Vector2d(1.0, 1.0)).norm() <= 1e-12);
  }
}

TEST_CASE("zero rhs returns zero immediately") {
  const SparseMat a = to_sparse(Eigen::MatrixXd::Identity(5, 5));
  SolveOptions opt;
  opt.method = SolveMethod::cg;
  const auto [x, report] = solve_spd(a, Eigen::VectorXd::Zero(5), opt);
  CHECK(report.status == SolveStatus::converged);
  CHECK(report.iterations <= 1);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("random SPD system matches the dense oracle") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) m(i, j) = dist(rng);
  const Eigen::MatrixXd dense = m.transpose() * m + Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = dist(rng);

  const Eigen::VectorXd oracle = dense.ldlt().solve(b);
  for (SolveMethod method : {SolveMethod::cg, SolveMethod::cholesky}) {
    SolveOptions opt;
    opt.method = method;
    const auto [x, report] = solve_spd(to_sparse(dense), b, opt);
    CHECK(report.ok());
    CHECK((x - oracle).norm() / oracle.norm() <= 1e-10);
  }
}

TEST_CASE("iteration cap is reported") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(40, 40);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) m(i, j) = dist(rng);
  const Eigen::MatrixXd dense = m.transpose() * m + 1e-6 * Eigen::MatrixXd::Identity(40, 40);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(40);
  SolveOptions opt;
  opt.method = SolveMethod::cg;
  opt.max_iter = 2;
  const auto [x, report] = solve_spd(to_sparse(dense), b, opt);
  CHECK(report.status == SolveStatus::max_iterations);
  CHECK(report.iterations == 2);
  CHECK(report.rel_residual > 0.0);
  CHECK(std::isfinite(report.rel_residual));
}

TEST_CASE("indefinite matrices are reported distinctly") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  const Eigen::VectorXd b = Eigen::Vector2d(1.0, 1.0);
  for (SolveMethod method : {SolveMethod::cg, SolveMethod::cholesky}) {
    SolveOptions opt;
    opt.method = method;
    const auto [x, report] = solve_spd(to_sparse(d), b, opt);
    CHECK(report.status == SolveStatus::indefinite);
    CHECK(!report.ok());
  }
}

TEST_CASE("invalid tolerance rejected") {
  const SparseMat a = to_sparse(Eigen::MatrixXd::Identity(2, 2));
  SolveOptions opt;
  opt.tol = 0.0;
  CHECK_THROWS_AS(solve_spd(a, Eigen::Vector2d(1, 1), opt), std::invalid_argument);
}

TEST_CASE("deterministic results") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) m(i, j) = dist(rng);
  const Eigen::MatrixXd dense = m.transpose() * m + Eigen::MatrixXd::Identity(30, 30);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(30, -1.0, 1.0);
  SolveOptions opt;
  opt.method = SolveMethod::cg;
  const auto [x1, r1] = solve_spd(to_sparse(dense), b, opt);
  const auto [x2, r2] = solve_spd(to_sparse(dense), b, opt);
  CHECK((x1 - x2).norm() == 0.0);
  CHECK(r1.iterations == r2.iterations);
}
