#include "wg/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace wg {

namespace {

constexpr int kMaxDegree = 12;

int points_for_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("quadrature: unsupported degree " + std::to_string(degree));
  return degree / 2 + 1;  // an n-point Gauss rule is exact for degree 2n-1
}

/// Gauss nodes/weights on [0,1] for the weight (1-t)^alpha via Golub-Welsch.
/// alpha = 0 is plain Gauss-Legendre.
void gauss_jacobi_01(int n, int alpha, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  const double a = alpha;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    // Monic Jacobi (alpha, 0) recurrence coefficients on [-1,1].
    jacobi(k, k) = (alpha == 0) ? 0.0 : -a * a / ((2 * k + a) * (2 * k + a + 2));
    if (k > 0) {
      const double s = 2 * k + a;
      const double b = 4.0 * k * k * (k + a) * (k + a) / (s * s * (s * s - 1.0));
      jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (1.0 + eig.eigenvalues()[i]);
    const double v0 = eig.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0 / std::pow(2.0, a + 1.0);
  }
}

}  // namespace

QuadratureRule cell_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("cell_rule: dim must be 2 or 3");
  const int n = points_for_degree(degree);
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 1;

  if (dim == 2) {
    Eigen::VectorXd xi, u, eta, v;
    gauss_jacobi_01(n, 1, xi, u);
    gauss_jacobi_01(n, 0, eta, v);
    rule.points.resize(n * n, 2);
    rule.weights.resize(n * n);
    int q = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j, ++q) {
        rule.points(q, 0) = xi[i];
        rule.points(q, 1) = (1.0 - xi[i]) * eta[j];
        rule.weights[q] = u[i] * v[j];
      }
    }
  } else {
    Eigen::VectorXd xi, u, eta, s, zeta, v;
    gauss_jacobi_01(n, 2, xi, u);
    gauss_jacobi_01(n, 1, eta, s);
    gauss_jacobi_01(n, 0, zeta, v);
    rule.points.resize(n * n * n, 3);
    rule.weights.resize(n * n * n);
    int q = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k, ++q) {
          rule.points(q, 0) = xi[i];
          rule.points(q, 1) = (1.0 - xi[i]) * eta[j];
          rule.points(q, 2) = (1.0 - xi[i]) * (1.0 - eta[j]) * zeta[k];
          rule.weights[q] = u[i] * s[j] * v[k];
        }
      }
    }
  }
  return rule;
}

QuadratureRule facet_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("facet_rule: dim must be 2 or 3");
  if (dim == 3) return cell_rule(2, degree);

  const int n = points_for_degree(degree);
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 1;
  Eigen::VectorXd t, w;
  gauss_jacobi_01(n, 0, t, w);
  rule.points = t;
  rule.weights = w;
  return rule;
}

}  // namespace wg
