#pragma once

#include "wg/mesh.hpp"

#include <type_traits>

namespace wg {

/// Quadrature rule on a reference element. For cells the reference element is
/// the unit simplex in R^dim; for facets it is [0,1] (2D) or the unit
/// triangle (3D). Weights sum to the reference measure.
struct QuadratureRule {
  Eigen::MatrixXd points;   // size() x (reference dimension)
  Eigen::VectorXd weights;
  int exact_degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

constexpr double reference_cell_measure(int dim) { return dim == 2 ? 0.5 : 1.0 / 6.0; }
constexpr double reference_facet_measure(int dim) { return dim == 2 ? 1.0 : 0.5; }

/// Conical-product rule on the reference triangle/tetrahedron, exact at least
/// for polynomials of the requested total degree. Supported degrees: 1..12.
QuadratureRule cell_rule(int dim, int degree);

/// Rule on the reference facet: Gauss-Legendre on [0,1] for 2D meshes, a
/// conical-product triangle rule for 3D meshes. Supported degrees: 1..12.
QuadratureRule facet_rule(int dim, int degree);

template <int dim, class F>
auto integrate_on_cell(const SimplicialMesh<dim>& mesh, int cell, F&& f, const QuadratureRule& rule) {
  CellGeometry<dim> geo(mesh, cell);
  const double scale = mesh.cell_volume[cell] / reference_cell_measure(dim);
  using R = std::decay_t<decltype(f(geo.p0))>;
  R acc = R(rule.weights[0] * f(geo.map(Vec<dim>(rule.points.row(0).transpose()))));
  for (int q = 1; q < rule.size(); ++q)
    acc += R(rule.weights[q] * f(geo.map(Vec<dim>(rule.points.row(q).transpose()))));
  return R(scale * acc);
}

template <int dim, class F>
auto integrate_on_cell(const SimplicialMesh<dim>& mesh, int cell, F&& f, int degree) {
  return integrate_on_cell(mesh, cell, std::forward<F>(f), cell_rule(dim, degree));
}

template <int dim, class F>
auto integrate_on_facet(const SimplicialMesh<dim>& mesh, int facet, F&& f, const QuadratureRule& rule) {
  const auto& fv = mesh.facets[facet];
  const Vec<dim> q0 = mesh.vertices[fv[0]];
  const double scale = mesh.facet_measure[facet] / reference_facet_measure(dim);
  auto map = [&](int q) {
    Vec<dim> x = q0;
    for (int j = 0; j < dim - 1; ++j) x += rule.points(q, j) * (mesh.vertices[fv[j + 1]] - q0);
    return x;
  };
  using R = std::decay_t<decltype(f(q0))>;
  R acc = R(rule.weights[0] * f(map(0)));
  for (int q = 1; q < rule.size(); ++q) acc += R(rule.weights[q] * f(map(q)));
  return R(scale * acc);
}

template <int dim, class F>
auto integrate_on_facet(const SimplicialMesh<dim>& mesh, int facet, F&& f, int degree) {
  return integrate_on_facet(mesh, facet, std::forward<F>(f), facet_rule(dim, degree));
}

}  // namespace wg
