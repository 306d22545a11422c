#pragma once

#include "wg/mesh.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wg {

/// A manufactured solution of -mu Lap(u) - (lambda+mu) grad(div u) = f on the
/// unit square/cube. All evaluators take the Lame pair because some exact
/// solutions carry 1/lambda terms.
template <int dim>
struct ManufacturedCase {
  std::string name;
  std::function<Vec<dim>(const Vec<dim>&, double mu, double lambda)> u;
  std::function<Mat<dim>(const Vec<dim>&, double mu, double lambda)> grad_u;  // (k,l) = d u_k / d x_l
  std::function<double(const Vec<dim>&, double mu, double lambda)> div_u;
  std::function<Vec<dim>(const Vec<dim>&, double mu, double lambda)> f;
};

std::vector<ManufacturedCase<2>> case_library_2d();
std::vector<ManufacturedCase<3>> case_library_3d();

/// All five case names with their spatial dimension.
std::vector<std::pair<std::string, int>> case_names();

/// 0 if the name is unknown.
int case_dim(const std::string& name);

ManufacturedCase<2> find_case_2d(const std::string& name);
ManufacturedCase<3> find_case_3d(const std::string& name);

}  // namespace wg
