#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wg/cases.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace wg;

namespace {

// Central finite differences: Laplacian of u componentwise and gradient of
// the closed-form divergence, assembled into -mu lap(u) - (lambda+mu) grad(div u).
template <int dim>
Vec<dim> fd_body_force(const ManufacturedCase<dim>& mc, const Vec<dim>& x, double mu, double lambda,
                       double step) {
  Vec<dim> lap = Vec<dim>::Zero();
  Vec<dim> grad_div;
  for (int d = 0; d < dim; ++d) {
    Vec<dim> xp = x, xm = x;
    xp[d] += step;
    xm[d] -= step;
    lap += (mc.u(xp, mu, lambda) - 2.0 * mc.u(x, mu, lambda) + mc.u(xm, mu, lambda)) / (step * step);
    grad_div[d] = (mc.div_u(xp, mu, lambda) - mc.div_u(xm, mu, lambda)) / (2.0 * step);
  }
  return -mu * lap - (lambda + mu) * grad_div;
}

template <int dim>
Mat<dim> fd_gradient(const ManufacturedCase<dim>& mc, const Vec<dim>& x, double mu, double lambda,
                     double step) {
  Mat<dim> g;
  for (int d = 0; d < dim; ++d) {
    Vec<dim> xp = x, xm = x;
    xp[d] += step;
    xm[d] -= step;
    g.col(d) = (mc.u(xp, mu, lambda) - mc.u(xm, mu, lambda)) / (2.0 * step);
  }
  return g;
}

template <int dim>
Vec<dim> random_interior_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  Vec<dim> x;
  for (int d = 0; d < dim; ++d) x[d] = dist(rng);
  return x;
}

template <int dim>
void check_case(const ManufacturedCase<dim>& mc, double mu, double lambda) {
  std::mt19937 rng(1000 + static_cast<int>(lambda));
  for (int trial = 0; trial < 20; ++trial) {
    const Vec<dim> x = random_interior_point<dim>(rng);

    const Vec<dim> f_fd = fd_body_force(mc, x, mu, lambda, 1e-5);
    const Vec<dim> f = mc.f(x, mu, lambda);
    CHECK((f - f_fd).norm() <= 1e-4 * std::max(1.0, f.norm()));

    const Mat<dim> g_fd = fd_gradient(mc, x, mu, lambda, 1e-5);
    const Mat<dim> g = mc.grad_u(x, mu, lambda);
    CHECK((g - g_fd).norm() <= 1e-8 * std::max(1.0, g.norm()));

    CHECK(std::abs(g.trace() - mc.div_u(x, mu, lambda)) <=
          1e-12 * std::max(1.0, std::abs(g.trace())));
  }
}

template <int dim>
double max_boundary_value(const ManufacturedCase<dim>& mc, double mu, double lambda) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Vec<dim> x;
    for (int d = 0; d < dim; ++d) x[d] = dist(rng);
    const int face = trial % (2 * dim);
    x[face / 2] = (face % 2) ? 1.0 : 0.0;
    worst = std::max(worst, mc.u(x, mu, lambda).template lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace

TEST_CASE("library lists the five cases") {
  const auto names = case_names();
  REQUIRE(names.size() == 5);
  CHECK(case_dim("ex2d1") == 2);
  CHECK(case_dim("ex3d1") == 3);
  CHECK(case_dim("ex2d2") == 2);
  CHECK(case_dim("ex3d2") == 3);
  CHECK(case_dim("ex2d6") == 2);
  CHECK(case_dim("nope") == 0);
  CHECK_THROWS_AS(find_case_2d("nope"), std::invalid_argument);
  CHECK(case_library_2d().size() == 3);
  CHECK(case_library_3d().size() == 2);
}

TEST_CASE("body forces agree with finite differences of the exact solutions") {
  for (const auto& mc : case_library_2d()) {
    check_case(mc, 1.0, 1.0);
    check_case(mc, 1.0, 1e6);
    check_case(mc, 2.5, 37.0);
  }
  for (const auto& mc : case_library_3d()) {
    check_case(mc, 1.0, 1.0);
    check_case(mc, 1.0, 1e6);
    check_case(mc, 2.5, 37.0);
  }
}

TEST_CASE("boundary traces") {
  // ex2d1 and ex2d2 vanish on the whole boundary
  CHECK(max_boundary_value(find_case_2d("ex2d1"), 1.0, 1.0) <= 1e-12);
  CHECK(max_boundary_value(find_case_2d("ex2d2"), 1.0, 1e4) <= 1e-12);
  // the others do not; their runs impose the facet projection of u instead
  CHECK(max_boundary_value(find_case_2d("ex2d6"), 1.0, 1.0) > 0.1);
  CHECK(max_boundary_value(find_case_3d("ex3d1"), 1.0, 1.0) > 0.1);
  CHECK(max_boundary_value(find_case_3d("ex3d2"), 1.0, 1e4) > 0.1);
}

TEST_CASE("divergence structure of the locking cases") {
  const auto ex2d6 = find_case_2d("ex2d6");
  const auto ex3d2 = find_case_3d("ex3d2");
  const auto ex2d2 = find_case_2d("ex2d2");
  std::mt19937 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec<2> x = random_interior_point<2>(rng);
    // ex2d6: div u = 2 pi cos(pi x) cos(pi y), independent of lambda
    const double expect =
        2.0 * std::numbers::pi * std::cos(std::numbers::pi * x.x()) * std::cos(std::numbers::pi * x.y());
    CHECK(ex2d6.div_u(x, 1.0, 1e8) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(ex2d6.div_u(x, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-13));

    // ex2d2: divergence scales as 1/lambda
    CHECK(ex2d2.div_u(x, 1.0, 1e6) == doctest::Approx(ex2d2.div_u(x, 1.0, 1.0) / 1e6).epsilon(1e-12));

    const Vec<3> y = random_interior_point<3>(rng);
    const double lambda = 1e4;
    CHECK(ex3d2.div_u(y, 1.0, lambda) ==
          doctest::Approx((std::cos(y.x()) + std::cos(y.y()) + std::cos(y.z())) / lambda)
              .epsilon(1e-13));
  }
}

TEST_CASE("ex2d2 carries the printed 1/lambda sine term") {
  std::mt19937 rng(9);
  const auto mc = find_case_2d("ex2d2");
  for (int trial = 0; trial < 10; ++trial) {
    const Vec<2> x = random_interior_point<2>(rng);
    const double s = std::sin(std::numbers::pi * x.x()) * std::sin(std::numbers::pi * x.y());
    const Vec<2> diff = mc.u(x, 1.0, 1.0) - mc.u(x, 1.0, 1e8);
    CHECK(diff.x() == doctest::Approx((1.0 - 1e-8) * s).epsilon(1e-10));
    CHECK(diff.y() == doctest::Approx((1.0 - 1e-8) * s).epsilon(1e-10));
  }
}
