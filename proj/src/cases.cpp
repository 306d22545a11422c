#include "wg/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wg {

namespace {

constexpr double kPi = std::numbers::pi;

ManufacturedCase<2> make_ex2d1() {
  ManufacturedCase<2> mc;
  mc.name = "ex2d1";
  mc.u = [](const Vec<2>& p, double, double) {
    const double s = std::sin(kPi * p.x()) * std::sin(kPi * p.y());
    return Vec<2>(s, s);
  };
  mc.grad_u = [](const Vec<2>& p, double, double) {
    const double dx = kPi * std::cos(kPi * p.x()) * std::sin(kPi * p.y());
    const double dy = kPi * std::sin(kPi * p.x()) * std::cos(kPi * p.y());
    Mat<2> g;
    g << dx, dy, dx, dy;
    return g;
  };
  mc.div_u = [](const Vec<2>& p, double, double) {
    return kPi * (std::cos(kPi * p.x()) * std::sin(kPi * p.y()) +
                  std::sin(kPi * p.x()) * std::cos(kPi * p.y()));
  };
  mc.f = [](const Vec<2>& p, double mu, double lambda) {
    const double sxsy = std::sin(kPi * p.x()) * std::sin(kPi * p.y());
    const double cxcy = std::cos(kPi * p.x()) * std::cos(kPi * p.y());
    const double val = 2.0 * mu * kPi * kPi * sxsy - (lambda + mu) * kPi * kPi * (cxcy - sxsy);
    return Vec<2>(val, val);
  };
  return mc;
}

// x-factor of the divergence-free polynomial part of ex2d2 and derivatives.
double pg(double x) { return ((x - 2.0) * x + 1.0) * x * x; }       // x^4 - 2x^3 + x^2
double pg1(double x) { return ((4.0 * x - 6.0) * x + 2.0) * x; }    // 4x^3 - 6x^2 + 2x
double pg2(double x) { return (12.0 * x - 12.0) * x + 2.0; }
double pg3(double x) { return 24.0 * x - 12.0; }
// y-factor: q = y^5 - 2y^4 + y^3 and derivatives.
double pq(double y) { return ((y - 2.0) * y + 1.0) * y * y * y; }
double pq1(double y) { return ((5.0 * y - 8.0) * y + 3.0) * y * y; }
double pq2(double y) { return ((20.0 * y - 24.0) * y + 6.0) * y; }
double pq3(double y) { return (60.0 * y - 48.0) * y + 6.0; }

ManufacturedCase<2> make_ex2d2() {
  ManufacturedCase<2> mc;
  mc.name = "ex2d2";
  mc.u = [](const Vec<2>& p, double, double lambda) {
    const double s = std::sin(kPi * p.x()) * std::sin(kPi * p.y());
    return Vec<2>(pg(p.x()) * pq1(p.y()) + s / lambda, -pg1(p.x()) * pq(p.y()) + s / lambda);
  };
  mc.grad_u = [](const Vec<2>& p, double, double lambda) {
    const double sx = std::sin(kPi * p.x()), cx = std::cos(kPi * p.x());
    const double sy = std::sin(kPi * p.y()), cy = std::cos(kPi * p.y());
    Mat<2> g;
    g(0, 0) = pg1(p.x()) * pq1(p.y()) + kPi * cx * sy / lambda;
    g(0, 1) = pg(p.x()) * pq2(p.y()) + kPi * sx * cy / lambda;
    g(1, 0) = -pg2(p.x()) * pq(p.y()) + kPi * cx * sy / lambda;
    g(1, 1) = -pg1(p.x()) * pq1(p.y()) + kPi * sx * cy / lambda;
    return g;
  };
  mc.div_u = [](const Vec<2>& p, double, double lambda) {
    return kPi *
           (std::cos(kPi * p.x()) * std::sin(kPi * p.y()) +
            std::sin(kPi * p.x()) * std::cos(kPi * p.y())) /
           lambda;
  };
  mc.f = [](const Vec<2>& p, double mu, double lambda) {
    const double sxsy = std::sin(kPi * p.x()) * std::sin(kPi * p.y());
    const double cxcy = std::cos(kPi * p.x()) * std::cos(kPi * p.y());
    const double graddiv = -(lambda + mu) * kPi * kPi * (cxcy - sxsy) / lambda;
    return Vec<2>(-mu * (pg2(p.x()) * pq1(p.y()) + pg(p.x()) * pq3(p.y()) - 2.0 * kPi * kPi * sxsy / lambda) +
                      graddiv,
                  mu * (pg3(p.x()) * pq(p.y()) + pg1(p.x()) * pq2(p.y()) + 2.0 * kPi * kPi * sxsy / lambda) +
                      graddiv);
  };
  return mc;
}

ManufacturedCase<2> make_ex2d6() {
  ManufacturedCase<2> mc;
  mc.name = "ex2d6";
  mc.u = [](const Vec<2>& p, double, double) {
    return Vec<2>(std::sin(kPi * p.x()) * std::cos(kPi * p.y()),
                  std::cos(kPi * p.x()) * std::sin(kPi * p.y()));
  };
  mc.grad_u = [](const Vec<2>& p, double, double) {
    const double cc = kPi * std::cos(kPi * p.x()) * std::cos(kPi * p.y());
    const double ss = kPi * std::sin(kPi * p.x()) * std::sin(kPi * p.y());
    Mat<2> g;
    g << cc, -ss, -ss, cc;
    return g;
  };
  mc.div_u = [](const Vec<2>& p, double, double) {
    return 2.0 * kPi * std::cos(kPi * p.x()) * std::cos(kPi * p.y());
  };
  mc.f = [](const Vec<2>& p, double mu, double lambda) {
    const Vec<2> lap(-2.0 * kPi * kPi * std::sin(kPi * p.x()) * std::cos(kPi * p.y()),
                     -2.0 * kPi * kPi * std::cos(kPi * p.x()) * std::sin(kPi * p.y()));
    return Vec<2>(-mu * lap - (lambda + mu) * lap);
  };
  return mc;
}

ManufacturedCase<3> make_ex3d1() {
  ManufacturedCase<3> mc;
  mc.name = "ex3d1";
  mc.u = [](const Vec<3>& p, double, double) {
    return Vec<3>(std::sin(p.x()) * std::sin(p.y()) * std::sin(p.z()),
                  std::cos(p.x()) * std::cos(p.y()) * std::cos(p.z()),
                  std::cos(p.x()) * std::sin(p.y()) * std::sin(p.z()));
  };
  mc.grad_u = [](const Vec<3>& p, double, double) {
    const double sx = std::sin(p.x()), cx = std::cos(p.x());
    const double sy = std::sin(p.y()), cy = std::cos(p.y());
    const double sz = std::sin(p.z()), cz = std::cos(p.z());
    Mat<3> g;
    g << cx * sy * sz, sx * cy * sz, sx * sy * cz,
        -sx * cy * cz, -cx * sy * cz, -cx * cy * sz,
        -sx * sy * sz, cx * cy * sz, cx * sy * cz;
    return g;
  };
  mc.div_u = [](const Vec<3>& p, double, double) {
    return std::cos(p.x()) * std::sin(p.y()) * std::sin(p.z());
  };
  mc.f = [](const Vec<3>& p, double mu, double lambda) {
    const double sx = std::sin(p.x()), cx = std::cos(p.x());
    const double sy = std::sin(p.y()), cy = std::cos(p.y());
    const double sz = std::sin(p.z()), cz = std::cos(p.z());
    return Vec<3>(3.0 * mu * sx * sy * sz + (lambda + mu) * sx * sy * sz,
                  3.0 * mu * cx * cy * cz - (lambda + mu) * cx * cy * sz,
                  3.0 * mu * cx * sy * sz - (lambda + mu) * cx * sy * cz);
  };
  return mc;
}

ManufacturedCase<3> make_ex3d2() {
  ManufacturedCase<3> mc;
  mc.name = "ex3d2";
  mc.u = [](const Vec<3>& p, double, double lambda) {
    const double z3 = p.z() * p.z() * p.z();
    return Vec<3>(z3 * std::sin(p.x()) * std::sin(p.y()) + std::sin(p.x()) / lambda,
                  5.0 * z3 * std::cos(p.x()) * std::cos(p.y()) + std::sin(p.y()) / lambda,
                  z3 * p.z() * std::cos(p.x()) * std::sin(p.y()) + std::sin(p.z()) / lambda);
  };
  mc.grad_u = [](const Vec<3>& p, double, double lambda) {
    const double sx = std::sin(p.x()), cx = std::cos(p.x());
    const double sy = std::sin(p.y()), cy = std::cos(p.y());
    const double z2 = p.z() * p.z(), z3 = z2 * p.z(), z4 = z3 * p.z();
    Mat<3> g;
    g(0, 0) = z3 * cx * sy + std::cos(p.x()) / lambda;
    g(0, 1) = z3 * sx * cy;
    g(0, 2) = 3.0 * z2 * sx * sy;
    g(1, 0) = -5.0 * z3 * sx * cy;
    g(1, 1) = -5.0 * z3 * cx * sy + std::cos(p.y()) / lambda;
    g(1, 2) = 15.0 * z2 * cx * cy;
    g(2, 0) = -z4 * sx * sy;
    g(2, 1) = z4 * cx * cy;
    g(2, 2) = 4.0 * z3 * cx * sy + std::cos(p.z()) / lambda;
    return g;
  };
  mc.div_u = [](const Vec<3>& p, double, double lambda) {
    return (std::cos(p.x()) + std::cos(p.y()) + std::cos(p.z())) / lambda;
  };
  mc.f = [](const Vec<3>& p, double mu, double lambda) {
    const double sx = std::sin(p.x()), cx = std::cos(p.x());
    const double sy = std::sin(p.y()), cy = std::cos(p.y());
    const double z = p.z(), z2 = z * z, z3 = z2 * z, z4 = z3 * z;
    // -mu lap(u): the trig factors of the polynomial part survive with
    // (6z - 2z^3) etc.; the 1/lambda part contributes +(mu/lambda) sin.
    // -(lambda+mu) grad(div u) = ((lambda+mu)/lambda)(sin x, sin y, sin z).
    return Vec<3>(
        -mu * (6.0 * z - 2.0 * z3) * sx * sy + (mu / lambda) * sx + ((lambda + mu) / lambda) * sx,
        -mu * (30.0 * z - 10.0 * z3) * cx * cy + (mu / lambda) * sy + ((lambda + mu) / lambda) * sy,
        -mu * (12.0 * z2 - 2.0 * z4) * cx * sy + (mu / lambda) * std::sin(z) +
            ((lambda + mu) / lambda) * std::sin(z));
  };
  return mc;
}

}  // namespace

std::vector<ManufacturedCase<2>> case_library_2d() {
  return {make_ex2d1(), make_ex2d2(), make_ex2d6()};
}

std::vector<ManufacturedCase<3>> case_library_3d() { return {make_ex3d1(), make_ex3d2()}; }

std::vector<std::pair<std::string, int>> case_names() {
  return {{"ex2d1", 2}, {"ex3d1", 3}, {"ex2d2", 2}, {"ex3d2", 3}, {"ex2d6", 2}};
}

int case_dim(const std::string& name) {
  for (const auto& [n, d] : case_names())
    if (n == name) return d;
  return 0;
}

ManufacturedCase<2> find_case_2d(const std::string& name) {
  for (auto& mc : case_library_2d())
    if (mc.name == name) return mc;
  throw std::invalid_argument("unknown 2D case: " + name);
}

ManufacturedCase<3> find_case_3d(const std::string& name) {
  for (auto& mc : case_library_3d())
    if (mc.name == name) return mc;
  throw std::invalid_argument("unknown 3D case: " + name);
}

}  // namespace wg
