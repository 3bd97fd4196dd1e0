#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "charvar/error.hpp"
#include "charvar/oracle/dilog.hpp"
#include "charvar/oracle/triangulation.hpp"
#include "doctest.h"

using namespace charvar;
using namespace charvar::oracle;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

// Plain Fourier partial sum of Lambda, tail below 1/(2N).
double lobachevsky_fourier(double theta, long n_terms) {
  long double s = 0.0L;
  for (long n = n_terms; n >= 1; --n) s += std::sin(2.0L * n * theta) / (static_cast<long double>(n) * n);
  return static_cast<double>(0.5L * s);
}

// Cone-manifold volume of the figure-eight knot with cone angle alpha:
// int_alpha^{2 pi/3} arccosh(1 + cos t - cos 2t) dt, with t = 2 pi/3 - s^2.
double figure_eight_cone_volume(double alpha) {
  const double top = std::sqrt(2.0 * kPi / 3.0 - alpha);
  const int n = 4000;
  auto f = [](double s) {
    double t = 2.0 * kPi / 3.0 - s * s;
    double x = 1.0 + std::cos(t) - std::cos(2.0 * t);
    return std::acosh(std::max(x, 1.0)) * 2.0 * s;
  };
  double h = top / n, sum = f(0.0) + f(top);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("lobachevsky values") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(kPi / 2)) < 1e-15);
  CHECK(std::abs(lobachevsky(kPi / 6) - 0.5074708032048268) < 1e-13);
  CHECK(std::abs(lobachevsky(kPi / 6) - lobachevsky_fourier(kPi / 6, 2000000)) < 1e-6);
  CHECK(std::abs(8.0 * lobachevsky(kPi / 4) - 3.663862376708876) < 1e-12);
}

TEST_CASE("lobachevsky identities on a grid") {
  for (int i = -40; i <= 40; ++i) {
    double t = 0.0913 * i + 0.0071;
    CHECK(std::abs(lobachevsky(t + kPi) - lobachevsky(t)) < 1e-11);
    CHECK(std::abs(lobachevsky(-t) + lobachevsky(t)) < 1e-11);
    CHECK(std::abs(lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + kPi / 2)) < 1e-11);
  }
}

TEST_CASE("bloch-wigner values and symmetries") {
  cd w = std::polar(1.0, kPi / 3);
  CHECK(std::abs(bloch_wigner(w) - 1.0149416064096536) < 1e-13);
  CHECK(std::abs(2 * bloch_wigner(w) - 2.029883212819307) < 1e-12);
  for (double x : {-3.0, -0.5, 0.25, 0.5, 2.0, 7.0}) CHECK(std::abs(bloch_wigner(cd(x, 0.0))) < 1e-15);
  CHECK_THROWS_AS(bloch_wigner(0.0), Error);
  CHECK_THROWS_AS(bloch_wigner(1.0), Error);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    cd z(u(rng), u(rng));
    if (std::abs(z) < 1e-3 || std::abs(z - 1.0) < 1e-3) continue;
    double d = bloch_wigner(z);
    CHECK(std::abs(d + bloch_wigner(std::conj(z))) < 1e-11);
    CHECK(std::abs(d + bloch_wigner(1.0 / z)) < 1e-11);
    CHECK(std::abs(d + bloch_wigner(1.0 - z)) < 1e-11);
    // D agrees with Im Li2(z) + arg(1 - z) log|z| evaluated directly
    CHECK(std::abs(d - (dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z)))) < 1e-11);
  }
}

TEST_CASE("builtin triangulations parse") {
  const auto& all = builtin_triangulations();
  REQUIRE(all.size() == 2);
  CHECK(find_triangulation(5, 3).has_value());
  CHECK(find_triangulation(8, 3).has_value());
  CHECK_FALSE(find_triangulation(3, 1).has_value());
  CHECK_THROWS_AS(parse_triangulation("name: x\ntetrahedra: 1\ncusps: 0\nedges:\n1 1\n"), Error);
}

TEST_CASE("complete structures") {
  auto f8 = solve_gluing(triangulation_by_name("figure-eight"), {0.0});
  CHECK(f8.residual < 1e-12);
  for (cd z : f8.shapes) CHECK(std::abs(z - std::polar(1.0, kPi / 3)) < 1e-12);
  CHECK(std::abs(f8.volume - 2 * bloch_wigner(std::polar(1.0, kPi / 3))) < 1e-10);
  auto wh = solve_gluing(triangulation_by_name("whitehead"), {0.0, 0.0});
  CHECK(wh.residual < 1e-12);
  CHECK(std::abs(wh.volume - 8 * lobachevsky(kPi / 4)) < 1e-10);
  auto tau = cusp_shapes(triangulation_by_name("figure-eight"), f8.shapes);
  CHECK(std::abs(std::abs(tau[0]) - 2 * std::sqrt(3.0)) < 1e-9);
  auto tw = cusp_shapes(triangulation_by_name("whitehead"), wh.shapes);
  for (cd t : tw) CHECK(std::abs(std::abs(t) - std::sqrt(8.0)) < 1e-9);
}

TEST_CASE("deformed figure-eight volumes match the cone-manifold formula") {
  const auto& tri = triangulation_by_name("figure-eight");
  double previous = 3.0;
  for (double a : {0.0, 0.01, 0.02, 0.04, 0.05, 0.1}) {
    auto sol = solve_gluing(tri, {cd(0.0, 2 * kPi * a)});
    CHECK(sol.residual < 1e-12);
    CHECK(std::abs(sol.volume - figure_eight_cone_volume(2 * kPi * a)) < 1e-7);
    CHECK(sol.volume < previous);
    previous = sol.volume;
  }
  auto s04 = solve_gluing(tri, {cd(0.0, 2 * kPi * 0.04)});
  CHECK(s04.volume < 2.0298833);
}

TEST_CASE("gluing diverges far outside the basin") {
  CHECK_THROWS_AS(solve_gluing(triangulation_by_name("figure-eight"), {cd(0.0, 40.0)}), Error);
}
