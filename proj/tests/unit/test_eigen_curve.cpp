#include <cmath>
#include <complex>
#include <random>

#include "charvar/error.hpp"
#include "charvar/numeric/bivariate.hpp"
#include "charvar/numeric/roots.hpp"
#include "charvar/poly/newton.hpp"
#include "charvar/repvar/eigen_curve.hpp"
#include "doctest.h"

using namespace charvar;
using namespace charvar::repvar;
using charvar::poly::MultiPoly;
using charvar::poly::Rat;

namespace {

MultiPoly P(const char* s) { return MultiPoly::parse(s); }

// Solve the Riley polynomial for u at random m, read l off the longitude
// matrix and return the worst scaled residual of the curve.
double worst_pointwise_residual(const EigenCurve& curve, std::uint32_t seed) {
  RepFamily fam = rep_family(curve.code);
  MultiPoly phi = riley_polynomial(fam);
  const char gen = fam.pres.meridians[static_cast<std::size_t>(curve.component - 1)];
  const std::string var = fam.var_of(gen);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> r(0.5, 1.8), a(-3.0, 3.0);
  numeric::Bivariate f(curve.poly, "l", "m");
  double worst = 0.0;
  int solved = 0;
  while (solved < 20) {
    cd m = std::polar(r(rng), a(rng));
    Values at{{var, m}};
    std::size_t k = 0;
    for (const auto& v : fam.meridian_vars)
      if (v != var) at[v] = static_cast<double>(curve.slice_signs[k++]);
    // phi as a polynomial in u with numeric coefficients
    std::vector<cd> coeffs;
    for (const auto& c : phi.coefficients_in("u")) coeffs.push_back(c.evaluate(at));
    for (cd u : numeric::polynomial_roots(coeffs)) {
      if (solved == 20) break;
      if (std::abs(u) < 1e-9) continue;  // reducible representations sit on l = 1
      at["u"] = u;
      Eigen::Matrix2cd lam = word_matrix_numeric(fam, fam.pres.longitudes[static_cast<std::size_t>(curve.component - 1)], at);
      Eigen::Matrix2cd mer = word_matrix_numeric(fam, power(gen, 1), at);
      // the representation really solves the relator and commutes
      CHECK(((lam * mer) - (mer * lam)).norm() < 1e-9 * (1.0 + lam.norm() * mer.norm()));
      worst = std::max(worst, f.scaled_residual(lam(0, 0), m));
      ++solved;
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("figure-eight eigenvalue curve") {
  RepFamily fam = rep_family({5, 3, "figure-eight"});
  EigenCurve c = eigen_curve(fam, 1, {});
  // sign fixed by a positive leading coefficient in graded-lex order
  CHECK(c.poly == -P("l^2*m^4 - l*m^8 + l*m^6 + 2*l*m^4 + l*m^2 - l + m^4"));
  CHECK(c.hyperbolic);
  CHECK(std::abs(c.basepoint.l + 1.0) < 1e-12);
  CHECK(std::abs(c.basepoint.m - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(c.basepoint.cusp_shape) - 2 * std::sqrt(3.0)) < 1e-9);
  CHECK(std::abs(c.basepoint.volume - 2.029883212819307) < 1e-10);
  CHECK(worst_pointwise_residual(c, 11) < 1e-8);
  auto np = poly::newton_polygon(c.poly);
  CHECK(np.vertices.size() == 4);
}

TEST_CASE("trefoil eigenvalue curve and basepoint") {
  RepFamily fam = rep_family({3, 1, "trefoil"});
  EigenCurve c = eigen_curve(fam, 1, {});
  CHECK(c.poly == P("l*m^6 + 1"));
  CHECK_FALSE(c.hyperbolic);
  CHECK(worst_pointwise_residual(c, 12) < 1e-8);
  CHECK_THROWS_AS(basepoint(fam, 1, {}), Error);
  try {
    eigen_curve(fam, 1, {}, true);
    FAIL("expected no-hyperbolic-solution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoHyperbolicSolution);
  }
}

TEST_CASE("whitehead slice curves") {
  RepFamily fam = rep_family({8, 3, "whitehead"});
  for (int comp : {1, 2}) {
    EigenCurve c = eigen_curve(fam, comp, {1});
    CHECK(c.hyperbolic);
    CHECK(std::abs(c.basepoint.u.imag()) > 0.5);
    CHECK(std::abs(c.basepoint.volume - 3.663862376708876) < 1e-10);
    CHECK(worst_pointwise_residual(c, 20 + static_cast<std::uint32_t>(comp)) < 1e-8);
    // slice consistency: the other meridian stays parabolic
    Values at{{"m1", 1.0}, {"m2", 1.0}, {"u", c.basepoint.u}};
    char other = comp == 1 ? 'b' : 'a';
    CHECK(std::abs(std::abs(word_matrix_numeric(fam, power(other, 1), at).trace()) - 2.0) < 1e-9);
  }
  EigenCurve c1 = eigen_curve(fam, 1, {1});
  CHECK(c1.poly == P("l^2*m^4 - l*m^4 + 4*l*m^2 - l + 1"));
  CHECK_THROWS_AS(eigen_curve(fam, 3, {1}), Error);
  CHECK_THROWS_AS(eigen_curve(fam, 1, {}), Error);
}

TEST_CASE("curve files round-trip") {
  EigenCurve c = eigen_curve(rep_family({5, 3, "figure-eight"}), 1, {});
  std::string text = format_curve(c);
  EigenCurve back = parse_curve(text);
  CHECK(back.poly == c.poly);
  CHECK(back.basepoint.l == c.basepoint.l);
  CHECK(back.basepoint.slope == c.basepoint.slope);
  CHECK(format_curve(back) == text);
  CHECK_THROWS_AS(parse_curve("component: 1\n"), Error);
}

TEST_CASE("link files") {
  TwoBridgeCode code = parse_link(R"({"type": "two_bridge", "p": 5, "q": 3, "name": "figure-eight"})");
  CHECK(code.p == 5);
  CHECK(code.name == "figure-eight");
  CHECK_THROWS_AS(parse_link(R"({"type": "pd", "p": 5, "q": 3})"), Error);
  CHECK_THROWS_AS(parse_link(R"({"type": "two_bridge", "p": 6, "q": 3})"), Error);
  CHECK_THROWS_AS(parse_link("{"), Error);
}
