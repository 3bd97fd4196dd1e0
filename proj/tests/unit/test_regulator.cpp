#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "charvar/error.hpp"
#include "charvar/k2/tame.hpp"
#include "charvar/numeric/bivariate.hpp"
#include "charvar/numeric/roots.hpp"
#include "charvar/oracle/triangulation.hpp"
#include "charvar/regulator/regulator.hpp"
#include "charvar/repvar/rep_family.hpp"
#include "doctest.h"

using namespace charvar;
using namespace charvar::regulator;

namespace {

constexpr double kPi = std::numbers::pi;

Segment exp_seg(cd from, cd to) {
  Segment s;
  s.from = from;
  s.to = to;
  return s;
}

Segment circle(double radius, double theta0) {
  Segment s;
  s.kind = Segment::Kind::Circle;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta0 + 2 * kPi;
  return s;
}

PathSpec single(std::vector<Segment> segs, int samples, bool closed = false) {
  PathSpec p;
  p.samples = samples;
  p.closed = closed;
  p.components.push_back({std::move(segs)});
  return p;
}

const EigenCurve& figure_eight() {
  static const EigenCurve c = repvar::eigen_curve(repvar::rep_family({5, 3, "figure-eight"}), 1, {});
  return c;
}

// regular point with real meridian e^0.05 on the geometric branch
PathState loop_base() {
  const auto& c = figure_eight();
  return track_path({c}, single({exp_seg(0.0, 0.05)}, 64), basepoint_state({c})).back();
}

// log-chart loop from 0.05 around the rectangle [x0, x1] x [y0, y1]
PathSpec rectangle(double x0, double x1, double y0, double y1, int samples) {
  const cd a(x0, y0), b(x1, y0), c(x1, y1), d(x0, y1);
  return single({exp_seg(0.05, a), exp_seg(a, b), exp_seg(b, c), exp_seg(c, d), exp_seg(d, a), exp_seg(a, 0.05)},
                samples, true);
}

// encircles m = infinity once on the figure-eight curve
PathSpec outer_loop() {
  const cd mid(1.3, 0.5), out(std::log(3.0), 0.0);
  return single({exp_seg(0.05, mid), exp_seg(mid, out), circle(3.0, 0.0), exp_seg(out, mid), exp_seg(mid, 0.05)}, 400,
                true);
}

double oracle_volume(const EigenCurve& c, double a) {
  auto tri = *oracle::find_triangulation(c.code.p, c.code.q);
  std::vector<cd> targets(static_cast<std::size_t>(tri.cusps), 0.0);
  targets[static_cast<std::size_t>(c.component - 1)] = cd(0.0, 2 * kPi * a);
  return oracle::solve_gluing(tri, targets).volume;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("constant path stays at the start") {
  const auto& c = figure_eight();
  auto states = track_path({c}, single({exp_seg(0.0, 0.0)}, 8), basepoint_state({c}));
  REQUIRE(states.size() == 9);
  for (const auto& s : states) {
    CHECK(s.components[0].l == c.basepoint.l);
    CHECK(s.components[0].m == c.basepoint.m);
  }
  CHECK(integrate_eta(states, {1}).value == 0.0);
  CHECK(integrate_xi(states, {1}).value == 0.0);
  CHECK(volume_along(states, {1}, c.basepoint.volume) == doctest::Approx(2.029883212819307).epsilon(1e-12));
  CHECK(special_cs_along(states, {1}, 1, 0.25) == doctest::Approx(kPi * kPi).epsilon(1e-14));
}

TEST_CASE("tracking keeps states on the curve") {
  const auto& c = figure_eight();
  auto states = track_path({c}, single({exp_seg(0.0, cd(0.0, 0.1 * kPi))}, 400), basepoint_state({c}));
  numeric::Bivariate f(c.poly, "l", "m");
  for (const auto& s : states) {
    const auto& x = s.components[0];
    CHECK(f.scaled_residual(x.l, x.m) < 1e-9);
    CHECK(std::abs(std::exp(x.log_l) - x.l) < 1e-10);
    CHECK(std::abs(std::exp(x.log_m) - x.m) < 1e-10);
  }
  for (std::size_t k = 1; k < states.size(); ++k)
    CHECK(std::abs(states[k].components[0].log_l.imag() - states[k - 1].components[0].log_l.imag()) < kPi / 2);
  CHECK(states.back().t == 1.0);
}

TEST_CASE("branch points and divisor collisions are reported") {
  const auto& c = figure_eight();
  const double golden = (1 + std::sqrt(5.0)) / 2;
  CHECK(kind_of([&] { track_path({c}, single({exp_seg(0.0, std::log(golden))}, 400), basepoint_state({c})); }) ==
        ErrorKind::BranchPoint);
  // through the node m = 1 from a generic start
  numeric::Bivariate f(c.poly, "l", "m");
  const cd m0 = std::exp(-0.2);
  auto roots = numeric::polynomial_roots(f.coefficients_in_x(m0));
  PathState start;
  start.components.push_back({roots[0], m0, std::log(roots[0]), std::log(m0)});
  CHECK(kind_of([&] { track_path({c}, single({exp_seg(-0.2, 0.2)}, 400), start); }) == ErrorKind::BranchPoint);
  const cd side(-1.2, 0.5);
  CHECK(kind_of([&] { track_path({c}, single({exp_seg(0.05, side), exp_seg(side, cd(-20.0, 0.5))}, 400), loop_base()); }) ==
        ErrorKind::DivisorCollision);
  // a start point off the curve
  PathState off = loop_base();
  off.components[0].l *= 1.01;
  CHECK(kind_of([&] { track_path({c}, single({exp_seg(0.05, 0.1)}, 8), off); }) == ErrorKind::DegenerateInput);
}

TEST_CASE("reversal negates both integrals") {
  const auto& c = figure_eight();
  PathSpec fwd = single({exp_seg(0.05, cd(0.2, 0.3)), exp_seg(cd(0.2, 0.3), cd(0.1, -0.4))}, 200);
  const PathState base = loop_base();
  auto a = track_path({c}, fwd, base);
  auto b = track_path({c}, fwd.reversed(), a.back());
  CHECK(std::abs(b.back().components[0].l - base.components[0].l) < 1e-9);
  CHECK(integrate_eta(b, {1}).value == doctest::Approx(-integrate_eta(a, {1}).value).epsilon(1e-9));
  CHECK(integrate_xi(b, {1}).value == doctest::Approx(-integrate_xi(a, {1}).value).epsilon(1e-9));
  // path followed by its reverse has the special CS value of the trivial path
  std::vector<PathState> both = a;
  both.insert(both.end(), b.begin() + 1, b.end());
  CHECK(std::abs(special_cs_along(both, {1}, 1, 0.1) - 4 * kPi * kPi * 0.1) < 1e-9);
}

TEST_CASE("sign calibration and volume along deformations") {
  const auto& c = figure_eight();
  Calibration cal = calibrate_epsilon(c);
  CHECK(cal.epsilon == 1);
  CHECK(cal.mismatch < 1e-9);
  for (double a : {0.01, 0.025, 0.04}) {
    auto states = track_path({c}, single({exp_seg(0.0, cd(0.0, kPi * a))}, 200), basepoint_state({c}));
    CHECK(std::abs(volume_along(states, {cal.epsilon}, c.basepoint.volume) - oracle_volume(c, a)) < 1e-6);
  }
  CHECK_THROWS_AS(calibrate_epsilon(repvar::eigen_curve(repvar::rep_family({3, 1, "trefoil"}), 1, {})), Error);
}

TEST_CASE("whitehead volume along a one-cusp deformation") {
  auto fam = repvar::rep_family({8, 3, "whitehead"});
  std::vector<EigenCurve> curves{repvar::eigen_curve(fam, 1, {1}), repvar::eigen_curve(fam, 2, {1})};
  for (auto& c : curves) c.epsilon = calibrate_epsilon(c).epsilon;
  PathSpec spec;
  spec.samples = 200;
  spec.components.push_back({{exp_seg(0.0, cd(0.0, 0.03 * kPi))}});
  spec.components.push_back({{exp_seg(0.0, 0.0)}});
  auto states = track_path(curves, spec, basepoint_state(curves));
  const double v0 = volume_along({states.front()}, {1, 1}, curves[0].basepoint.volume);
  CHECK(v0 == doctest::Approx(3.663862376708876).epsilon(1e-12));
  const double v = volume_along(states, {curves[0].epsilon, curves[1].epsilon}, curves[0].basepoint.volume);
  CHECK(std::abs(v - oracle_volume(curves[0], 0.03)) < 1e-6);
}

TEST_CASE("contractible loops: exactness, flatness, unit monodromy") {
  const auto& c = figure_eight();
  const PathState base = loop_base();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double x0 = 0.08 + 0.15 * u(rng), x1 = x0 + 0.05 + (0.42 - x0 - 0.05) * u(rng);
    const double y0 = -2.5 + 4.0 * u(rng), y1 = y0 + 0.1 + 0.9 * u(rng);
    auto states = track_path({c}, rectangle(x0, x1, y0, y1, 200), base);
    CHECK(std::abs(integrate_eta(states, {1}).value) < 1e-7);
    CHECK(std::abs(std::abs(monodromy(states, {1})) - 1.0) < 1e-8);
    CHECK(std::abs(log_l_dlog_m(states, {1})) < 1e-7);
  }
  CHECK(kind_of([&] { monodromy(track_path({c}, single({exp_seg(0.05, 0.1)}, 8), base), {1}); }) ==
        ErrorKind::OpenPath);
}

TEST_CASE("non-contractible loop quantization") {
  const auto& c = figure_eight();
  const PathState base = loop_base();
  const PathSpec loop = outer_loop();
  const long q_candidate = k2::symbol_order_candidate(c.poly);
  auto states = track_path({c}, loop, base);
  Quantization q = quantization_check(states, {1}, q_candidate);
  CHECK(q.precondition_met);
  CHECK(q.residual < 1e-5);
  CHECK(q.q <= 64);
  CHECK(q.p != 0);
  cd m = monodromy(states, {1});
  CHECK(std::abs(std::abs(m) - 1.0) < 1e-8);
  CHECK(std::abs(std::pow(m, static_cast<int>(q.q)) - 1.0) < 1e-6);
  Quantization twice = quantization_check(track_path({c}, loop.repeated(2), base), {1}, q_candidate);
  CHECK(twice.p == 2 * q.p);
  CHECK(twice.q == q.q);
  Quantization back = quantization_check(track_path({c}, loop.reversed(), base), {1}, q_candidate);
  CHECK(back.p == -q.p);
  // the trivial loop
  Quantization none = quantization_check(track_path({c}, single({exp_seg(0.05, 0.05)}, 8, true), base), {1}, 1);
  CHECK(none.p == 0);
  CHECK(none.q == 1);
  CHECK(none.residual == 0.0);
}

TEST_CASE("homotopic paths give the same V and U") {
  const auto& c = figure_eight();
  const cd end(0.3, 0.6);
  auto a = track_path({c}, single({exp_seg(0.0, end), exp_seg(end, end)}, 200), basepoint_state({c}));
  auto b = track_path({c}, single({exp_seg(0.0, 0.3), exp_seg(0.3, end)}, 160), basepoint_state({c}));
  REQUIRE(std::abs(a.back().components[0].l - b.back().components[0].l) < 1e-9);
  CHECK(std::abs(volume_along(a, {1}, c.basepoint.volume) - volume_along(b, {1}, c.basepoint.volume)) < 1e-6);
  CHECK(std::abs(special_cs_along(a, {1}, 1) - special_cs_along(b, {1}, 1)) < 1e-6);
}

TEST_CASE("rational approximation") {
  CHECK(rational_approximation(0.75, 64) == std::pair<long, long>{3, 4});
  CHECK(rational_approximation(-2.0000001, 64) == std::pair<long, long>{-2, 1});
  CHECK(rational_approximation(kPi, 7) == std::pair<long, long>{22, 7});
}

TEST_CASE("csv rows") {
  const auto& c = figure_eight();
  auto states = track_path({c}, single({exp_seg(0.0, cd(0.0, 0.01))}, 4), basepoint_state({c}));
  std::ostringstream out;
  write_csv(out, states, c.basepoint.volume);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# component 1");
  std::getline(in, line);
  CHECK(line == "t,l_re,l_im,m_re,m_im,eta_acc,xi_acc,V");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}
