#include "charvar/regulator/regulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "charvar/error.hpp"
#include "charvar/numeric/bivariate.hpp"
#include "charvar/numeric/roots.hpp"
#include "charvar/oracle/triangulation.hpp"

namespace charvar::regulator {

namespace {

constexpr double kPi = std::numbers::pi;

class ComponentTracker {
 public:
  ComponentTracker(const EigenCurve& curve, const TrackOptions& options)
      : f_(curve.poly, "l", "m"), options_(options), hint_(curve.basepoint.slope), base_(curve.basepoint) {}

  double residual(const ComponentState& s) const { return f_.scaled_residual(s.l, s.m); }

  bool at_basepoint(const ComponentState& s) const {
    return std::abs(s.l - base_.l) < 1e-10 && std::abs(s.m - base_.m) < 1e-10 && std::isfinite(hint_.real()) &&
           std::isfinite(hint_.imag());
  }

  void track_segment(ComponentState& cur, const Segment& seg, double s0, double s1, bool& at_start) const {
    advance(cur, seg, s0, s1, 0, at_start);
    if (at_start) return;  // still at the basepoint, where A may be singular
    const auto v = f_.eval(cur.l, cur.m);
    const double jac = std::abs(v.fx) * std::max(std::abs(cur.l), 1.0) / v.scale;
    if (!(jac >= 1e-12))
      throw Error(ErrorKind::BranchPoint, "dA/dl vanishes at m = " + describe(cur.m));
    for (cd z : {cur.l, cur.m})
      if (!(std::abs(z) >= 1e-8 && std::abs(z) <= 1e8))
        throw Error(ErrorKind::DivisorCollision, "path reaches a zero or pole of l or m near m = " + describe(cur.m));
  }

 private:
  static std::string describe(cd z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
  }

  void advance(ComponentState& cur, const Segment& seg, double s0, double s1, int depth, bool& at_start) const {
    const cd m1 = seg.m_at(s1);
    if (m1 == cur.m) return;
    ComponentState next;
    if (try_step(cur, m1, at_start, next)) {
      cur = next;
      at_start = false;
      return;
    }
    if (depth >= options_.max_bisections)
      throw Error(ErrorKind::BranchPoint, "continuation stalls near a ramification point at m = " + describe(m1));
    const double mid = 0.5 * (s0 + s1);
    advance(cur, seg, s0, mid, depth + 1, at_start);
    advance(cur, seg, mid, s1, depth + 1, at_start);
  }

  bool try_step(const ComponentState& cur, cd m1, bool use_hint, ComponentState& out) const {
    if (std::abs(std::arg(m1 / cur.m)) >= kPi / 2) return false;
    const auto v0 = f_.eval(cur.l, cur.m);
    cd slope;
    if (use_hint) slope = hint_;
    else if (std::abs(v0.fx) > 0.0) slope = -v0.fy / v0.fx;
    else return false;
    const cd predicted = cur.l + slope * (m1 - cur.m);

    cd l = predicted;
    auto v = f_.eval(l, m1);
    double res = std::abs(v.f) / v.scale;
    for (int it = 0; it < 60 && res > 1e-15; ++it) {
      if (std::abs(v.fx) == 0.0) return false;
      const cd step = v.f / v.fx;
      double damp = 1.0;
      cd trial = l - step;
      auto vt = f_.eval(trial, m1);
      while (std::abs(vt.f) / vt.scale > res && damp > 1.0 / 1024) {
        damp *= 0.5;
        trial = l - damp * step;
        vt = f_.eval(trial, m1);
      }
      const bool tiny = std::abs(l - trial) <= 1e-16 * std::abs(l);
      l = trial;
      v = vt;
      res = std::abs(v.f) / v.scale;
      if (tiny) break;
    }
    if (!(res < 1e-12)) return false;

    // the corrected point must be the root nearest the prediction, clearly
    const auto roots = numeric::polynomial_roots(f_.coefficients_in_x(m1));
    double d1 = INFINITY, d2 = INFINITY;
    cd nearest = l;
    for (cd r : roots) {
      double d = std::abs(r - predicted);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        nearest = r;
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (std::abs(nearest - l) > 1e-7 * (1.0 + std::abs(l))) return false;
    if (roots.size() > 1 && !(d1 < 0.5 * d2)) return false;
    if (std::abs(std::arg(l / cur.l)) >= kPi / 2) return false;

    out = cur;
    out.l = l;
    out.m = m1;
    out.log_l = cur.log_l + std::log(l / cur.l);
    out.log_m = cur.log_m + std::log(m1 / cur.m);
    return true;
  }

  numeric::Bivariate f_;
  TrackOptions options_;
  cd hint_;
  repvar::Basepoint base_;
};

template <class T, class G, class H>
T stieltjes(const std::vector<PathState>& states, std::size_t c, std::size_t stride, G g, H h) {
  T sum{};
  for (std::size_t k = 0; k + stride < states.size(); k += stride) {
    const auto& a = states[k].components[c];
    const auto& b = states[k + stride].components[c];
    sum += 0.5 * (g(a) + g(b)) * (h(b) - h(a));
  }
  return sum;
}

// eps * (log|l| darg m - log|m| darg l) and -eps * (log|m| dlog|l| + arg l darg m)
double eta_sum(const std::vector<PathState>& states, std::size_t c, std::size_t stride) {
  auto re_l = [](const ComponentState& s) { return s.log_l.real(); };
  auto im_l = [](const ComponentState& s) { return s.log_l.imag(); };
  auto re_m = [](const ComponentState& s) { return s.log_m.real(); };
  auto im_m = [](const ComponentState& s) { return s.log_m.imag(); };
  return stieltjes<double>(states, c, stride, re_l, im_m) - stieltjes<double>(states, c, stride, re_m, im_l);
}

double xi_sum(const std::vector<PathState>& states, std::size_t c, std::size_t stride) {
  auto re_l = [](const ComponentState& s) { return s.log_l.real(); };
  auto im_l = [](const ComponentState& s) { return s.log_l.imag(); };
  auto re_m = [](const ComponentState& s) { return s.log_m.real(); };
  auto im_m = [](const ComponentState& s) { return s.log_m.imag(); };
  return -(stieltjes<double>(states, c, stride, re_m, re_l) + stieltjes<double>(states, c, stride, im_l, im_m));
}

void check_grid(const std::vector<PathState>& states, const std::vector<int>& epsilons) {
  if (states.empty()) throw Error(ErrorKind::DegenerateInput, "no states to integrate");
  if ((states.size() - 1) % 4 != 0)
    throw Error(ErrorKind::InsufficientSamples, "number of steps must be a multiple of 4");
  if (epsilons.size() != states.front().components.size())
    throw Error(ErrorKind::Usage, "need one epsilon per component");
}

template <class Sum>
Quadrature extrapolate(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol,
                       const char* what, Sum sum) {
  check_grid(states, epsilons);
  double t[3] = {0, 0, 0};
  for (std::size_t c = 0; c < epsilons.size(); ++c)
    for (int i = 0; i < 3; ++i) t[i] += epsilons[c] * sum(states, c, std::size_t{1} << i);
  const double r1 = (4 * t[0] - t[1]) / 3, r2 = (4 * t[1] - t[2]) / 3;
  Quadrature q{r1, std::abs(r1 - r2)};
  if (!(q.error <= tol))
    throw Error(ErrorKind::InsufficientSamples, std::string(what) + " quadrature error estimate " +
                                                    std::to_string(q.error) + " exceeds tolerance");
  return q;
}

void require_closed(const std::vector<PathState>& states) {
  const auto& a = states.front().components;
  const auto& b = states.back().components;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (std::abs(a[c].m - b[c].m) > 1e-10 * (1.0 + std::abs(a[c].m)) ||
        std::abs(a[c].l - b[c].l) > 1e-8 * (1.0 + std::abs(a[c].l)))
      throw Error(ErrorKind::OpenPath, "path does not return to its starting point on the curve");
  }
}

}  // namespace

PathState basepoint_state(const std::vector<EigenCurve>& curves) {
  PathState s;
  for (const auto& c : curves) {
    ComponentState cs;
    cs.l = c.basepoint.l;
    cs.m = c.basepoint.m;
    cs.log_l = std::log(cs.l);
    cs.log_m = std::log(cs.m);
    s.components.push_back(cs);
  }
  return s;
}

std::vector<PathState> track_path(const std::vector<EigenCurve>& curves, const PathSpec& spec,
                                  const PathState& start, const TrackOptions& options) {
  spec.validate();
  if (curves.size() != spec.components.size() || start.components.size() != curves.size())
    throw Error(ErrorKind::Usage, "need one curve, one path and one start point per component");
  const int n = spec.state_count();
  std::vector<PathState> states(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    states[static_cast<std::size_t>(k)].t = spec.t_of(k);
    states[static_cast<std::size_t>(k)].components.resize(curves.size());
  }
  for (std::size_t c = 0; c < curves.size(); ++c) {
    ComponentTracker tracker(curves[c], options);
    ComponentState cur = start.components[c];
    const auto& segs = spec.components[c].segments;
    if (std::abs(cur.m - segs.front().m_at(0.0)) > 1e-12 * (1.0 + std::abs(cur.m)))
      throw Error(ErrorKind::DegenerateInput, "start point does not lie at the beginning of the path");
    if (!(tracker.residual(cur) < 1e-9))
      throw Error(ErrorKind::DegenerateInput, "start point does not lie on the curve");
    cur.eta_acc = cur.xi_acc = 0.0;
    bool at_start = tracker.at_basepoint(cur);
    std::size_t k = 0;
    states[k].components[c] = cur;
    for (const auto& seg : segs) {
      for (int i = 1; i <= spec.samples; ++i) {
        tracker.track_segment(cur, seg, static_cast<double>(i - 1) / spec.samples,
                              static_cast<double>(i) / spec.samples, at_start);
        states[++k].components[c] = cur;
      }
    }
    const double eps = curves[c].epsilon;
    for (std::size_t j = 1; j < states.size(); ++j) {
      const auto& a = states[j - 1].components[c];
      auto& b = states[j].components[c];
      b.eta_acc = a.eta_acc + eps * (0.5 * (a.log_l.real() + b.log_l.real()) * (b.log_m.imag() - a.log_m.imag()) -
                                     0.5 * (a.log_m.real() + b.log_m.real()) * (b.log_l.imag() - a.log_l.imag()));
      b.xi_acc = a.xi_acc - eps * (0.5 * (a.log_m.real() + b.log_m.real()) * (b.log_l.real() - a.log_l.real()) +
                                   0.5 * (a.log_l.imag() + b.log_l.imag()) * (b.log_m.imag() - a.log_m.imag()));
    }
  }
  if (spec.closed) require_closed(states);
  return states;
}

Quadrature integrate_eta(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol) {
  return extrapolate(states, epsilons, tol, "eta", eta_sum);
}

Quadrature integrate_xi(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol) {
  return extrapolate(states, epsilons, tol, "xi", xi_sum);
}

cd log_l_dlog_m(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol) {
  check_grid(states, epsilons);
  auto log_l = [](const ComponentState& s) { return s.log_l; };
  auto log_m = [](const ComponentState& s) { return s.log_m; };
  cd t[3] = {0.0, 0.0, 0.0};
  for (std::size_t c = 0; c < epsilons.size(); ++c)
    for (int i = 0; i < 3; ++i)
      t[i] += static_cast<double>(epsilons[c]) * stieltjes<cd>(states, c, std::size_t{1} << i, log_l, log_m);
  const cd r1 = (4.0 * t[0] - t[1]) / 3.0, r2 = (4.0 * t[1] - t[2]) / 3.0;
  if (!(std::abs(r1 - r2) <= tol))
    throw Error(ErrorKind::InsufficientSamples, "log l dlog m quadrature error estimate exceeds tolerance");
  return r1;
}

cd monodromy(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol) {
  check_grid(states, epsilons);
  require_closed(states);
  cd x = log_l_dlog_m(states, epsilons, tol);
  const auto& a = states.front().components;
  const auto& b = states.back().components;
  for (std::size_t c = 0; c < a.size(); ++c)
    x -= static_cast<double>(epsilons[c]) * a[c].log_m * (b[c].log_l - a[c].log_l);
  return std::exp(-x / cd(0.0, 2.0 * kPi));
}

std::pair<long, long> rational_approximation(double x, long max_den) {
  if (!std::isfinite(x)) throw Error(ErrorKind::ReconstructionFailure, "value is not finite");
  const long sign = x < 0 ? -1 : 1;
  long double r = std::fabs(static_cast<long double>(x));
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
  long best_h = std::lround(static_cast<double>(r)), best_k = 1;
  for (int i = 0; i < 64; ++i) {
    long double a = std::floor(r);
    if (a > 1e15L) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    best_h = h2;
    best_k = k2;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double frac = r - a;
    if (frac < 1e-18L) break;
    r = 1.0L / frac;
  }
  return {sign * best_h, best_k};
}

Quantization quantization_check(const std::vector<PathState>& states, const std::vector<int>& epsilons,
                                long q_candidate, double tol) {
  check_grid(states, epsilons);
  require_closed(states);
  Quantization out;
  // -1/2 darg l darg m over the loop makes the value additive in the cycle
  double xi = integrate_xi(states, epsilons, tol).value;
  const auto& a = states.front().components;
  const auto& b = states.back().components;
  for (std::size_t c = 0; c < a.size(); ++c)
    xi += 0.5 * epsilons[c] * (b[c].log_l.imag() - a[c].log_l.imag()) * (b[c].log_m.imag() - a[c].log_m.imag());
  out.value = -xi / (4 * kPi * kPi);
  auto [p, q] = rational_approximation(out.value, std::max(q_candidate, 64L));
  out.p = p;
  out.q = q;
  out.residual = std::abs(out.value - static_cast<double>(p) / static_cast<double>(q));
  out.precondition_met = true;
  for (const auto& c : states.front().components)
    out.precondition_met = out.precondition_met && std::abs(c.m.imag()) < 1e-12 && c.m.real() > 0.0;
  if (out.residual > 1e-5)
    throw Error(ErrorKind::ReconstructionFailure,
                "no rational with denominator <= " + std::to_string(std::max(q_candidate, 64L)) + " within 1e-5 of " +
                    std::to_string(out.value));
  return out;
}

double volume_along(const std::vector<PathState>& states, const std::vector<int>& epsilons, double volume,
                    double tol) {
  return volume + 2.0 * integrate_eta(states, epsilons, tol).value;
}

double special_cs_along(const std::vector<PathState>& states, const std::vector<int>& epsilons, long q, double cs,
                        double tol) {
  return 4 * kPi * kPi * cs - static_cast<double>(q) * integrate_xi(states, epsilons, tol).value;
}

Calibration calibrate_epsilon(const EigenCurve& curve, double a, int samples) {
  auto tri = oracle::find_triangulation(curve.code.p, curve.code.q);
  if (!curve.hyperbolic || !tri)
    throw Error(ErrorKind::NoHyperbolicSolution, "no volume oracle for this curve");
  EigenCurve c = curve;
  c.epsilon = 1;
  PathSpec spec;
  spec.samples = samples;
  Segment seg;
  seg.kind = Segment::Kind::Exp;
  seg.from = std::log(c.basepoint.m);
  seg.to = seg.from + cd(0.0, kPi * a);
  spec.components.push_back({{seg}});
  auto states = track_path({c}, spec, basepoint_state({c}));
  Calibration cal;
  cal.eta_integral = integrate_eta(states, {1}).value;
  std::vector<cd> targets(static_cast<std::size_t>(tri->cusps), 0.0);
  targets[static_cast<std::size_t>(std::min(curve.component, tri->cusps) - 1)] = cd(0.0, 2 * kPi * a);
  const double v0 = oracle::solve_gluing(*tri, std::vector<cd>(targets.size(), 0.0)).volume;
  cal.oracle_change = oracle::solve_gluing(*tri, targets).volume - v0;
  cal.epsilon = cal.oracle_change * cal.eta_integral >= 0.0 ? 1 : -1;
  cal.mismatch = std::abs(2.0 * cal.epsilon * cal.eta_integral - cal.oracle_change);
  return cal;
}

void write_csv(std::ostream& out, const std::vector<PathState>& states, double volume) {
  if (states.empty()) return;
  char buf[512];
  const std::size_t n = states.front().components.size();
  for (std::size_t c = 0; c < n; ++c) {
    out << "# component " << c + 1 << "\n";
    out << "t,l_re,l_im,m_re,m_im,eta_acc,xi_acc,V\n";
    for (const auto& s : states) {
      double eta_total = 0.0;
      for (const auto& x : s.components) eta_total += x.eta_acc;
      const auto& x = s.components[c];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, x.l.real(), x.l.imag(),
                    x.m.real(), x.m.imag(), x.eta_acc, x.xi_acc, volume + 2.0 * eta_total);
      out << buf;
    }
  }
}

}  // namespace charvar::regulator
