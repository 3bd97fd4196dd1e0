#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "charvar/regulator/path.hpp"
#include "charvar/repvar/eigen_curve.hpp"

namespace charvar::regulator {

using repvar::EigenCurve;

/// A point of one eigenvalue curve with continuously tracked logarithms.
struct ComponentState {
  cd l{1.0, 0.0}, m{1.0, 0.0};
  cd log_l{0.0, 0.0}, log_m{0.0, 0.0};
  /// Running trapezoid sums of eta and xi (epsilon included).
  double eta_acc = 0.0, xi_acc = 0.0;
};

struct PathState {
  double t = 0.0;
  std::vector<ComponentState> components;
};

/// Basepoint of every curve, log l on the principal branch, log m = log m0.
PathState basepoint_state(const std::vector<EigenCurve>& curves);

struct TrackOptions {
  /// Bisection depth before a step is declared to hit a branch point.
  int max_bisections = 40;
};

/// Predictor-corrector continuation of every component along its meridian
/// path. Each sample step predicts along the tangent (the basepoint slope
/// at a singular start), corrects l by damped Newton, and accepts the
/// result only if it is the root of A(., m) nearest the prediction by a
/// clear margin and both arguments moved by less than pi/2; otherwise the
/// step is bisected. Fills eta_acc and xi_acc with running sums.
/// Throws branch-point, divisor-collision, open-path (closed spec whose
/// tracked l does not return).
std::vector<PathState> track_path(const std::vector<EigenCurve>& curves, const PathSpec& spec,
                                  const PathState& start, const TrackOptions& options = {});

/// Composite trapezoid value extrapolated from strides 1, 2 and 4.
struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

/// Throw insufficient-samples when the error estimate exceeds tol.
Quadrature integrate_eta(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol = 1e-6);
Quadrature integrate_xi(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol = 1e-6);

/// exp(sum_i (-eps_i / 2 pi i)(int log l_i dm_i/m_i - log m_i(t0) int dl_i/l_i)).
/// Throws open-path unless the states return to the start.
cd monodromy(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol = 1e-6);

/// Sum_i eps_i int log l_i dm_i/m_i over the states, extrapolated.
cd log_l_dlog_m(const std::vector<PathState>& states, const std::vector<int>& epsilons, double tol = 1e-6);

struct Quantization {
  long p = 0;
  long q = 1;
  double value = 0.0;
  double residual = 0.0;
  /// Every basepoint meridian eigenvalue is real and positive.
  bool precondition_met = false;
};

/// -xi / 4 pi^2, with xi corrected by eps/2 darg l darg m per component so
/// that the value is additive under composing loops, rounded by continued fractions to a rational with
/// denominator at most max(q_candidate, 64). Throws open-path for open
/// loops and reconstruction-failure when the residual exceeds 1e-5.
Quantization quantization_check(const std::vector<PathState>& states, const std::vector<int>& epsilons,
                                long q_candidate, double tol = 1e-6);

/// Best rational approximation with bounded denominator.
std::pair<long, long> rational_approximation(double x, long max_den);

/// Vol + 2 int eta.
double volume_along(const std::vector<PathState>& states, const std::vector<int>& epsilons, double volume,
                    double tol = 1e-6);

/// 4 pi^2 cs + q sum_i eps_i int (log|m_i| dlog|l_i| + arg l_i darg m_i).
double special_cs_along(const std::vector<PathState>& states, const std::vector<int>& epsilons, long q,
                        double cs = 0.0, double tol = 1e-6);

struct Calibration {
  int epsilon = 1;
  double eta_integral = 0.0;
  double oracle_change = 0.0;
  double mismatch = 0.0;
};

/// Tracks m = exp(i pi a t), t in [0, 1], from the basepoint and picks the
/// sign for which Vol + 2 eps int eta matches the gluing-equation volume at
/// the end. Throws no-hyperbolic-solution for curves without an oracle.
Calibration calibrate_epsilon(const EigenCurve& curve, double a = 0.01, int samples = 64);

/// CSV rows `t,l_re,l_im,m_re,m_im,eta_acc,xi_acc,V` per component, each
/// block headed by `# component i`.
void write_csv(std::ostream& out, const std::vector<PathState>& states, double volume);

}  // namespace charvar::regulator
