#include "charvar/oracle/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "charvar/error.hpp"

namespace charvar::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTerms = 48;

// zeta(2k), k = 1..kTerms: direct sum plus Euler-Maclaurin tail.
const std::array<double, kTerms + 1>& zeta_even() {
  static const auto table = [] {
    std::array<double, kTerms + 1> z{};
    z[1] = kPi * kPi / 6.0;
    const int n_max = 200;
    for (int k = 2; k <= kTerms; ++k) {
      const double s = 2.0 * k;
      long double sum = 0.0L;
      for (int n = n_max - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
      long double N = n_max;
      sum += std::pow(N, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(N, -s) +
             s / 12.0L * std::pow(N, -s - 1.0L);
      z[static_cast<std::size_t>(k)] = static_cast<double>(sum);
    }
    return z;
  }();
  return table;
}

// Li2(z) = sum_n B_n w^(n+1) / (n+1)!, w = -log(1 - z), |w| < 2 pi.
std::complex<double> dilog_bernoulli(std::complex<double> z) {
  const auto& zeta = zeta_even();
  std::complex<double> w = -std::log(1.0 - z);
  std::complex<double> w2 = w * w;
  std::complex<double> sum = w - 0.25 * w2;
  std::complex<double> wp = w;
  const double two_pi_sq = 4.0 * kPi * kPi;
  double scale = 1.0;
  for (int k = 1; k <= kTerms; ++k) {
    wp *= w2;
    scale /= two_pi_sq;
    double coeff = 2.0 * zeta[static_cast<std::size_t>(k)] * scale / (2.0 * k + 1.0);
    std::complex<double> term = (k % 2 == 1 ? coeff : -coeff) * wp;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bloch_wigner_reduced(std::complex<double> z, int depth) {
  if (depth > 8) throw Error(ErrorKind::Internal, "Bloch-Wigner reduction did not terminate");
  if (std::abs(z) > 1.0) return -bloch_wigner_reduced(1.0 / z, depth + 1);
  if (z.real() > 0.5) return -bloch_wigner_reduced(1.0 - z, depth + 1);
  if (std::abs(z) == 0.0) return 0.0;
  return dilog_bernoulli(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

}  // namespace

double clausen(double x) {
  const double two_pi = 2.0 * kPi;
  x = std::remainder(x, two_pi);  // (-pi, pi]
  if (x == 0.0) return 0.0;
  const auto& zeta = zeta_even();
  double r = x / two_pi;
  double r2 = r * r;
  double p = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= kTerms; ++k) {
    p *= r2;
    double term = zeta[static_cast<std::size_t>(k)] / (k * (2.0 * k + 1.0)) * p;
    sum += term;
    if (term < 1e-18) break;
  }
  return x - x * std::log(std::abs(x)) + x * sum;
}

double lobachevsky(double theta) { return 0.5 * clausen(2.0 * theta); }

std::complex<double> dilog(std::complex<double> z) {
  const double zeta2 = kPi * kPi / 6.0;
  if (z == 0.0) return 0.0;
  if (z == 1.0) return zeta2;
  if (std::abs(z) > 1.0) {
    std::complex<double> lg = std::log(-z);
    return -dilog(1.0 / z) - zeta2 - 0.5 * lg * lg;
  }
  if (z.real() > 0.5) return -dilog_bernoulli(1.0 - z) + zeta2 - std::log(z) * std::log(1.0 - z);
  return dilog_bernoulli(z);
}

double bloch_wigner(std::complex<double> z) {
  if (z == 0.0 || z == 1.0) throw Error(ErrorKind::SingularInput, "Bloch-Wigner function at 0 or 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::SingularInput, "Bloch-Wigner function at a non-finite point");
  return bloch_wigner_reduced(z, 0);
}

}  // namespace charvar::oracle
