#include "charvar/numeric/roots.hpp"

#include <Eigen/Eigenvalues>

#include "charvar/error.hpp"

namespace charvar::numeric {

cd horner(const std::vector<cd>& coeffs, cd x) {
  cd v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

cd horner_derivative(const std::vector<cd>& coeffs, cd x) {
  cd v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) v = v * x + static_cast<double>(k) * coeffs[k];
  return v;
}

std::vector<cd> polynomial_roots(std::vector<cd> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw Error(ErrorKind::DegenerateInput, "roots of the zero polynomial");
  const Eigen::Index n = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Divergence, "companion eigenvalues failed");
  std::vector<cd> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    cd r = es.eigenvalues()(i);
    for (int k = 0; k < 3; ++k) {
      cd d = horner_derivative(coeffs, r);
      if (std::abs(d) == 0.0) break;
      cd step = horner(coeffs, r) / d;
      if (!(std::abs(step) < 1e-3 * (1.0 + std::abs(r)))) break;
      r -= step;
    }
    roots.push_back(r);
  }
  return roots;
}

}  // namespace charvar::numeric
