#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace charvar::oracle {

/// Ideal triangulation with log-form gluing equations. Each row holds three
/// integers per tetrahedron acting on (log z, log 1/(1-z), log(1-1/z)).
/// Edge rows sum to 2 pi i and cusp rows to the cusp holonomy.
struct Triangulation {
  std::string name;
  /// Two-bridge codes (p, q) whose complement this triangulates.
  std::vector<std::pair<int, int>> codes;
  int tetrahedra = 0;
  int cusps = 0;
  Eigen::MatrixXi edges;
  Eigen::MatrixXi meridians;
  Eigen::MatrixXi longitudes;
  /// Shapes of the complete structure, used as the Newton seed.
  std::vector<std::complex<double>> seed;
};

Triangulation parse_triangulation(std::string_view text);
Triangulation load_triangulation(const std::string& path);

/// The data files compiled into the library.
const std::vector<Triangulation>& builtin_triangulations();
std::optional<Triangulation> find_triangulation(int p, int q);
const Triangulation& triangulation_by_name(std::string_view name);

struct GluingSolution {
  std::vector<std::complex<double>> shapes;
  double volume = 0.0;
  /// Max-norm of the gluing equations at the returned shapes.
  double residual = 0.0;
  int iterations = 0;
};

/// Damped Gauss-Newton on the log-gluing equations, starting from the seed.
/// meridian_targets holds the meridian log-holonomy per cusp (0 = complete).
/// Throws divergence when the solve leaves the basin.
GluingSolution solve_gluing(const Triangulation& tri,
                            const std::vector<std::complex<double>>& meridian_targets);

/// Log-holonomies of (meridian, longitude) per cusp at the given shapes.
std::vector<std::pair<std::complex<double>, std::complex<double>>> cusp_holonomies(
    const Triangulation& tri, const std::vector<std::complex<double>>& shapes);

/// d(log longitude)/d(log meridian) per cusp at a solution, deforming that
/// cusp only. At the complete structure this is the cusp shape.
std::vector<std::complex<double>> cusp_shapes(const Triangulation& tri,
                                              const std::vector<std::complex<double>>& shapes);

}  // namespace charvar::oracle
