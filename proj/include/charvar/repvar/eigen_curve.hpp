#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/poly/multipoly.hpp"
#include "charvar/repvar/rep_family.hpp"

namespace charvar::repvar {

using cd = std::complex<double>;

/// A solution of the parabolic system: meridian of the chosen component
/// at eigenvalue +1, every other meridian at its slice sign.
struct Basepoint {
  cd l{1.0, 0.0};
  cd m{1.0, 0.0};
  cd u{0.0, 0.0};
  /// dl/dm along the branch through this point, from the representation.
  cd slope{0.0, 0.0};
  /// Longitude translation over meridian translation at this point.
  cd cusp_shape{0.0, 0.0};
  /// Volume of the complete structure when the cusp shape matched the
  /// built-in triangulation, otherwise 0.
  double volume = 0.0;
  bool oracle_matched = false;
};

struct EigenCurve {
  std::string link_name;
  TwoBridgeCode code;
  /// 1-based.
  int component = 1;
  /// One sign per other component.
  std::vector<int> slice_signs;
  /// Squarefree polynomial in l and m.
  MultiPoly poly;
  int epsilon = 1;
  bool epsilon_calibrated = false;
  /// False when the basepoint is a fallback parabolic point rather than a
  /// verified discrete faithful one.
  bool hyperbolic = false;
  Basepoint basepoint;
};

/// Checks component index and slice signs against the family.
void validate_slice(const RepFamily& fam, int component, const std::vector<int>& slice_signs);

/// All parabolic solutions with u != 0, in root order.
std::vector<Basepoint> parabolic_points(const RepFamily& fam, int component,
                                        const std::vector<int>& slice_signs);

/// The discrete faithful parabolic point. Throws no-hyperbolic-solution
/// when no candidate has positive oracle volume (or, for codes without a
/// built-in triangulation, when every candidate is real).
Basepoint basepoint(const RepFamily& fam, int component, const std::vector<int>& slice_signs);

/// Res_u(riley, l * den - num) on the slice, with monomial factors and
/// factors free of l or of m removed, made squarefree, in variables l, m.
MultiPoly eliminate_longitude(const RepFamily& fam, int component, const std::vector<int>& slice_signs);

EigenCurve eigen_curve(const RepFamily& fam, int component, const std::vector<int>& slice_signs,
                       bool require_hyperbolic = false);

/// `key: value` text; round-trips the polynomial exactly and floats to 17
/// significant digits.
/// Eigenvalue pairs (l, m) of irreducible representations on the slice,
/// found by solving the relator for u at seeded random m and reading l off
/// the longitude matrix.
std::vector<std::pair<cd, cd>> sample_representations(const EigenCurve& curve, int count, unsigned seed);

std::string format_curve(const EigenCurve& curve);
EigenCurve parse_curve(std::string_view text);
EigenCurve load_curve(const std::string& path);
void save_curve(const EigenCurve& curve, const std::string& path);

/// `{"type": "two_bridge", "p": 5, "q": 3, "name": "figure-eight"}`.
TwoBridgeCode parse_link(std::string_view json);
TwoBridgeCode load_link(const std::string& path);

}  // namespace charvar::repvar
