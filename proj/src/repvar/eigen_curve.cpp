#include "charvar/repvar/eigen_curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "charvar/error.hpp"
#include "charvar/numeric/bivariate.hpp"
#include "charvar/numeric/roots.hpp"
#include "charvar/oracle/triangulation.hpp"
#include "charvar/poly/algorithms.hpp"
#include "json.hpp"

namespace charvar::repvar {

using poly::Rat;

namespace {

struct Slice {
  std::string var;    // eigenvalue variable of the chosen component
  char generator;     // its meridian generator
  std::map<std::string, int> fixed;  // other meridian variables -> sign
};

Slice make_slice(const RepFamily& fam, int component, const std::vector<int>& signs) {
  validate_slice(fam, component, signs);
  Slice s;
  s.generator = fam.pres.meridians[static_cast<std::size_t>(component - 1)];
  s.var = fam.var_of(s.generator);
  std::size_t k = 0;
  for (const auto& v : fam.meridian_vars)
    if (v != s.var) s.fixed[v] = signs[k++];
  return s;
}

MultiPoly on_slice(const MultiPoly& p, const Slice& s) {
  MultiPoly out = p;
  for (const auto& [v, sign] : s.fixed) out = out.substitute(v, Rat(sign));
  return out.trimmed();
}

MultiPoly strip_monomial(const MultiPoly& p) {
  poly::Exponents e = p.monomial_content();
  for (auto& x : e) x = -x;
  return p.shifted(e);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cd z) { return fmt(z.real()) + " " + fmt(z.imag()); }

cd parse_complex(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  double re = 0, im = 0;
  if (!(in >> re >> im)) throw Error(ErrorKind::Parse, "bad complex value for '" + key + "'");
  return {re, im};
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw Error(ErrorKind::Parse, "bad boolean for '" + key + "'");
}

bool same_shape(cd a, cd b) {
  const double tol = 1e-6 * std::max(1.0, std::abs(b));
  for (cd c : {b, -b, std::conj(b), -std::conj(b)})
    if (std::abs(a - c) < tol) return true;
  return false;
}

}  // namespace

void validate_slice(const RepFamily& fam, int component, const std::vector<int>& slice_signs) {
  const int n = static_cast<int>(fam.meridian_vars.size());
  if (component < 1 || component > n)
    throw Error(ErrorKind::Usage, "component must be in 1.." + std::to_string(n));
  if (static_cast<int>(slice_signs.size()) != n - 1)
    throw Error(ErrorKind::Usage, "need " + std::to_string(n - 1) + " slice sign(s)");
  for (int s : slice_signs)
    if (s != 1 && s != -1) throw Error(ErrorKind::Usage, "slice signs must be +1 or -1");
}

std::vector<Basepoint> parabolic_points(const RepFamily& fam, int component,
                                        const std::vector<int>& slice_signs) {
  Slice s = make_slice(fam, component, slice_signs);
  const MultiPoly phi = riley_polynomial(fam);
  MultiPoly slice_phi = on_slice(phi, s);
  MultiPoly at_one = slice_phi.substitute(s.var, Rat(1)).trimmed();
  std::vector<cd> coeffs;
  for (const auto& c : at_one.coefficients_in(fam.correlation_var)) coeffs.push_back(c.constant_term().to_double());

  const Word& lw = fam.pres.longitudes[static_cast<std::size_t>(component - 1)];
  ScaledMatrix lam = word_matrix(fam, lw);
  MultiPoly num = on_slice(lam.at(0, 0), s), den = on_slice(lam.denominator(), s);
  MultiPoly phi_m = slice_phi.derivative(s.var), phi_u = slice_phi.derivative(fam.correlation_var);

  std::vector<Basepoint> out;
  for (cd u : numeric::polynomial_roots(coeffs)) {
    if (std::abs(u) < 1e-9) continue;
    Values at{{fam.correlation_var, u}, {s.var, 1.0}};
    for (const auto& [v, sign] : s.fixed) at[v] = static_cast<double>(sign);
    Eigen::Matrix2cd L = word_matrix_numeric(fam, lw, at);
    Eigen::Matrix2cd G = word_matrix_numeric(fam, power(s.generator, 1), at);
    Basepoint bp;
    bp.u = u;
    bp.m = 1.0;
    bp.l = L(0, 0);
    bp.cusp_shape = s.generator == 'a' ? (L(0, 1) / L(0, 0)) / (G(0, 1) / G(0, 0))
                                       : (L(1, 0) / L(0, 0)) / (G(1, 0) / G(0, 0));
    cd pu = phi_u.evaluate(at);
    if (std::abs(pu) > 1e-12) {
      cd du = -phi_m.evaluate(at) / pu;
      cd n = num.evaluate(at), d = den.evaluate(at);
      cd dn = num.derivative(s.var).evaluate(at) + num.derivative(fam.correlation_var).evaluate(at) * du;
      cd dd = den.derivative(s.var).evaluate(at);
      bp.slope = (dn * d - n * dd) / (d * d);
    } else {
      bp.slope = {std::nan(""), std::nan("")};
    }
    out.push_back(bp);
  }
  return out;
}

Basepoint basepoint(const RepFamily& fam, int component, const std::vector<int>& slice_signs) {
  std::vector<Basepoint> cands = parabolic_points(fam, component, slice_signs);
  const auto& code = fam.pres.code;
  auto tri = oracle::find_triangulation(code.p, code.q);
  std::optional<Basepoint> best;
  if (tri) {
    auto sol = oracle::solve_gluing(*tri, std::vector<cd>(static_cast<std::size_t>(tri->cusps), 0.0));
    auto shapes = oracle::cusp_shapes(*tri, sol.shapes);
    for (auto& c : cands) {
      if (std::abs(c.u.imag()) < 1e-9) continue;
      for (cd t : shapes)
        if (same_shape(c.cusp_shape, t)) {
          c.oracle_matched = true;
          c.volume = sol.volume;
        }
      if (!c.oracle_matched) continue;
      if (!best || (c.cusp_shape.imag() > 0 && best->cusp_shape.imag() <= 0)) best = c;
    }
  } else {
    for (const auto& c : cands) {
      if (std::abs(c.u.imag()) < 1e-9) continue;
      if (!best || (c.cusp_shape.imag() > 0 && best->cusp_shape.imag() <= 0)) best = c;
    }
  }
  if (!best || (tri && !(best->volume > 0.0)))
    throw Error(ErrorKind::NoHyperbolicSolution,
                "no parabolic representation of " + std::to_string(code.p) + "/" + std::to_string(code.q) +
                    " has positive volume");
  return *best;
}

MultiPoly eliminate_longitude(const RepFamily& fam, int component, const std::vector<int>& slice_signs) {
  Slice s = make_slice(fam, component, slice_signs);
  MultiPoly phi = on_slice(riley_polynomial(fam), s);
  ScaledMatrix lam = word_matrix(fam, fam.pres.longitudes[static_cast<std::size_t>(component - 1)]);
  MultiPoly num = on_slice(lam.at(0, 0), s), den = on_slice(lam.denominator(), s);
  MultiPoly l = MultiPoly::variable("l");
  MultiPoly eq = l * den - num;
  if (!eq.involves(fam.correlation_var))
    throw Error(ErrorKind::EliminationCollapse, "longitude eigenvalue does not depend on u");
  MultiPoly a = poly::resultant(phi, eq, fam.correlation_var).trimmed();
  if (a.is_zero()) throw Error(ErrorKind::EliminationCollapse, "resultant vanishes identically");
  a = strip_monomial(a);
  if (a.involves("l")) a = poly::divide_exact(a, poly::content_in(a, "l"));
  if (a.involves(s.var)) a = poly::divide_exact(a, poly::content_in(a, s.var));
  a = poly::squarefree_part(a).primitive_integer().trimmed();
  if (s.var != "m") a = a.rename(s.var, "m");
  if (!a.involves("l") || !a.involves("m"))
    throw Error(ErrorKind::NoGeometricFactor, "eliminant has no factor involving both l and m");
  if (a.leading_coefficient() < Rat(0)) a = -a;
  return a;
}

EigenCurve eigen_curve(const RepFamily& fam, int component, const std::vector<int>& slice_signs,
                       bool require_hyperbolic) {
  EigenCurve curve;
  curve.code = fam.pres.code;
  curve.link_name = fam.pres.code.name;
  curve.component = component;
  curve.slice_signs = slice_signs;
  curve.poly = eliminate_longitude(fam, component, slice_signs);
  try {
    curve.basepoint = basepoint(fam, component, slice_signs);
    curve.hyperbolic = true;
  } catch (const Error& e) {
    if (require_hyperbolic || e.kind() != ErrorKind::NoHyperbolicSolution) throw;
    auto cands = parabolic_points(fam, component, slice_signs);
    if (cands.empty()) throw;
    auto it = std::find_if(cands.begin(), cands.end(), [](const Basepoint& b) { return b.u.imag() > 1e-9; });
    curve.basepoint = it == cands.end() ? cands.front() : *it;
    curve.hyperbolic = false;
  }
  numeric::Bivariate f(curve.poly, "l", "m");
  if (!(f.scaled_residual(curve.basepoint.l, curve.basepoint.m) < 1e-10))
    throw Error(ErrorKind::NoGeometricFactor, "eigenvalue curve misses the basepoint");
  return curve;
}

std::vector<std::pair<cd, cd>> sample_representations(const EigenCurve& curve, int count, unsigned seed) {
  RepFamily fam = rep_family(curve.code);
  const MultiPoly phi = riley_polynomial(fam);
  const std::size_t comp = static_cast<std::size_t>(curve.component - 1);
  const char gen = fam.pres.meridians[comp];
  const std::string var = fam.var_of(gen);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 1.8), angle(-3.0, 3.0);
  std::vector<std::pair<cd, cd>> out;
  while (static_cast<int>(out.size()) < count) {
    const cd m = std::polar(radius(rng), angle(rng));
    Values at{{var, m}};
    std::size_t k = 0;
    for (const auto& v : fam.meridian_vars)
      if (v != var) at[v] = static_cast<double>(curve.slice_signs.at(k++));
    std::vector<cd> coeffs;
    for (const auto& c : phi.coefficients_in(fam.correlation_var)) coeffs.push_back(c.evaluate(at));
    for (cd u : numeric::polynomial_roots(coeffs)) {
      if (static_cast<int>(out.size()) == count) break;
      if (std::abs(u) < 1e-9) continue;  // reducible
      at[fam.correlation_var] = u;
      out.emplace_back(word_matrix_numeric(fam, fam.pres.longitudes[comp], at)(0, 0), m);
    }
  }
  return out;
}

std::string format_curve(const EigenCurve& c) {
  std::ostringstream out;
  out << "link: " << c.link_name << "\n";
  out << "code: " << c.code.p << "/" << c.code.q << "\n";
  out << "component: " << c.component << "\n";
  out << "slice_signs:";
  for (int s : c.slice_signs) out << (s > 0 ? " +1" : " -1");
  out << "\n";
  out << "epsilon: " << c.epsilon << "\n";
  out << "epsilon_calibrated: " << (c.epsilon_calibrated ? "true" : "false") << "\n";
  out << "hyperbolic: " << (c.hyperbolic ? "true" : "false") << "\n";
  out << "basepoint_l: " << fmt(c.basepoint.l) << "\n";
  out << "basepoint_m: " << fmt(c.basepoint.m) << "\n";
  out << "basepoint_u: " << fmt(c.basepoint.u) << "\n";
  out << "basepoint_slope: " << fmt(c.basepoint.slope) << "\n";
  out << "cusp_shape: " << fmt(c.basepoint.cusp_shape) << "\n";
  out << "oracle_volume: " << fmt(c.basepoint.volume) << "\n";
  out << "oracle_matched: " << (c.basepoint.oracle_matched ? "true" : "false") << "\n";
  out << "poly: " << c.poly.to_string() << "\n";
  return out.str();
}

EigenCurve parse_curve(std::string_view text) {
  EigenCurve c;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_poly = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "curve line without key: '" + line + "'");
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    auto b = value.find_first_not_of(' ');
    value = b == std::string::npos ? "" : value.substr(b);
    try {
      if (key == "link") c.link_name = value;
      else if (key == "code") {
        auto slash = value.find('/');
        if (slash == std::string::npos) throw Error(ErrorKind::Parse, "bad code '" + value + "'");
        c.code = {std::stoi(value.substr(0, slash)), std::stoi(value.substr(slash + 1)), c.link_name};
      } else if (key == "component") c.component = std::stoi(value);
      else if (key == "slice_signs") {
        std::istringstream vs(value);
        int s;
        while (vs >> s) c.slice_signs.push_back(s);
      } else if (key == "epsilon") c.epsilon = std::stoi(value);
      else if (key == "epsilon_calibrated") c.epsilon_calibrated = parse_bool(key, value);
      else if (key == "hyperbolic") c.hyperbolic = parse_bool(key, value);
      else if (key == "basepoint_l") c.basepoint.l = parse_complex(key, value);
      else if (key == "basepoint_m") c.basepoint.m = parse_complex(key, value);
      else if (key == "basepoint_u") c.basepoint.u = parse_complex(key, value);
      else if (key == "basepoint_slope") c.basepoint.slope = parse_complex(key, value);
      else if (key == "cusp_shape") c.basepoint.cusp_shape = parse_complex(key, value);
      else if (key == "oracle_volume") c.basepoint.volume = std::stod(value);
      else if (key == "oracle_matched") c.basepoint.oracle_matched = parse_bool(key, value);
      else if (key == "poly") {
        c.poly = MultiPoly::parse(value);
        have_poly = true;
      } else throw Error(ErrorKind::Parse, "unknown curve key '" + key + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "bad value for '" + key + "'");
    }
  }
  c.code.name = c.link_name;
  if (!have_poly) throw Error(ErrorKind::Parse, "curve file has no poly line");
  if (c.epsilon != 1 && c.epsilon != -1) throw Error(ErrorKind::Parse, "epsilon must be 1 or -1");
  for (const auto& v : c.poly.support_variables())
    if (v != "l" && v != "m") throw Error(ErrorKind::Parse, "curve polynomial must be in l and m");
  return c;
}

EigenCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open curve file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str());
}

void save_curve(const EigenCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write curve file '" + path + "'");
  out << format_curve(curve);
}

TwoBridgeCode parse_link(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("link file: ") + e.what());
  }
  if (!j.is_object() || j.value("type", "") != "two_bridge")
    throw Error(ErrorKind::Parse, "link file must have \"type\": \"two_bridge\"");
  if (!j.contains("p") || !j.contains("q") || !j["p"].is_number_integer() || !j["q"].is_number_integer())
    throw Error(ErrorKind::Parse, "link file needs integer p and q");
  TwoBridgeCode code{j["p"].get<int>(), j["q"].get<int>(), j.value("name", "")};
  validate(code);
  return code;
}

TwoBridgeCode load_link(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open link file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_link(ss.str());
}

}  // namespace charvar::repvar
