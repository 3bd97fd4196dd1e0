#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "charvar/error.hpp"
#include "charvar/k2/star.hpp"
#include "charvar/k2/symbol.hpp"
#include "charvar/k2/tame.hpp"
#include "charvar/numeric/bivariate.hpp"
#include "charvar/oracle/triangulation.hpp"
#include "charvar/poly/newton.hpp"
#include "charvar/regulator/regulator.hpp"
#include "charvar/repvar/eigen_curve.hpp"

using namespace charvar;
using regulator::cd;

namespace {

struct Globals {
  unsigned seed = 0;
  double tol = 1e-6;
  std::optional<int> samples;
  std::string out;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no negative zero
  return buf;
}

std::string num(cd z) { return num(z.real()) + " " + num(z.imag()); }

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
    if (token == "+" || token == "+1" || token == "1") out.push_back(1);
    else if (token == "-" || token == "-1") out.push_back(-1);
    else if (!token.empty()) throw Error(ErrorKind::Usage, "slice sign must be + or -, got '" + token + "'");
  }
  return out;
}

cd parse_complex_arg(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw Error(ErrorKind::Usage, "bad complex number '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw Error(ErrorKind::Usage, "complex numbers are written re,im");
  }
  return {re, im};
}

// "[a, b; c, d]" with rational-function entries
k2::Matrix2 parse_matrix(const std::string& text) {
  std::string s = text;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(ErrorKind::Parse, "matrix must be written [a, b; c, d]");
  s = s.substr(1, s.size() - 2);
  k2::Matrix2 m;
  std::size_t k = 0;
  std::istringstream rows(s);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      if (k == 4) throw Error(ErrorKind::Parse, "matrix has more than four entries");
      m[k++] = k2::RatFunc::parse(cell);
    }
  }
  if (k != 4) throw Error(ErrorKind::Parse, "matrix needs four entries");
  return m;
}

std::vector<repvar::EigenCurve> load_curves(const std::vector<std::string>& paths) {
  std::vector<repvar::EigenCurve> out;
  for (const auto& p : paths) out.push_back(repvar::load_curve(p));
  return out;
}

std::vector<int> epsilons_of(const std::vector<repvar::EigenCurve>& curves) {
  std::vector<int> out;
  for (const auto& c : curves) out.push_back(c.epsilon);
  return out;
}

std::string epsilon_note(const std::vector<repvar::EigenCurve>& curves) {
  std::string s;
  for (const auto& c : curves) {
    if (!s.empty()) s += ", ";
    s += std::to_string(c.epsilon) + (c.epsilon_calibrated ? " (calibrated against the gluing-equation volume)"
                                                            : " (default, uncalibrated)");
  }
  return s;
}

regulator::PathSpec load_spec(const std::string& path, const Globals& g) {
  regulator::PathSpec spec = regulator::load_path_spec(path);
  if (g.samples) spec.samples = *g.samples;
  return spec;
}

struct Tracked {
  std::vector<regulator::PathState> approach;
  std::vector<regulator::PathState> states;
};

Tracked track(const std::vector<repvar::EigenCurve>& curves, const regulator::PathSpec& spec) {
  Tracked t;
  t.approach.push_back(regulator::basepoint_state(curves));
  if (!spec.approach.empty()) t.approach = regulator::track_path(curves, spec.approach_path(), t.approach.front());
  t.states = regulator::track_path(curves, spec, t.approach.back());
  return t;
}

long order_candidate(const std::vector<repvar::EigenCurve>& curves, std::string& note) {
  long q = 1;
  try {
    for (const auto& c : curves) q = std::lcm(q, k2::symbol_order_candidate(c.poly));
    note = "symbol order candidate";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Untempered) throw;
    q = 1;
    note = "curve not tempered, default";
  }
  return q;
}

void summary_line(std::ostream& out, const std::string& key, const std::string& value) {
  out << "# " << key << ": " << value << "\n";
}

void quantization_lines(std::ostream& out, const std::vector<regulator::PathState>& states,
                        const std::vector<int>& eps, long q_candidate, double tol) {
  const cd m = regulator::monodromy(states, eps, tol);
  summary_line(out, "monodromy", num(m));
  summary_line(out, "monodromy_abs_minus_one", num(std::abs(m) - 1.0));
  regulator::Quantization q = regulator::quantization_check(states, eps, q_candidate, tol);
  summary_line(out, "quantization", std::to_string(q.p) + "/" + std::to_string(q.q));
  summary_line(out, "quantization_value", num(q.value));
  summary_line(out, "quantization_residual", num(q.residual));
  summary_line(out, "monodromy_power_q_minus_one", num(std::abs(std::pow(m, static_cast<int>(q.q)) - 1.0)));
  summary_line(out, "meridian_real_positive", q.precondition_met ? "true" : "false");
}

// --- subcommands -----------------------------------------------------------

void cmd_eigenvariety(const Globals& g, const std::string& link, int component, const std::string& signs,
                      bool require_hyperbolic, bool calibrate, int check) {
  repvar::TwoBridgeCode code = repvar::load_link(link);
  repvar::RepFamily fam = repvar::rep_family(code);
  std::vector<int> slice = parse_signs(signs);
  if (slice.empty()) slice.assign(static_cast<std::size_t>(code.component_count() - 1), 1);
  repvar::EigenCurve curve = repvar::eigen_curve(fam, component, slice, require_hyperbolic);
  if (calibrate && curve.hyperbolic && curve.basepoint.oracle_matched) {
    curve.epsilon = regulator::calibrate_epsilon(curve).epsilon;
    curve.epsilon_calibrated = true;
  }
  Output out(g.out);
  auto np = poly::newton_polygon(curve.poly);
  std::string verts;
  for (const auto& v : np.vertices) verts += " (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
  out.stream() << "# newton_polygon (" << np.variables[0] << ", " << np.variables[1] << "):" << verts << "\n";
  if (check > 0) {
    numeric::Bivariate f(curve.poly, "l", "m");
    double worst = 0.0;
    for (const auto& [l, m] : repvar::sample_representations(curve, check, g.seed))
      worst = std::max(worst, f.scaled_residual(l, m));
    out.stream() << "# check: " << check << " representations, seed " << g.seed << ", max scaled residual "
                 << num(worst) << "\n";
    if (worst > 1e-8)
      throw Error(ErrorKind::Internal, "curve does not vanish at sampled representations");
  }
  out.stream() << repvar::format_curve(curve);
}

void cmd_tempered(const Globals& g, const std::string& curve_file) {
  repvar::EigenCurve curve = repvar::load_curve(curve_file);
  k2::TemperednessReport r = k2::temperedness(curve.poly);
  Output out(g.out);
  out.stream() << r.to_string();
  if (r.tempered) out.stream() << "order_candidate: " << k2::symbol_order_candidate(curve.poly) << "\n";
}

void cmd_tame(const Globals& g, const std::string& symbol_text, const std::string& curve_file,
              const std::string& var, const std::string& at) {
  k2::FormalSymbol s = k2::FormalSymbol::parse(symbol_text);
  Output out(g.out);
  auto print = [&](const k2::Place& p, const k2::TameValue& t) {
    out.stream() << "place: " << p.describe() << "; value: ";
    if (t.exact) out.stream() << t.exact->to_string();
    else out.stream() << num(t.value);
    out.stream() << "; order: " << (t.order ? std::to_string(*t.order) : std::string("unknown")) << "\n";
  };
  if (!curve_file.empty()) {
    if (!var.empty() || !at.empty()) throw Error(ErrorKind::Usage, "give either --curve or --var/--at");
    for (const k2::Place& p : k2::edge_places(repvar::load_curve(curve_file).poly)) print(p, k2::tame_symbol(s, p));
    return;
  }
  if (var.empty() || at.empty()) throw Error(ErrorKind::Usage, "tame needs --curve or both --var and --at");
  k2::Place p;
  p.var = var;
  if (at == "infinity") p.kind = k2::Place::Kind::LineInfinity;
  else p.point = poly::Rat::parse(at);
  print(p, k2::tame_symbol(s, p));
}

void cmd_symbol_reduce(const Globals& g, const std::string& symbol_text, const std::string& left,
                       const std::string& right) {
  Output out(g.out);
  if (!left.empty() || !right.empty()) {
    if (!symbol_text.empty()) throw Error(ErrorKind::Usage, "give either a symbol or a matrix pair");
    if (left.empty() || right.empty()) throw Error(ErrorKind::Usage, "the star product needs --left and --right");
    k2::FormalSymbol s = k2::star_product(parse_matrix(left), parse_matrix(right));
    out.stream() << k2::symbol_normalize(s).to_string() << "\n";
    out.stream() << "torsion_flag: " << (s.torsion_flag ? "true" : "false") << "\n";
    return;
  }
  if (symbol_text.empty()) throw Error(ErrorKind::Usage, "symbol-reduce needs a symbol or --left/--right");
  out.stream() << k2::symbol_normalize(k2::FormalSymbol::parse(symbol_text)).to_string() << "\n";
}

void cmd_integrate(const Globals& g, const std::vector<std::string>& curve_files, const std::string& path_file,
                   double cs, std::optional<long> q_in) {
  auto curves = load_curves(curve_files);
  auto spec = load_spec(path_file, g);
  auto [approach, states] = track(curves, spec);
  const auto eps = epsilons_of(curves);
  const double volume = curves.front().basepoint.oracle_matched ? curves.front().basepoint.volume : 0.0;
  std::string q_note = "given";
  const long q = q_in ? *q_in : order_candidate(curves, q_note);
  regulator::Quadrature eta0, xi0;
  if (approach.size() > 1) {
    eta0 = regulator::integrate_eta(approach, eps, g.tol);
    xi0 = regulator::integrate_xi(approach, eps, g.tol);
  }
  const auto eta = regulator::integrate_eta(states, eps, g.tol);
  const auto xi = regulator::integrate_xi(states, eps, g.tol);
  const double v_start = volume + 2.0 * eta0.value;
  Output o(g.out);
  std::ostream& out = o.stream();
  regulator::write_csv(out, states, v_start);
  out << "# summary\n";
  summary_line(out, "components", std::to_string(curves.size()));
  summary_line(out, "samples_per_segment", std::to_string(spec.samples));
  summary_line(out, "tolerance", num(g.tol));
  summary_line(out, "epsilon", epsilon_note(curves));
  summary_line(out, "eta_integral", num(eta.value));
  summary_line(out, "eta_error_estimate", num(eta.error));
  summary_line(out, "xi_integral", num(xi.value));
  summary_line(out, "xi_error_estimate", num(xi.error));
  summary_line(out, "oracle_volume",
               curves.front().basepoint.oracle_matched ? num(volume) + " (complete structure, ideal triangulation)"
                                                       : "unavailable, V uses 0");
  if (approach.size() > 1) {
    summary_line(out, "approach_eta_integral", num(eta0.value));
    summary_line(out, "approach_xi_integral", num(xi0.value));
  }
  summary_line(out, "V", num(v_start + 2.0 * eta.value));
  summary_line(out, "cs", num(cs) + (cs == 0.0 ? " (default, uncalibrated)" : " (given)"));
  summary_line(out, "q", std::to_string(q) + " (" + q_note + ")");
  summary_line(out, "U", num(regulator::special_cs_along(states, eps, q, cs, g.tol) -
                             static_cast<double>(q) * xi0.value));
  summary_line(out, "closed", spec.closed ? "true" : "false");
  if (spec.closed) {
    try {
      quantization_lines(out, states, eps, q, g.tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ReconstructionFailure) throw;
      summary_line(out, "quantization", std::string("failed: ") + e.what());
    }
  }
}

void cmd_volume_path(const Globals& g, const std::string& link, const std::string& path_file,
                     const std::string& signs) {
  repvar::TwoBridgeCode code = repvar::load_link(link);
  repvar::RepFamily fam = repvar::rep_family(code);
  std::vector<int> slice = parse_signs(signs);
  if (slice.empty()) slice.assign(static_cast<std::size_t>(code.component_count() - 1), 1);
  std::vector<repvar::EigenCurve> curves;
  for (int i = 1; i <= code.component_count(); ++i) {
    repvar::EigenCurve c = repvar::eigen_curve(fam, i, slice, true);
    c.epsilon = regulator::calibrate_epsilon(c).epsilon;
    c.epsilon_calibrated = true;
    curves.push_back(std::move(c));
  }
  auto spec = load_spec(path_file, g);
  auto [approach, states] = track(curves, spec);
  const auto eps = epsilons_of(curves);
  const double volume = curves.front().basepoint.volume;
  if (approach.size() > 1) throw Error(ErrorKind::Usage, "volume-path starts at the complete structure; drop the approach");
  Output o(g.out);
  std::ostream& out = o.stream();
  if (spec.is_constant()) states.resize(1);
  out << "t,V\n";
  double acc = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    acc = 0.0;
    for (const auto& c : states[k].components) acc += c.eta_acc;
    out << num(states[k].t) << "," << num(volume + 2.0 * acc) << "\n";
  }
  out << "# summary\n";
  summary_line(out, "link", code.name + " " + std::to_string(code.p) + "/" + std::to_string(code.q));
  summary_line(out, "epsilon", epsilon_note(curves));
  summary_line(out, "oracle_volume", num(volume) + " (complete structure, ideal triangulation)");
  const double v_end = states.size() > 1 ? regulator::volume_along(states, eps, volume, g.tol) : volume;
  summary_line(out, "V_end", num(v_end));
  // the gluing-equation volume at the end point, meridian holonomy 2 log m per cusp
  auto tri = *oracle::find_triangulation(code.p, code.q);
  std::vector<cd> targets(static_cast<std::size_t>(tri.cusps), 0.0);
  for (std::size_t i = 0; i < curves.size() && i < targets.size(); ++i)
    targets[i] = 2.0 * (states.back().components[i].log_m - states.front().components[i].log_m);
  try {
    summary_line(out, "oracle_volume_end", num(oracle::solve_gluing(tri, targets).volume));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Divergence) throw;
    summary_line(out, "oracle_volume_end", "unavailable (gluing solve diverged)");
  }
}

void cmd_quantize(const Globals& g, const std::vector<std::string>& curve_files, const std::string& loop_file,
                  int times, std::optional<long> q_in) {
  auto curves = load_curves(curve_files);
  auto spec = load_spec(loop_file, g);
  if (!spec.closed) throw Error(ErrorKind::OpenPath, "loop file must set \"closed\": true");
  if (times < 1) throw Error(ErrorKind::Usage, "--times must be positive");
  if (times > 1) spec = spec.repeated(times);
  auto states = track(curves, spec).states;
  std::string q_note = "given";
  const long q = q_in ? *q_in : order_candidate(curves, q_note);
  Output o(g.out);
  std::ostream& out = o.stream();
  out << "traversals: " << times << "\n";
  out << "q_candidate: " << q << " (" << q_note << ")\n";
  out << "epsilon: " << epsilon_note(curves) << "\n";
  std::ostringstream lines;
  quantization_lines(lines, states, epsilons_of(curves), q, g.tol);
  std::istringstream in(lines.str());
  std::string line;
  while (std::getline(in, line)) out << line.substr(2) << "\n";
}

void cmd_oracle_volume(const Globals& g, const std::string& link, const std::string& tri_name,
                       const std::vector<std::string>& meridians) {
  oracle::Triangulation tri;
  if (!tri_name.empty()) {
    if (!link.empty()) throw Error(ErrorKind::Usage, "give either a link file or --triangulation");
    tri = oracle::triangulation_by_name(tri_name);
  } else {
    if (link.empty()) throw Error(ErrorKind::Usage, "oracle-volume needs a link file or --triangulation");
    repvar::TwoBridgeCode code = repvar::load_link(link);
    auto found = oracle::find_triangulation(code.p, code.q);
    if (!found) throw Error(ErrorKind::NoHyperbolicSolution, "no triangulation for " + code.name);
    tri = *found;
  }
  std::vector<cd> targets(static_cast<std::size_t>(tri.cusps), 0.0);
  if (meridians.size() > targets.size()) throw Error(ErrorKind::Usage, "more --meridian values than cusps");
  for (std::size_t i = 0; i < meridians.size(); ++i) targets[i] = parse_complex_arg(meridians[i]);
  oracle::GluingSolution sol = oracle::solve_gluing(tri, targets);
  Output o(g.out);
  std::ostream& out = o.stream();
  out << "triangulation: " << tri.name << "\n";
  out << "volume: " << num(sol.volume) << "\n";
  out << "residual: " << num(sol.residual) << "\n";
  for (std::size_t i = 0; i < sol.shapes.size(); ++i) out << "shape_" << i << ": " << num(sol.shapes[i]) << "\n";
  auto shapes = oracle::cusp_shapes(tri, sol.shapes);
  for (std::size_t i = 0; i < shapes.size(); ++i) out << "cusp_shape_" << i << ": " << num(shapes[i]) << "\n";
}

int fail(ErrorKind kind, const std::string& message) {
  std::cerr << "error: " << error_kind_name(kind) << "\ncode: " << exit_code(kind) << "\nmessage: " << message
            << "\n";
  return exit_code(kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue varieties, K2 symbols and regulator integrals of two-bridge knots and links"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  int samples = 0;
  app.add_option("--seed", g.seed, "Seed for sampled representations");
  app.add_option("--tol", g.tol, "Quadrature error tolerance")->check(CLI::PositiveNumber);
  app.add_option("--samples", samples, "Samples per path segment (multiple of 4)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default stdout)");

  std::string link, curve_file, path_file, signs, symbol, var, at, tri_name, left, right;
  std::vector<std::string> curve_files, meridians;
  int component = 1, check = 0, times = 1;
  bool require_hyperbolic = false, no_calibrate = false;
  double cs = 0.0;
  long q_value = 0;

  auto* ev = app.add_subcommand("eigenvariety", "Eigenvalue curve of one component");
  ev->add_option("link", link, "Link file")->required();
  ev->add_option("--component", component, "Component index, 1-based");
  ev->add_option("--slice-signs", signs, "Signs of the other meridian eigenvalues, e.g. + or -");
  ev->add_flag("--require-hyperbolic", require_hyperbolic, "Fail unless the discrete faithful point is found");
  ev->add_flag("--no-calibrate", no_calibrate, "Keep epsilon = 1");
  ev->add_option("--check", check, "Verify at this many sampled representations");

  auto* te = app.add_subcommand("tempered", "Cyclotomic edge certificate of a curve");
  te->add_option("curve", curve_file, "Curve file")->required();

  auto* ta = app.add_subcommand("tame", "Tame symbols of a formal symbol");
  ta->add_option("symbol", symbol, "Symbol such as {l, m}")->required();
  ta->add_option("--curve", curve_file, "Evaluate at every edge place of this curve");
  ta->add_option("--var", var, "Variable of the projective line");
  ta->add_option("--at", at, "Rational point or 'infinity'");

  auto* sr = app.add_subcommand("symbol-reduce", "Normal form of a symbol or a star product");
  sr->add_option("symbol", symbol, "Symbol such as {x, 1 - x}");
  sr->add_option("--left", left, "First matrix of a star product, [a, b; c, d]");
  sr->add_option("--right", right, "Second matrix of a star product, [a, b; c, d]");

  auto* in = app.add_subcommand("integrate", "Track a path and integrate eta and xi");
  in->add_option("curves", curve_files, "Curve files, one per component")->required();
  in->add_option("--path", path_file, "Path file")->required();
  in->add_option("--cs", cs, "Chern-Simons invariant of the complete structure");
  auto* in_q = in->add_option("--q", q_value, "Order used in U (default: symbol order candidate)");

  auto* vp = app.add_subcommand("volume-path", "V along a meridian path from the complete structure");
  vp->add_option("link", link, "Link file")->required();
  vp->add_option("--path", path_file, "Path file")->required();
  vp->add_option("--slice-signs", signs, "Slice signs for links");

  auto* qu = app.add_subcommand("quantize", "Rational reconstruction of a loop integral of xi");
  qu->add_option("curves", curve_files, "Curve files, one per component")->required();
  qu->add_option("--loop", path_file, "Closed path file")->required();
  qu->add_option("--times", times, "Traverse the loop this many times");
  auto* qu_q = qu->add_option("--q", q_value, "Denominator candidate (default: symbol order candidate)");

  auto* ov = app.add_subcommand("oracle-volume", "Volume from the ideal triangulation gluing equations");
  ov->add_option("link", link, "Link file");
  ov->add_option("--triangulation", tri_name, "Built-in triangulation name");
  ov->add_option("--meridian", meridians, "Meridian log-holonomy per cusp as re,im");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorKind::Usage, e.what());
  }
  if (samples > 0) g.samples = samples;

  try {
    if (*ev) cmd_eigenvariety(g, link, component, signs, require_hyperbolic, !no_calibrate, check);
    else if (*te) cmd_tempered(g, curve_file);
    else if (*ta) cmd_tame(g, symbol, curve_file, var, at);
    else if (*sr) cmd_symbol_reduce(g, symbol, left, right);
    else if (*in) cmd_integrate(g, curve_files, path_file, cs, *in_q ? std::optional<long>(q_value) : std::nullopt);
    else if (*vp) cmd_volume_path(g, link, path_file, signs);
    else if (*qu) cmd_quantize(g, curve_files, path_file, times, *qu_q ? std::optional<long>(q_value) : std::nullopt);
    else if (*ov) cmd_oracle_volume(g, link, tri_name, meridians);
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorKind::Internal, e.what());
  }
  return 0;
}
