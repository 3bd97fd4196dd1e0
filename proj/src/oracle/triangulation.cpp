#include "charvar/oracle/triangulation.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "charvar/error.hpp"
#include "charvar/oracle/dilog.hpp"
#include "embedded_triangulations.hpp"

namespace charvar::oracle {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Eigen::MatrixXi to_matrix(const std::vector<std::vector<int>>& rows, int cols,
                          const std::string& what) {
  Eigen::MatrixXi m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw Error(ErrorKind::Parse, what + " row has " + std::to_string(rows[r].size()) +
                                        " entries, expected " + std::to_string(cols));
    for (int c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  }
  return m;
}

// log z, log 1/(1-z), log(1-1/z) with log z taken from the tracked value.
std::array<cd, 3> shape_logs(cd logz) {
  cd z = std::exp(logz);
  return {logz, -std::log(1.0 - z), std::log(1.0 - 1.0 / z)};
}

Eigen::VectorXcd row_values(const Eigen::MatrixXi& rows, const std::vector<cd>& logz) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rows.rows());
  for (std::size_t j = 0; j < logz.size(); ++j) {
    auto l = shape_logs(logz[j]);
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
      for (int k = 0; k < 3; ++k) out(r) += static_cast<double>(rows(r, static_cast<Eigen::Index>(3 * j + k))) * l[static_cast<std::size_t>(k)];
  }
  return out;
}

Eigen::MatrixXcd row_jacobian(const Eigen::MatrixXi& rows, const std::vector<cd>& logz) {
  Eigen::MatrixXcd out(rows.rows(), static_cast<Eigen::Index>(logz.size()));
  for (std::size_t j = 0; j < logz.size(); ++j) {
    cd z = std::exp(logz[j]);
    std::array<cd, 3> d = {1.0, z / (1.0 - z), 1.0 / (z - 1.0)};
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      cd s = 0.0;
      for (int k = 0; k < 3; ++k) s += static_cast<double>(rows(r, static_cast<Eigen::Index>(3 * j + k))) * d[static_cast<std::size_t>(k)];
      out(r, static_cast<Eigen::Index>(j)) = s;
    }
  }
  return out;
}

Eigen::VectorXcd gluing_residual(const Triangulation& tri, const std::vector<cd>& logz,
                                 const std::vector<cd>& targets) {
  Eigen::VectorXcd e = row_values(tri.edges, logz);
  Eigen::VectorXcd m = row_values(tri.meridians, logz);
  Eigen::VectorXcd f(e.size() + m.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) f(i) = e(i) - cd(0.0, 2.0 * kPi);
  for (Eigen::Index i = 0; i < m.size(); ++i) f(e.size() + i) = m(i) - targets[static_cast<std::size_t>(i)];
  return f;
}

Eigen::MatrixXcd gluing_jacobian(const Triangulation& tri, const std::vector<cd>& logz) {
  Eigen::MatrixXcd je = row_jacobian(tri.edges, logz);
  Eigen::MatrixXcd jm = row_jacobian(tri.meridians, logz);
  Eigen::MatrixXcd j(je.rows() + jm.rows(), je.cols());
  j << je, jm;
  return j;
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
  Triangulation tri;
  std::istringstream in{std::string(text)};
  std::string line, section;
  std::vector<std::vector<int>> edges, meridians, longitudes;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon != std::string::npos) {
      std::string key = trim(line.substr(0, colon));
      std::string value = trim(line.substr(colon + 1));
      section.clear();
      if (key == "name") {
        tri.name = value;
      } else if (key == "codes") {
        std::istringstream vs(value);
        std::string code;
        while (vs >> code) {
          auto slash = code.find('/');
          if (slash == std::string::npos) throw Error(ErrorKind::Parse, "bad code '" + code + "'");
          tri.codes.emplace_back(std::stoi(code.substr(0, slash)), std::stoi(code.substr(slash + 1)));
        }
      } else if (key == "tetrahedra") {
        tri.tetrahedra = std::stoi(value);
      } else if (key == "cusps") {
        tri.cusps = std::stoi(value);
      } else if (key == "edges" || key == "meridians" || key == "longitudes" || key == "seed") {
        section = key;
      } else {
        throw Error(ErrorKind::Parse, "unknown triangulation key '" + key + "'");
      }
      continue;
    }
    std::istringstream ls(line);
    if (section == "seed") {
      double re = 0, im = 0;
      if (!(ls >> re >> im)) throw Error(ErrorKind::Parse, "bad seed line '" + line + "'");
      tri.seed.emplace_back(re, im);
      continue;
    }
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    if (section == "edges") edges.push_back(row);
    else if (section == "meridians") meridians.push_back(row);
    else if (section == "longitudes") longitudes.push_back(row);
    else throw Error(ErrorKind::Parse, "data line outside a section: '" + line + "'");
  }
  const int cols = 3 * tri.tetrahedra;
  if (tri.tetrahedra <= 0) throw Error(ErrorKind::Parse, "triangulation needs tetrahedra > 0");
  tri.edges = to_matrix(edges, cols, "edge");
  tri.meridians = to_matrix(meridians, cols, "meridian");
  tri.longitudes = to_matrix(longitudes, cols, "longitude");
  if (tri.edges.rows() != tri.tetrahedra)
    throw Error(ErrorKind::Parse, "number of edge equations must equal number of tetrahedra");
  if (tri.meridians.rows() != tri.cusps || tri.longitudes.rows() != tri.cusps)
    throw Error(ErrorKind::Parse, "need one meridian and one longitude row per cusp");
  if (static_cast<int>(tri.seed.size()) != tri.tetrahedra)
    throw Error(ErrorKind::Parse, "need one seed shape per tetrahedron");
  // Around each tetrahedron the three dihedral classes each appear twice.
  for (int t = 0; t < tri.tetrahedra; ++t)
    for (int k = 0; k < 3; ++k)
      if (tri.edges.col(3 * t + k).sum() != 2)
        throw Error(ErrorKind::Parse, "edge equations must use each dihedral angle twice");
  return tri;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open triangulation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

const std::vector<Triangulation>& builtin_triangulations() {
  static const std::vector<Triangulation> all = [] {
    std::vector<Triangulation> out;
    for (std::string_view text : kEmbeddedTriangulations) out.push_back(parse_triangulation(text));
    return out;
  }();
  return all;
}

std::optional<Triangulation> find_triangulation(int p, int q) {
  for (const auto& t : builtin_triangulations())
    for (const auto& [cp, cq] : t.codes)
      if (cp == p && cq == q) return t;
  return std::nullopt;
}

const Triangulation& triangulation_by_name(std::string_view name) {
  for (const auto& t : builtin_triangulations())
    if (t.name == name) return t;
  throw Error(ErrorKind::DegenerateInput, "no built-in triangulation named '" + std::string(name) + "'");
}

GluingSolution solve_gluing(const Triangulation& tri, const std::vector<cd>& meridian_targets) {
  if (static_cast<int>(meridian_targets.size()) != tri.cusps)
    throw Error(ErrorKind::DegenerateInput, "need one meridian target per cusp");
  std::vector<cd> logz;
  for (cd z : tri.seed) logz.push_back(std::log(z));
  GluingSolution sol;
  Eigen::VectorXcd f = gluing_residual(tri, logz, meridian_targets);
  double norm = f.norm();
  const int max_iter = 100;
  int it = 0;
  for (; it < max_iter && norm > 1e-15; ++it) {
    Eigen::MatrixXcd j = gluing_jacobian(tri, logz);
    Eigen::VectorXcd step = j.completeOrthogonalDecomposition().solve(-f);
    double t = 1.0;
    bool improved = false;
    for (int half = 0; half < 40; ++half, t *= 0.5) {
      std::vector<cd> trial = logz;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += t * step(static_cast<Eigen::Index>(k));
      Eigen::VectorXcd ft = gluing_residual(tri, trial, meridian_targets);
      double nt = ft.norm();
      if (std::isfinite(nt) && nt < norm) {
        logz = std::move(trial);
        f = std::move(ft);
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  sol.iterations = it;
  sol.residual = f.cwiseAbs().maxCoeff();
  if (!(sol.residual < 1e-12))
    throw Error(ErrorKind::Divergence, "gluing equations did not converge (residual " +
                                           std::to_string(sol.residual) + ")");
  for (cd lz : logz) {
    cd z = std::exp(lz);
    if (z.imag() <= 0.0)
      throw Error(ErrorKind::Divergence, "gluing solution left the geometric region");
    sol.shapes.push_back(z);
  }
  for (cd z : sol.shapes) sol.volume += bloch_wigner(z);
  return sol;
}

std::vector<std::pair<cd, cd>> cusp_holonomies(const Triangulation& tri, const std::vector<cd>& shapes) {
  std::vector<cd> logz;
  for (cd z : shapes) logz.push_back(std::log(z));
  Eigen::VectorXcd m = row_values(tri.meridians, logz);
  Eigen::VectorXcd l = row_values(tri.longitudes, logz);
  std::vector<std::pair<cd, cd>> out;
  for (int c = 0; c < tri.cusps; ++c) out.emplace_back(m(c), l(c));
  return out;
}

std::vector<cd> cusp_shapes(const Triangulation& tri, const std::vector<cd>& shapes) {
  std::vector<cd> logz;
  for (cd z : shapes) logz.push_back(std::log(z));
  Eigen::MatrixXcd j = gluing_jacobian(tri, logz);
  Eigen::MatrixXcd jl = row_jacobian(tri.longitudes, logz);
  auto cod = j.completeOrthogonalDecomposition();
  std::vector<cd> out;
  for (int c = 0; c < tri.cusps; ++c) {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(j.rows());
    rhs(tri.edges.rows() + c) = 1.0;
    Eigen::VectorXcd dx = cod.solve(rhs);
    out.push_back((jl * dx)(c));
  }
  return out;
}

}  // namespace charvar::oracle
