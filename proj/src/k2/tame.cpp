#include "charvar/k2/tame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "charvar/error.hpp"
#include "charvar/numeric/roots.hpp"
#include "charvar/poly/algorithms.hpp"

namespace charvar::k2 {

namespace {

// Leading coefficient c * alpha^ea * beta^eb of an entry at an edge place,
// with l ~ alpha t^a and m ~ beta t^b; ea = eb = 0 elsewhere.
struct Local {
  long order = 0;
  Rat c{1};
  long ea = 0, eb = 0;
};

Local local_of_base(const MultiPoly& base, const Place& pl) {
  Local out;
  switch (pl.kind) {
    case Place::Kind::LinePoint: {
      for (const auto& v : base.support_variables())
        if (v != pl.var) throw Error(ErrorKind::Indeterminate, "entry involves '" + v + "' besides " + pl.var);
      MultiPoly b = base.trimmed();
      const MultiPoly lin = MultiPoly::variable(pl.var) - MultiPoly::constant(pl.point);
      while (b.substitute(pl.var, pl.point).trimmed().is_zero()) {
        b = poly::divide_exact(b, lin);
        ++out.order;
      }
      out.c = b.substitute(pl.var, pl.point).trimmed().constant_term();
      return out;
    }
    case Place::Kind::LineInfinity: {
      for (const auto& v : base.support_variables())
        if (v != pl.var) throw Error(ErrorKind::Indeterminate, "entry involves '" + v + "' besides " + pl.var);
      auto coeffs = base.trimmed().coefficients_in(pl.var);
      out.order = -static_cast<long>(coeffs.size() - 1);
      out.c = coeffs.back().constant_term();
      return out;
    }
    case Place::Kind::CurvePoint: {
      for (const auto& v : base.support_variables())
        if (v != "l" && v != "m") throw Error(ErrorKind::Indeterminate, "entry involves '" + v + "' besides l, m");
      const cd val = base.evaluate({{"l", pl.l}, {"m", pl.m}});
      if (!(std::abs(val) > 1e-12))
        throw Error(ErrorKind::Indeterminate, "entry " + base.to_string() + " vanishes at the point");
      out.c = Rat(0);  // not rational in general
      return out;
    }
    case Place::Kind::Edge: {
      const long a = -pl.edge.direction[1], b = pl.edge.direction[0];
      if (base == MultiPoly::variable("l")) {
        out.order = a;
        out.ea = 1;
      } else if (base == MultiPoly::variable("m")) {
        out.order = b;
        out.eb = 1;
      } else {
        throw Error(ErrorKind::Indeterminate,
                    "entry " + base.to_string() + " is not a monomial in l, m at an edge place");
      }
      return out;
    }
  }
  return out;
}

Local local_of(const SymbolArg& arg, const Place& pl) {
  Local out;
  out.c = arg.constant;
  for (const auto& [base, k] : arg.bases) {
    Local b = local_of_base(base, pl);
    out.order += k * b.order;
    out.c *= poly::pow(b.c, k);
    out.ea += k * b.ea;
    out.eb += k * b.eb;
  }
  return out;
}

long order_of_rational(const Rat& r) {
  if (r.is_one()) return 1;
  if (r == Rat(-1)) return 2;
  return 0;
}

}  // namespace

std::string Place::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::LinePoint: out << var << " = " << point.to_string(); break;
    case Kind::LineInfinity: out << var << " = infinity"; break;
    case Kind::CurvePoint: out << "(l, m) = (" << l << ", " << m << ")"; break;
    case Kind::Edge:
      out << "edge (" << edge.start[0] << "," << edge.start[1] << ")-(" << edge.end[0] << "," << edge.end[1]
          << "), root of " << root_factor.to_string();
      break;
  }
  return out.str();
}

std::vector<Place> edge_places(const MultiPoly& curve) {
  auto np = poly::newton_polygon(curve);
  if (np.variables[0] != "l" || np.variables[1] != "m")
    throw Error(ErrorKind::WrongArity, "curve must be a polynomial in l and m");
  std::vector<Place> out;
  for (const auto& e : np.edges) {
    MultiPoly ep = poly::edge_polynomial(curve, e, "t");
    for (const auto& [factor, mult] : poly::univariate_factor(ep).factors) {
      std::vector<cd> coeffs;
      for (const auto& c : factor.coefficients_in("t")) coeffs.push_back(c.constant_term().to_double());
      auto roots = numeric::polynomial_roots(coeffs);
      std::sort(roots.begin(), roots.end(), [](cd x, cd y) {
        return std::arg(x) != std::arg(y) ? std::arg(x) < std::arg(y) : std::abs(x) < std::abs(y);
      });
      for (cd r : roots) {
        Place p;
        p.kind = Place::Kind::Edge;
        p.edge = e;
        p.root_factor = factor;
        p.cyclotomic_index = poly::cyclotomic_index(factor);
        p.root = r;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

TameValue tame_symbol(const FormalSymbol& s, const Place& pl) {
  long sign = 0, s_power = 0;
  Rat c(1);
  for (const auto& f : s.factors) {
    Local x = local_of(f.f, pl), y = local_of(f.g, pl);
    const long e = f.exponent;
    sign += e * ((x.order * y.order) % 2);
    if (pl.kind == Place::Kind::CurvePoint) continue;  // every order is zero
    c *= poly::pow(poly::pow(x.c, static_cast<int>(y.order)) / poly::pow(y.c, static_cast<int>(x.order)),
                   static_cast<int>(e));
    if (pl.kind == Place::Kind::Edge) {
      const long ea = x.ea * y.order - y.ea * x.order, eb = x.eb * y.order - y.eb * x.order;
      const long dx = pl.edge.direction[0], dy = pl.edge.direction[1];
      long d = dx != 0 ? ea / dx : eb / dy;
      if (ea != d * dx || eb != d * dy)
        throw Error(ErrorKind::Internal, "edge tame symbol is not a power of the edge root");
      s_power += e * d;
    }
  }
  TameValue out;
  const bool negative = (sign % 2 + 2) % 2 == 1;
  if (pl.kind != Place::Kind::Edge) {
    Rat v = negative ? -c : c;
    out.exact = v;
    out.value = v.to_double();
    if (long o = order_of_rational(v)) out.order = o;
    out.unit_modulus = v.abs().is_one();
    return out;
  }
  out.value = (negative ? -1.0 : 1.0) * c.to_double() * std::pow(pl.root, static_cast<int>(s_power));
  if (s_power == 0) {
    Rat v = negative ? -c : c;
    out.exact = v;
    if (long o = order_of_rational(v)) out.order = o;
  } else if (c.abs().is_one() && pl.cyclotomic_index) {
    // (-1)^sigma zeta_n^E as a power of a primitive 2n-th root of unity
    const long n = *pl.cyclotomic_index;
    const long sigma = (negative ? 1 : 0) + (c.sign() < 0 ? 1 : 0);
    const long expo = ((n * sigma + 2 * s_power) % (2 * n) + 2 * n) % (2 * n);
    out.order = 2 * n / std::gcd(2 * n, expo == 0 ? 2 * n : expo);
  }
  out.unit_modulus = std::abs(std::abs(out.value) - 1.0) < 1e-10;
  return out;
}

TemperednessReport temperedness(const MultiPoly& curve) {
  TemperednessReport r;
  auto np = poly::newton_polygon(curve);
  r.variables = {np.variables[0], np.variables[1]};
  for (const auto& e : np.edges) {
    EdgeCertificate c{e, poly::edge_polynomial(curve, e, "t"), {}};
    c.certificate = poly::is_cyclotomic_product(c.edge_polynomial);
    r.tempered = r.tempered && c.certificate.cyclotomic;
    r.edges.push_back(std::move(c));
  }
  return r;
}

std::string TemperednessReport::to_string() const {
  std::ostringstream out;
  out << "tempered: " << (tempered ? "true" : "false") << "\n";
  out << "variables: " << variables[0] << " " << variables[1] << "\n";
  for (const auto& e : edges) {
    out << "edge: (" << e.edge.start[0] << "," << e.edge.start[1] << ")-(" << e.edge.end[0] << ","
        << e.edge.end[1] << "); edge_polynomial: " << e.edge_polynomial.to_string() << "; ";
    if (e.certificate.cyclotomic) {
      out << "cyclotomic_indices: [";
      for (std::size_t i = 0; i < e.certificate.indices.size(); ++i)
        out << (i ? ", " : "") << e.certificate.indices[i];
      out << "]\n";
    } else {
      out << "failure_factor: " << e.certificate.failure_factor->to_string() << "\n";
    }
  }
  return out.str();
}

long symbol_order_candidate(const MultiPoly& curve) {
  TemperednessReport r = temperedness(curve);
  if (!r.tempered) throw Error(ErrorKind::Untempered, "curve is not tempered");
  const FormalSymbol lm = FormalSymbol::pair(SymbolArg(MultiPoly::variable("l")), SymbolArg(MultiPoly::variable("m")));
  long q = 1;
  for (const Place& p : edge_places(curve)) {
    TameValue t = tame_symbol(lm, p);
    if (!t.order) throw Error(ErrorKind::Internal, "tame symbol at " + p.describe() + " has no certified order");
    q = std::lcm(q, *t.order);
  }
  return q;
}

}  // namespace charvar::k2
