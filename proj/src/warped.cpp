#include "wpg/warped.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace wpg {
namespace {

const Vec<double>& require(const std::optional<Vec<double>>& v, const char* slot, Eigen::Index dim) {
  if (!v) throw InvalidArgument(fmt::format("missing input vector {}", slot));
  if (v->size() != dim)
    throw InvalidArgument(fmt::format("input vector {} has {} components, expected {}", slot, v->size(), dim));
  return *v;
}

void require_family(Factor case_family, Factor p_location) {
  if (case_family != p_location)
    throw InvalidArgument(fmt::format("identity is stated for P on the {}, got P on the {}", to_string(case_family),
                                      to_string(p_location)));
}

}  // namespace

std::string_view to_string(Factor f) { return f == Factor::Base ? "base" : "fiber"; }

WarpedProduct build(ChartManifold base, ChartManifold fiber, const Expression& f) {
  for (const auto& c : base.coords())
    if (std::find(fiber.coords().begin(), fiber.coords().end(), c) != fiber.coords().end())
      throw InvalidArgument(fmt::format("coordinate '{}' appears in both base and fiber", c));

  Expression warp;
  try {
    warp = f.coordinates() == base.coords() ? f : f.rebind(base.coords());
  } catch (const UnknownIdentifier& e) {
    throw InvalidArgument(fmt::format("warping function references '{}', which is not a base coordinate", e.name()));
  }

  std::vector<std::string> coords = base.coords();
  coords.insert(coords.end(), fiber.coords().begin(), fiber.coords().end());
  std::vector<int> signature = base.signature();
  signature.insert(signature.end(), fiber.signature().begin(), fiber.signature().end());

  const Eigen::Index n1 = base.dim(), n = base.dim() + fiber.dim();
  const Expression f_ambient = warp.rebind(coords);
  const Expression f2 = f_ambient * f_ambient;
  std::vector<Expression> upper;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      if (j < n1)
        upper.push_back(base.metric(i, j).rebind(coords));
      else if (i >= n1)
        upper.push_back(f2 * fiber.metric(i - n1, j - n1).rebind(coords));
      else
        upper.push_back(Expression::constant(0.0, coords));
    }
  ChartManifold ambient(coords, std::move(upper), std::move(signature));
  return WarpedProduct(std::move(base), std::move(fiber), std::move(warp), std::move(ambient));
}

WarpedProduct build(ChartManifold base, ChartManifold fiber, std::string_view f) {
  std::vector<std::string> all = base.coords();
  all.insert(all.end(), fiber.coords().begin(), fiber.coords().end());
  Expression parsed;
  try {
    parsed = parse(f, all);
  } catch (const UnknownIdentifier&) {
    parsed = parse(f, base.coords());  // rethrows with the offending name
  }
  return build(std::move(base), std::move(fiber), parsed);
}

FieldPlacement FieldPlacement::zero(const WarpedProduct& wp, Factor location) {
  const ChartManifold& chart = wp.factor(location);
  return FieldPlacement{location, std::vector<Expression>(chart.dim(), Expression::constant(0.0, chart.coords()))};
}

FieldPlacement FieldPlacement::from_text(const WarpedProduct& wp, Factor location,
                                         const std::vector<std::string>& components) {
  const ChartManifold& chart = wp.factor(location);
  if (static_cast<Eigen::Index>(components.size()) != chart.dim())
    throw InvalidArgument(fmt::format("{} field needs {} components, got {}", to_string(location), chart.dim(),
                                      components.size()));
  FieldPlacement out{location, {}};
  for (const auto& c : components) out.components.push_back(parse(c, chart.coords()));
  return out;
}

VectorField FieldPlacement::on_factor(const WarpedProduct& wp) const {
  return VectorField(wp.factor(location), components);
}

VectorField lift(const WarpedProduct& wp, const FieldPlacement& placement) {
  const ChartManifold& chart = wp.factor(placement.location);
  if (static_cast<Eigen::Index>(placement.components.size()) != chart.dim())
    throw InvalidArgument("placed field does not match its factor's dimension");
  const auto& coords = wp.ambient().coords();
  std::vector<Expression> out(wp.dim(), Expression::constant(0.0, coords));
  const Eigen::Index offset = placement.location == Factor::Base ? 0 : wp.n1();
  for (Eigen::Index i = 0; i < chart.dim(); ++i) {
    const Expression& c = placement.components[i];
    const Expression bound = c.coordinates() == chart.coords() ? c : c.rebind(chart.coords());
    out[offset + i] = bound.rebind(coords);
  }
  return VectorField(wp.ambient(), std::move(out));
}

Vec<double> lift_vector(const WarpedProduct& wp, Factor location, const Vec<double>& v) {
  Vec<double> out = Vec<double>::Zero(wp.dim());
  if (location == Factor::Base)
    out.head(wp.n1()) = v;
  else
    out.tail(wp.n2()) = v;
  return out;
}

std::string_view to_string(CurvatureCase c) {
  static constexpr std::string_view names[] = {"B1", "B2", "B3", "B4", "B5", "F1",
                                                "F2", "F3", "F4", "F5", "F6"};
  return names[static_cast<int>(c)];
}

std::string_view to_string(RicciCase c) {
  static constexpr std::string_view names[] = {"B1", "B2", "B3", "F1", "F2", "F3", "F4"};
  return names[static_cast<int>(c)];
}

std::string_view describe(CurvatureCase c) {
  static constexpr std::string_view text[] = {
      "Rbar(X,Y)Z, P on base",  "Rbar(V,X)Y, P on base",  "Rbar(X,Y)V = Rbar(V,W)X = 0, P on base",
      "Rbar(X,V)W, P on base",  "Rbar(U,V)W, P on base",  "Rbar(X,Y)Z, P on fiber",
      "Rbar(V,X)Y, P on fiber", "Rbar(X,Y)V, P on fiber", "Rbar(V,W)X, P on fiber",
      "Rbar(X,V)W, P on fiber", "Rbar(U,V)W, P on fiber"};
  return text[static_cast<int>(c)];
}

std::string_view describe(RicciCase c) {
  static constexpr std::string_view text[] = {
      "Ricbar(X,Y), P on base",  "Ricbar(X,V) = Ricbar(V,X) = 0, P on base", "Ricbar(V,W), P on base",
      "Ricbar(X,Y), P on fiber", "Ricbar(X,V), P on fiber",                  "Ricbar(V,X), P on fiber",
      "Ricbar(V,W), P on fiber"};
  return text[static_cast<int>(c)];
}

Factor family(CurvatureCase c) { return static_cast<int>(c) <= static_cast<int>(CurvatureCase::B5) ? Factor::Base : Factor::Fiber; }
Factor family(RicciCase c) { return static_cast<int>(c) <= static_cast<int>(RicciCase::B3) ? Factor::Base : Factor::Fiber; }

FactorData factor_data(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point) {
  if (static_cast<Eigen::Index>(point.size()) != wp.dim())
    throw InvalidArgument(fmt::format("point has {} coordinates, warped product has {}", point.size(), wp.dim()));
  const auto xb = wp.base_point(point);
  const auto yf = wp.fiber_point(point);

  FactorData d;
  d.wp = &wp;
  d.p_location = p.location;
  d.base = local_geometry(wp.base(), xb);
  d.fiber = local_geometry(wp.fiber(), yf);
  d.ambient = local_geometry(wp.ambient(), point);

  d.base_r = riemann_tensor(d.base.lc);
  d.base_ric = ricci(d.base_r);
  d.base_s = scalar(d.base_ric, d.base.metric.g_inv);
  d.fiber_r = riemann_tensor(d.fiber.lc);
  d.fiber_ric = ricci(d.fiber_r);
  d.fiber_s = scalar(d.fiber_ric, d.fiber.metric.g_inv);

  const VectorField p_factor = p.on_factor(wp);
  d.p_factor = eval_vector(p_factor, p.location == Factor::Base ? xb : yf);
  if (p.location == Factor::Base) {
    d.base_rbar = riemann_tensor(semi_symmetric_coeffs(d.base.lc, lower(d.base.metric, d.p_factor)));
    d.base_ric_bar = ricci(d.base_rbar);
    d.base_sbar = scalar(d.base_ric_bar, d.base.metric.g_inv);
    d.div_base_p = divergence(d.base.lc, d.p_factor);
  } else {
    d.base_rbar = d.base_r;
    d.base_ric_bar = d.base_ric;
    d.base_sbar = d.base_s;
    d.div_fiber_p = divergence(d.fiber.lc, d.p_factor);
  }

  const Jet2<double> f = wp.warp().eval_jet2(xb);
  if (!(f.value() > 0.0)) throw InvalidArgument(fmt::format("warping function is not positive: f = {}", f.value()));
  d.f = f.value();
  d.df = f.gradient();
  const Vec<double> p_base =
      p.location == Factor::Base ? d.p_factor.value : Vec<double>::Zero(wp.n1()).eval();
  d.calculus = scalar_calculus(d.base.metric, d.base.lc, f, p_base);
  d.nabla_grad_f = d.base.metric.g_inv * d.calculus.hessian_f;

  d.p_ambient = eval_vector(lift(wp, p), point);
  d.pi = d.ambient.metric.g * d.p_ambient.value;
  d.pi_p = d.pi.dot(d.p_ambient.value);
  return d;
}

AmbientData ambient_data(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point) {
  AmbientData a;
  a.geo = ssnm_geometry(wp.ambient(), lift(wp, p), point);
  a.rbar = riemann_tensor(a.geo.bar);
  a.ric_bar = ricci(a.rbar);
  a.s_bar = scalar(a.ric_bar, a.geo.base.metric.g_inv);
  return a;
}

Vec<double> lemma_curvature_rhs(const FactorData& d, CurvatureCase c, const PlacedVectors& in) {
  require_family(family(c), d.p_location);
  const WarpedProduct& wp = *d.wp;
  const Eigen::Index n1 = wp.n1(), n2 = wp.n2();
  const double f = d.f;
  const double pf = d.calculus.Pf;
  auto lb = [&](const Vec<double>& v) { return lift_vector(wp, Factor::Base, v); };
  auto lf = [&](const Vec<double>& v) { return lift_vector(wp, Factor::Fiber, v); };
  auto gb = [&](const Vec<double>& a, const Vec<double>& b) { return d.base.inner(a, b); };
  auto gf = [&](const Vec<double>& a, const Vec<double>& b) { return f * f * d.fiber.inner(a, b); };
  auto pib = [&](const Vec<double>& x) { return d.pi_of(lb(x)); };
  auto pif = [&](const Vec<double>& v) { return d.pi_of(lf(v)); };
  auto hess = [&](const Vec<double>& x, const Vec<double>& y) { return x.dot(d.calculus.hessian_f * y); };
  auto xf = [&](const Vec<double>& x) { return x.dot(d.df); };
  // base P: g(Y, ∇_X P) on the base
  auto g_nabla_base = [&](const Vec<double>& y, const Vec<double>& x) {
    return gb(y, covariant_derivative(d.base.lc, d.p_factor, x));
  };
  // fiber P: g(W, ∇_V P) with the ambient Levi-Civita connection
  auto g_nabla_fiber = [&](const Vec<double>& w, const Vec<double>& v) {
    return d.ambient.inner(lf(w), covariant_derivative(d.ambient.lc, d.p_ambient, lf(v)));
  };

  switch (c) {
    case CurvatureCase::B1: {
      const auto &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1), &z = require(in.Z, "Z", n1);
      return lb(apply_riemann(d.base_rbar, x, y, z));
    }
    case CurvatureCase::B2: {
      const auto &v = require(in.V, "V", n2), &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1);
      return (-hess(x, y) / f - g_nabla_base(y, x) + pib(x) * pib(y)) * lf(v);
    }
    case CurvatureCase::B3: {
      require(in.X, "X", n1), require(in.Y, "Y", n1), require(in.V, "V", n2), require(in.W, "W", n2);
      return Vec<double>::Zero(2 * wp.dim());
    }
    case CurvatureCase::B4: {
      const auto &x = require(in.X, "X", n1), &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      return -gf(v, w) * lb(d.nabla_grad_f * x / f + (pf / f) * x);
    }
    case CurvatureCase::B5: {
      const auto &u = require(in.U, "U", n2), &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      const double k = d.calculus.grad_norm2 / (f * f) + pf / f;
      return lf(apply_riemann(d.fiber_r, u, v, w) - k * (gf(v, w) * u - gf(u, w) * v));
    }
    case CurvatureCase::F1: {
      const auto &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1), &z = require(in.Z, "Z", n1);
      return lb(apply_riemann(d.base_r, x, y, z));
    }
    case CurvatureCase::F2: {
      const auto &v = require(in.V, "V", n2), &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1);
      return -hess(x, y) / f * lf(v) - pif(v) * xf(y) / f * lb(x);
    }
    case CurvatureCase::F3: {
      const auto &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1), &v = require(in.V, "V", n2);
      return pif(v) * (xf(x) / f * lb(y) - xf(y) / f * lb(x));
    }
    case CurvatureCase::F4: {
      const auto &v = require(in.V, "V", n2), &w = require(in.W, "W", n2), &x = require(in.X, "X", n1);
      return xf(x) / f * (pif(w) * lf(v) - pif(v) * lf(w));
    }
    case CurvatureCase::F5: {
      const auto &x = require(in.X, "X", n1), &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      return -gf(v, w) * lb(d.nabla_grad_f * x) / f + xf(x) / f * pif(w) * lf(v) - g_nabla_fiber(w, v) * lb(x) +
             pif(w) * pif(v) * lb(x);
    }
    case CurvatureCase::F6: {
      const auto &u = require(in.U, "U", n2), &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      return lf(apply_riemann(d.fiber_r, u, v, w)) -
             d.calculus.grad_norm2 / (f * f) * lf(gf(v, w) * u - gf(u, w) * v) + g_nabla_fiber(w, u) * lf(v) -
             g_nabla_fiber(w, v) * lf(u) + pif(w) * (pif(v) * lf(u) - pif(u) * lf(v));
    }
  }
  return {};
}

Vec<double> lemma_curvature_rhs(const WarpedProduct& wp, CurvatureCase c, const FieldPlacement& p,
                                const PlacedVectors& in, std::span<const double> point) {
  require_family(family(c), p.location);
  return lemma_curvature_rhs(factor_data(wp, p, point), c, in);
}

Vec<double> ambient_curvature_lhs(const WarpedProduct& wp, const AmbientData& a, CurvatureCase c,
                                  const PlacedVectors& in) {
  const Eigen::Index n1 = wp.n1(), n2 = wp.n2();
  auto lb = [&](const std::optional<Vec<double>>& v, const char* s) {
    return lift_vector(wp, Factor::Base, require(v, s, n1));
  };
  auto lf = [&](const std::optional<Vec<double>>& v, const char* s) {
    return lift_vector(wp, Factor::Fiber, require(v, s, n2));
  };
  auto r = [&](const Vec<double>& x, const Vec<double>& y, const Vec<double>& z) {
    return apply_riemann(a.rbar, x, y, z);
  };
  switch (c) {
    case CurvatureCase::B1:
    case CurvatureCase::F1:
      return r(lb(in.X, "X"), lb(in.Y, "Y"), lb(in.Z, "Z"));
    case CurvatureCase::B2:
    case CurvatureCase::F2:
      return r(lf(in.V, "V"), lb(in.X, "X"), lb(in.Y, "Y"));
    case CurvatureCase::B3: {
      Vec<double> out(2 * wp.dim());
      out << r(lb(in.X, "X"), lb(in.Y, "Y"), lf(in.V, "V")), r(lf(in.V, "V"), lf(in.W, "W"), lb(in.X, "X"));
      return out;
    }
    case CurvatureCase::F3:
      return r(lb(in.X, "X"), lb(in.Y, "Y"), lf(in.V, "V"));
    case CurvatureCase::F4:
      return r(lf(in.V, "V"), lf(in.W, "W"), lb(in.X, "X"));
    case CurvatureCase::B4:
    case CurvatureCase::F5:
      return r(lb(in.X, "X"), lf(in.V, "V"), lf(in.W, "W"));
    case CurvatureCase::B5:
    case CurvatureCase::F6:
      return r(lf(in.U, "U"), lf(in.V, "V"), lf(in.W, "W"));
  }
  return {};
}

Vec<double> lemma_ricci_rhs(const FactorData& d, RicciCase c, const PlacedVectors& in) {
  require_family(family(c), d.p_location);
  const WarpedProduct& wp = *d.wp;
  const Eigen::Index n1 = wp.n1(), n2 = wp.n2();
  const double nbar = static_cast<double>(wp.dim());
  const double n2d = static_cast<double>(n2);
  const double f = d.f;
  const double lap = d.calculus.laplacian_f;
  const double grad2 = d.calculus.grad_norm2;
  auto lb = [&](const Vec<double>& v) { return lift_vector(wp, Factor::Base, v); };
  auto lf = [&](const Vec<double>& v) { return lift_vector(wp, Factor::Fiber, v); };
  auto gf = [&](const Vec<double>& a, const Vec<double>& b) { return f * f * d.fiber.inner(a, b); };
  auto pif = [&](const Vec<double>& v) { return d.pi_of(lf(v)); };
  auto hess = [&](const Vec<double>& x, const Vec<double>& y) { return x.dot(d.calculus.hessian_f * y); };
  auto one = [](double v) { return Vec<double>::Constant(1, v); };

  switch (c) {
    case RicciCase::B1: {
      const auto &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1);
      const double g_nabla = d.base.inner(y, covariant_derivative(d.base.lc, d.p_factor, x));
      const double pi_x = d.pi_of(lb(x)), pi_y = d.pi_of(lb(y));
      return one(x.dot(d.base_ric_bar * y) + n2d * (hess(x, y) / f + g_nabla - pi_x * pi_y));
    }
    case RicciCase::B2:
      require(in.X, "X", n1), require(in.V, "V", n2);
      return Vec<double>::Zero(2);
    case RicciCase::B3: {
      const auto &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      const double k = -lap / f + (n2d - 1.0) * grad2 / (f * f) + (nbar - 1.0) * d.calculus.Pf / f;
      return one(v.dot(d.fiber_ric * w) + k * gf(v, w));
    }
    case RicciCase::F1: {
      const auto &x = require(in.X, "X", n1), &y = require(in.Y, "Y", n1);
      return one(x.dot(d.base_ric * y) + n2d * hess(x, y) / f);
    }
    case RicciCase::F2: {
      const auto &x = require(in.X, "X", n1), &v = require(in.V, "V", n2);
      return one((nbar - 1.0) * pif(v) * x.dot(d.df) / f);
    }
    case RicciCase::F3: {
      const auto &v = require(in.V, "V", n2), &x = require(in.X, "X", n1);
      return one((1.0 - nbar) * pif(v) * x.dot(d.df) / f);
    }
    case RicciCase::F4: {
      const auto &v = require(in.V, "V", n2), &w = require(in.W, "W", n2);
      const double g_nabla =
          d.ambient.inner(lf(w), covariant_derivative(d.ambient.lc, d.p_ambient, lf(v)));
      return one(v.dot(d.fiber_ric * w) + gf(v, w) * (-lap / f + (n2d - 1.0) * grad2 / (f * f)) +
                 (nbar - 1.0) * g_nabla + (1.0 - nbar) * pif(v) * pif(w));
    }
  }
  return {};
}

Vec<double> lemma_ricci_rhs(const WarpedProduct& wp, RicciCase c, const FieldPlacement& p, const PlacedVectors& in,
                            std::span<const double> point) {
  require_family(family(c), p.location);
  return lemma_ricci_rhs(factor_data(wp, p, point), c, in);
}

Vec<double> ambient_ricci_lhs(const WarpedProduct& wp, const AmbientData& a, RicciCase c, const PlacedVectors& in) {
  const Eigen::Index n1 = wp.n1(), n2 = wp.n2();
  auto lb = [&](const std::optional<Vec<double>>& v, const char* s) {
    return lift_vector(wp, Factor::Base, require(v, s, n1));
  };
  auto lf = [&](const std::optional<Vec<double>>& v, const char* s) {
    return lift_vector(wp, Factor::Fiber, require(v, s, n2));
  };
  auto ric = [&](const Vec<double>& x, const Vec<double>& y) { return Vec<double>::Constant(1, x.dot(a.ric_bar * y)); };
  switch (c) {
    case RicciCase::B1:
    case RicciCase::F1:
      return ric(lb(in.X, "X"), lb(in.Y, "Y"));
    case RicciCase::B2: {
      Vec<double> out(2);
      out << ric(lb(in.X, "X"), lf(in.V, "V"))(0), ric(lf(in.V, "V"), lb(in.X, "X"))(0);
      return out;
    }
    case RicciCase::F2:
      return ric(lb(in.X, "X"), lf(in.V, "V"));
    case RicciCase::F3:
      return ric(lf(in.V, "V"), lb(in.X, "X"));
    case RicciCase::B3:
    case RicciCase::F4:
      return ric(lf(in.V, "V"), lf(in.W, "W"));
  }
  return {};
}

double scalar_formula_rhs(const FactorData& d) {
  const WarpedProduct& wp = *d.wp;
  const double n2 = static_cast<double>(wp.n2());
  const double nbar = static_cast<double>(wp.dim());
  const double f = d.f;
  const double common = -2.0 * n2 * d.calculus.laplacian_f / f + d.fiber_s / (f * f) +
                        n2 * (n2 - 1.0) * d.calculus.grad_norm2 / (f * f);
  if (d.p_location == Factor::Base)
    return d.base_sbar + common + n2 * (nbar - 1.0) * d.calculus.Pf / f - n2 * d.pi_p + n2 * d.div_base_p;
  return d.base_s + common + (1.0 - nbar) * d.pi_p + (nbar - 1.0) * d.div_fiber_p;
}

double scalar_formula_rhs(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point) {
  return scalar_formula_rhs(factor_data(wp, p, point));
}

}  // namespace wpg
