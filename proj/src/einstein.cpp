#include "wpg/einstein.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace wpg {
namespace {

constexpr double kUnitFloor = 1e-10;
constexpr double kOrthogonality = 1e-8;
constexpr double kConstancy = 1e-8;
constexpr double kContractFloor = 1e-7;

std::string generator_name(std::size_t k, std::size_t count) {
  return count == 1 ? "U" : fmt::format("U{}", k + 1);
}

GeneratorForms normalize(const Mat<double>& g, const std::vector<Vec<double>>& raw, std::vector<int>& signs,
                         std::span<const double> point) {
  GeneratorForms out;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double norm2 = raw[k].dot(g * raw[k]);
    if (!(std::abs(norm2) > kUnitFloor))
      throw InvalidArgument(fmt::format("generator {} is null at ({}): g(U,U) = {:.3g}",
                                        generator_name(k, raw.size()), fmt::join(point, ", "), norm2));
    const int s = norm2 > 0 ? 1 : -1;
    if (signs[k] == 0)
      signs[k] = s;
    else if (signs[k] != s)
      throw InvalidArgument(
          fmt::format("g(U,U) of generator {} changes sign across samples", generator_name(k, raw.size())));
    out.vectors.push_back(raw[k] / std::sqrt(std::abs(norm2)));
    out.forms.push_back(g * out.vectors.back());
  }
  if (out.vectors.size() == 2) {
    const double cross = out.vectors[0].dot(out.forms[1]);
    if (std::abs(cross) > kOrthogonality)
      throw InvalidArgument(fmt::format("generators U1, U2 are not orthogonal at ({}): g(U1,U2) = {:.3g}",
                                        fmt::join(point, ", "), cross));
  }
  return out;
}

/// g, Ric of the connection and normalized generator forms at one point.
struct QEPoint {
  Mat<double> g;
  Mat<double> ric;
  GeneratorForms gens;
};

std::vector<QEPoint> qe_points(const ChartManifold& chart, const ConnectionSpec& connection,
                               const std::vector<VectorField>& generators, const PointList& points) {
  if (generators.size() > 2) throw InvalidArgument("at most two generators are supported");
  for (const auto& u : generators)
    if (u.dim() != chart.dim()) throw InvalidArgument("generator does not match the chart dimension");
  std::vector<int> signs(generators.size(), 0);
  std::vector<QEPoint> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    const LocalGeometry geo = local_geometry(chart, pt);
    QEPoint q;
    q.g = geo.metric.g;
    if (connection.kind() == ConnectionSpec::Kind::LeviCivita) {
      q.ric = ricci(geo.lc);
    } else {
      const VectorJet<double> p = eval_vector(connection.generator(), pt);
      q.ric = ricci(semi_symmetric_coeffs(geo.lc, lower(geo.metric, p)));
    }
    std::vector<Vec<double>> raw;
    for (const auto& u : generators) raw.push_back(eval_vector(u, pt).value);
    q.gens = normalize(q.g, raw, signs, pt);
    out.push_back(std::move(q));
  }
  return out;
}

Mat<double> model(const QEPoint& q, double a, double b, double c) {
  Mat<double> m = a * q.g;
  if (q.gens.forms.size() > 0) m += b * q.gens.forms[0] * q.gens.forms[0].transpose();
  if (q.gens.forms.size() > 1) m += c * q.gens.forms[1] * q.gens.forms[1].transpose();
  return m;
}

ConnectionSpec ambient_connection(const WarpedProduct& wp, const FieldPlacement& p) {
  return ConnectionSpec::semi_symmetric(lift(wp, p));
}

Mat<double> outer(const Vec<double>& v) { return v * v.transpose(); }

}  // namespace

std::vector<GeneratorForms> generator_forms(const ChartManifold& chart, const std::vector<VectorField>& generators,
                                            const PointList& points) {
  std::vector<int> signs(generators.size(), 0);
  std::vector<GeneratorForms> out;
  for (const auto& pt : points) {
    const Mat<double> g = metric_jet(chart, pt).g;
    std::vector<Vec<double>> raw;
    for (const auto& u : generators) raw.push_back(eval_vector(u, pt).value);
    out.push_back(normalize(g, raw, signs, pt));
  }
  return out;
}

DefectTensor defect(const ChartManifold& chart, const ConnectionSpec& connection, double a, double b, double c,
                    const std::vector<VectorField>& generators, const PointList& points) {
  DefectTensor d;
  for (const auto& q : qe_points(chart, connection, generators, points)) {
    d.samples.push_back(q.ric - model(q, a, b, c));
    d.max_abs = std::max(d.max_abs, d.samples.back().cwiseAbs().maxCoeff());
  }
  return d;
}

std::vector<VectorField> lift_generators(const WarpedProduct& wp, const QEStructure& qe) {
  if (qe.u2 && !qe.u1) throw InvalidArgument("U2 given without U1");
  std::vector<VectorField> out;
  if (qe.u1) out.push_back(lift(wp, *qe.u1));
  if (qe.u2) out.push_back(lift(wp, *qe.u2));
  return out;
}

DefectTensor defect(const WarpedProduct& wp, const FieldPlacement& p, const QEStructure& qe, const PointList& points) {
  return defect(wp.ambient(), ambient_connection(wp, p), qe.a, qe.b, qe.c, lift_generators(wp, qe), points);
}

FitResult fit(const ChartManifold& chart, const ConnectionSpec& connection, const std::vector<VectorField>& generators,
              const PointList& points) {
  if (points.size() < 2) throw InvalidArgument("fit needs at least two sample points");
  const auto qs = qe_points(chart, connection, generators, points);
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(generators.size());

  Mat<double> normal = Mat<double>::Zero(m, m);
  Vec<double> rhs = Vec<double>::Zero(m);
  for (const auto& q : qs) {
    std::vector<Mat<double>> basis{q.g};
    for (const auto& form : q.gens.forms) basis.push_back(outer(form));
    for (Eigen::Index i = 0; i < m; ++i) {
      rhs(i) += (basis[i].array() * q.ric.array()).sum();
      for (Eigen::Index j = 0; j < m; ++j) normal(i, j) += (basis[i].array() * basis[j].array()).sum();
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat<double>> eig(normal, Eigen::EigenvaluesOnly);
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double lo = eig.eigenvalues().cwiseAbs().minCoeff();
  if (!(hi > 0.0) || lo < 1e-12 * hi)
    throw IllPosedFit(fmt::format("normal equations are rank deficient (eigenvalue ratio {:.3g})", hi > 0 ? lo / hi : 0.0));
  const Vec<double> theta = normal.ldlt().solve(rhs);

  FitResult r;
  r.a = theta(0);
  if (m > 1) r.b = theta(1);
  if (m > 2) r.c = theta(2);
  for (const auto& q : qs) r.residual = std::max(r.residual, (q.ric - model(q, r.a, r.b, r.c)).cwiseAbs().maxCoeff());
  return r;
}

FitResult fit(const WarpedProduct& wp, const FieldPlacement& p, const std::vector<FieldPlacement>& generators,
              const PointList& points) {
  std::vector<VectorField> lifted;
  for (const auto& u : generators) lifted.push_back(lift(wp, u));
  return fit(wp.ambient(), ambient_connection(wp, p), lifted, points);
}

std::string_view to_string(Alpha which) {
  static constexpr std::string_view names[] = {"alpha1", "alpha2", "alpha3", "alpha4"};
  return names[static_cast<int>(which)];
}

Factor alpha_placement(Alpha which) {
  return which == Alpha::A1 || which == Alpha::A3 ? Factor::Base : Factor::Fiber;
}

AlphaConstant alpha_check(const WarpedProduct& wp, const FieldPlacement& p, Alpha which, double a,
                          const PointList& base_points) {
  if (p.location != alpha_placement(which))
    throw InvalidArgument(fmt::format("{} needs P on the {}", to_string(which), to_string(alpha_placement(which))));
  const double n2 = static_cast<double>(wp.n2());
  const double nbar = static_cast<double>(wp.dim());
  const VectorField p_base = p.location == Factor::Base ? p.on_factor(wp) : VectorField::zero(wp.base());

  AlphaConstant out{which, {}, 0.0};
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& x : base_points) {
    const LocalGeometry geo = local_geometry(wp.base(), x);
    const Jet2<double> fj = wp.warp().eval_jet2(x);
    const double f = fj.value();
    const auto calc = scalar_calculus(geo.metric, geo.lc, fj, eval_vector(p_base, x).value);
    double v = f * calc.laplacian_f + (1.0 - n2) * calc.grad_norm2 + a * f * f;
    if (p.location == Factor::Base) v += (1.0 - nbar) * f * calc.Pf;
    out.samples.emplace_back(x, v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.spread = base_points.empty() ? 0.0 : hi - lo;
  return out;
}

std::string_view to_string(Proposition p) {
  static constexpr std::string_view names[] = {"qe-ricci-base-p",   "qe-ricci-fiber-p",   "qe-scalar-base-p",
                                                "qe-scalar-fiber-p", "gqe-ricci-base-p",   "gqe-ricci-fiber-p",
                                                "gqe-scalar-base-p", "gqe-scalar-fiber-p"};
  return names[static_cast<int>(p)];
}

std::string placement_pattern(const FieldPlacement& p, const QEStructure& qe) {
  std::string s = fmt::format("P:{}", to_string(p.location));
  if (qe.u1 && !qe.u2) s += fmt::format(" U:{}", to_string(qe.u1->location));
  if (qe.u1 && qe.u2) s += fmt::format(" U1:{} U2:{}", to_string(qe.u1->location), to_string(qe.u2->location));
  return s;
}

bool PropositionReport::pass() const {
  return std::all_of(equations.begin(), equations.end(), [](const EquationResult& e) { return !e.as_printed || e.pass; });
}

namespace {

bool covered_gqe(const QEStructure& qe) {
  // the paper states U1 on the base with U2 on the fiber, not the reverse
  return !(qe.u1->location == Factor::Fiber && qe.u2->location == Factor::Base);
}

bool is_gqe(Proposition p) { return static_cast<int>(p) >= static_cast<int>(Proposition::GqeRicciBaseP); }
bool is_scalar(Proposition p) {
  return p == Proposition::QeScalarBaseP || p == Proposition::QeScalarFiberP || p == Proposition::GqeScalarBaseP ||
         p == Proposition::GqeScalarFiberP;
}
Factor p_side(Proposition p) {
  switch (p) {
    case Proposition::QeRicciBaseP:
    case Proposition::QeScalarBaseP:
    case Proposition::GqeRicciBaseP:
    case Proposition::GqeScalarBaseP:
      return Factor::Base;
    default:
      return Factor::Fiber;
  }
}

}  // namespace

std::vector<Proposition> propositions_for(const FieldPlacement& p, const QEStructure& qe) {
  if (!qe.u1) return {};
  const bool base = p.location == Factor::Base;
  if (!qe.u2)
    return base ? std::vector{Proposition::QeRicciBaseP, Proposition::QeScalarBaseP}
                : std::vector{Proposition::QeRicciFiberP, Proposition::QeScalarFiberP};
  if (!covered_gqe(qe)) return {};
  return base ? std::vector{Proposition::GqeRicciBaseP, Proposition::GqeScalarBaseP}
              : std::vector{Proposition::GqeRicciFiberP, Proposition::GqeScalarFiberP};
}

PropositionReport proposition_check(const WarpedProduct& wp, const FieldPlacement& p, Proposition prop,
                                    const QEStructure& qe, const PointList& points) {
  if (!qe.u1) throw InvalidArgument(fmt::format("{} needs a generator U", to_string(prop)));
  if (is_gqe(prop) != qe.generalized())
    throw InvalidArgument(fmt::format("{} does not match generator count of pattern '{}'", to_string(prop),
                                      placement_pattern(p, qe)));
  if (p.location != p_side(prop))
    throw InvalidArgument(fmt::format("{} needs P on the {}, pattern is '{}'", to_string(prop),
                                      to_string(p_side(prop)), placement_pattern(p, qe)));
  if (qe.generalized() && !covered_gqe(qe))
    throw InvalidArgument(fmt::format("pattern '{}' is not covered; place U1 on the base", placement_pattern(p, qe)));

  const Eigen::Index n1 = wp.n1(), n2 = wp.n2();
  const double n1d = static_cast<double>(n1), n2d = static_cast<double>(n2);
  const double nbar = static_cast<double>(wp.dim());
  const double a = qe.a, b = qe.b, c = qe.c;
  const bool u1_base = qe.u1->location == Factor::Base;
  const bool u2_base = qe.u2 && qe.u2->location == Factor::Base;
  const bool u2_fiber = qe.u2 && qe.u2->location == Factor::Fiber;

  PropositionReport report;
  report.prop = prop;
  report.pattern = placement_pattern(p, qe);
  report.k = nbar * nbar;
  report.defect = defect(wp, p, qe, points).max_abs;
  const auto forms = generator_forms(wp.ambient(), lift_generators(wp, qe), points);

  std::vector<EquationResult> eqs;
  auto add = [&](std::string label, bool printed) {
    eqs.push_back(EquationResult{std::move(label), 0.0, 0.0, false, printed});
  };
  const bool base_p = p.location == Factor::Base;
  if (!is_scalar(prop)) {
    add(base_p ? "Ricbar^B(X,Y)" : "Ric^B(X,Y)", true);
    add(base_p ? "Ricbar^F(V,W)" : "Ric^F(V,W)", true);
  } else {
    add("Sbar^M", true);
    add(base_p ? "Sbar^B" : "S^B", true);
    add(base_p ? "Sbar^F" : "S^F", true);
    if (!base_p) add("S^F with f^2 on the P terms", false);
  }

  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto& pt = points[s];
    const FactorData d = factor_data(wp, p, pt);
    const double f = d.f;
    const double lap = d.calculus.laplacian_f;
    const double grad2 = d.calculus.grad_norm2;
    const double bracket = f * lap + (1.0 - n2d) * grad2 + a * f * f + (base_p ? (1.0 - nbar) * f * d.calculus.Pf : 0.0);

    const Vec<double>& form1 = forms[s].forms[0];
    const Vec<double> form2 = qe.u2 ? forms[s].forms[1] : Vec<double>::Zero(wp.dim()).eval();
    const Mat<double> gb = d.base.metric.g, gf = d.fiber.metric.g;

    if (!is_scalar(prop)) {
      Mat<double> base_rhs = a * gb - n2d * d.calculus.hessian_f / f + b * outer(form1.head(n1)) +
                             c * outer(form2.head(n1));
      Mat<double> fiber_rhs = bracket * gf + b * outer(form1.tail(n2)) + c * outer(form2.tail(n2));
      if (base_p) {
        // G(x, y) = g_B(∂_y, ∇_{∂_x} P)
        Mat<double> g_nabla(n1, n1);
        for (Eigen::Index x = 0; x < n1; ++x)
          g_nabla.col(x) = gb * covariant_derivative(d.base.lc, d.p_factor, Vec<double>::Unit(n1, x).eval());
        const Vec<double> pi_b = d.pi.head(n1);
        base_rhs -= n2d * (g_nabla.transpose() - outer(pi_b));
      } else {
        // G(v, w) = g(∂_w, ∇_{∂_v} P) with the ambient connection
        Mat<double> g_nabla(n2, n2);
        for (Eigen::Index v = 0; v < n2; ++v)
          g_nabla.col(v) = (d.ambient.metric.g *
                            covariant_derivative(d.ambient.lc, d.p_ambient, Vec<double>::Unit(wp.dim(), n1 + v).eval()))
                               .tail(n2);
        const Vec<double> pi_f = d.pi.tail(n2);
        fiber_rhs += (1.0 - nbar) * g_nabla.transpose() + (nbar - 1.0) * outer(pi_f);
      }
      const Mat<double>& base_lhs = base_p ? d.base_ric_bar : d.base_ric;
      eqs[0].residual = std::max(eqs[0].residual, (base_lhs - base_rhs).cwiseAbs().maxCoeff());
      eqs[1].residual = std::max(eqs[1].residual, (d.fiber_ric - fiber_rhs).cwiseAbs().maxCoeff());
    } else {
      const AmbientData amb = ambient_data(wp, p, pt);
      const double bc_total = b + (qe.u2 ? c : 0.0);
      const double bc_base = (u1_base ? b : 0.0) + (u2_base ? c : 0.0);
      const double bc_fiber = ((u1_base ? 0.0 : b) + (u2_fiber ? c : 0.0)) * f * f;
      eqs[0].residual = std::max(eqs[0].residual, std::abs(amb.s_bar - (nbar * a + bc_total)));
      if (base_p) {
        const double sb = n1d * a + n2d * lap / f - n2d * d.div_base_p + n2d * d.pi_p + bc_base;
        eqs[1].residual = std::max(eqs[1].residual, std::abs(d.base_sbar - sb));
        eqs[2].residual = std::max(eqs[2].residual, std::abs(d.fiber_s - (n2d * bracket + bc_fiber)));
      } else {
        const double sb = n1d * a + n2d * lap / f + bc_base;
        const double p_terms = (1.0 - nbar) * d.div_fiber_p + (nbar - 1.0) * d.pi_p;
        eqs[1].residual = std::max(eqs[1].residual, std::abs(d.base_s - sb));
        eqs[2].residual = std::max(eqs[2].residual, std::abs(d.fiber_s - (n2d * bracket + p_terms + bc_fiber)));
        eqs[3].residual =
            std::max(eqs[3].residual, std::abs(d.fiber_s - (n2d * bracket + f * f * p_terms + bc_fiber)));
      }
    }
  }

  for (auto& e : eqs) {
    e.bound = report.k * report.defect + kContractFloor;
    e.pass = e.residual <= e.bound;
  }
  report.equations = std::move(eqs);
  return report;
}

std::string_view to_string(TheoremReport::Status s) {
  switch (s) {
    case TheoremReport::Status::Checked:
      return "checked";
    case TheoremReport::Status::NotApplicable:
      return "not applicable";
    case TheoremReport::Status::HypothesisFailed:
      return "hypothesis failed";
  }
  return "";
}

TheoremReport theorem_bookkeeping(const WarpedProduct& wp, const FieldPlacement& p, const QEStructure& qe,
                                  const PointList& points) {
  TheoremReport r;
  r.pattern = placement_pattern(p, qe);
  if (!qe.u1) {
    r.message = "no generator U";
    return r;
  }
  if (qe.generalized() && !covered_gqe(qe)) {
    r.message = "pattern not covered";
    return r;
  }
  if (wp.n1() != 1) {
    r.message = fmt::format("needs n1 = 1, have n1 = {}", wp.n1());
    return r;
  }
  if (wp.n2() < 2) {
    r.message = fmt::format("needs n2 >= 2, have n2 = {}", wp.n2());
    return r;
  }
  if (points.empty()) throw InvalidArgument("theorem bookkeeping needs sample points");

  const double n2 = static_cast<double>(wp.n2());
  const double nbar = static_cast<double>(wp.dim());
  const bool base_p = p.location == Factor::Base;
  std::vector<FactorData> data;
  for (const auto& pt : points) data.push_back(factor_data(wp, p, pt));

  if (base_p) {
    r.c1 = data.front().div_base_p;
    r.c2 = data.front().pi_p;
    for (const auto& d : data) {
      if (std::abs(d.div_base_p - r.c1) > kConstancy) {
        r.status = TheoremReport::Status::HypothesisFailed;
        r.message = fmt::format("div_B P is not constant ({} vs {})", d.div_base_p, r.c1);
        return r;
      }
      if (std::abs(d.pi_p - r.c2) > kConstancy) {
        r.status = TheoremReport::Status::HypothesisFailed;
        r.message = fmt::format("pi(P) is not constant ({} vs {})", d.pi_p, r.c2);
        return r;
      }
    }
  }

  // terms of the generators tangent to the base enter the base scalar curvature
  std::string terms = "a";
  double sum = qe.a;
  if (qe.u1->location == Factor::Base) terms += "+b", sum += qe.b;
  if (qe.u2 && qe.u2->location == Factor::Base) terms += "+c", sum += qe.c;
  const std::string quotient = terms == "a" ? "a/n2" : fmt::format("({})/n2", terms);
  r.c0 = (base_p ? r.c1 - r.c2 : 0.0) - sum / n2;
  r.c0_formula = base_p ? fmt::format("c1 - c2 - {}", quotient) : fmt::format("-{}", quotient);

  r.defect = defect(wp, p, qe, points).max_abs;
  double fmax = 1.0;
  for (const auto& d : data) {
    r.residual = std::max(r.residual, std::abs(d.calculus.laplacian_f - r.c0 * d.f));
    fmax = std::max(fmax, d.f);
  }
  r.bound = fmax * (nbar * nbar * r.defect + kContractFloor);
  r.pass = r.residual <= r.bound;
  r.status = TheoremReport::Status::Checked;
  return r;
}

}  // namespace wpg
