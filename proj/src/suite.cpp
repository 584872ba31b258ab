#include "wpg/suite.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "wpg/random.hpp"

namespace wpg {
namespace {

constexpr double kRelationTol = 1e-8;
constexpr double kTorsionTol = 1e-10;
constexpr double kNonmetricityTol = 1e-9;
constexpr double kCompatibilityTol = 1e-10;
constexpr double kBianchiTol = 1e-9;

double max_abs(const Vec<double>& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Accumulates per-sample errors of one check.
class Check {
 public:
  Check(std::string id, std::string label, double tolerance)
      : rec_{std::move(id), std::move(label), 0, 0.0, 0.0, tolerance, CheckRecord::Status::Pass, {}} {}

  void add(double abs_err, double scaled) {
    ++rec_.samples;
    // NaN must fail, so compare with negation
    if (!(abs_err <= rec_.max_abs)) rec_.max_abs = std::isnan(abs_err) ? abs_err : std::max(rec_.max_abs, abs_err);
    if (!(scaled <= rec_.max_scaled)) rec_.max_scaled = std::isnan(scaled) ? scaled : std::max(rec_.max_scaled, scaled);
  }
  /// |lhs − rhs|∞ scaled by 1 + |lhs|∞.
  void compare(const Vec<double>& lhs, const Vec<double>& rhs) {
    const double e = max_abs(lhs - rhs);
    add(e, e / (1.0 + max_abs(lhs)));
  }
  void fail(const std::string& why) {
    if (!failed_) rec_.note = why;
    failed_ = true;
  }
  void info(std::string note) {
    informational_ = true;
    rec_.note = std::move(note);
  }
  void note(std::string note) { rec_.note = std::move(note); }

  CheckRecord finish() && {
    if (failed_)
      rec_.status = CheckRecord::Status::Fail;
    else if (informational_)
      rec_.status = CheckRecord::Status::Info;
    else
      rec_.status = rec_.max_scaled <= rec_.tolerance ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
    return std::move(rec_);
  }

 private:
  CheckRecord rec_;
  bool failed_ = false;
  bool informational_ = false;
};

struct Context {
  const Problem& problem;
  const Manifest& manifest;
  const PointList& points;
  std::uint64_t seed;
  double identity_tol;
  std::vector<CheckRecord>& out;
};

/// Stream of random input vectors, independent from the point stream.
Rng vector_rng(std::uint64_t seed, std::uint64_t salt) { return Rng(seed * 0x9E3779B97F4A7C15ULL + salt); }

PlacedVectors random_inputs(Rng& rng, const WarpedProduct& wp) {
  PlacedVectors in;
  in.X = rng.vector(wp.n1(), -1, 1);
  in.Y = rng.vector(wp.n1(), -1, 1);
  in.Z = rng.vector(wp.n1(), -1, 1);
  in.U = rng.vector(wp.n2(), -1, 1);
  in.V = rng.vector(wp.n2(), -1, 1);
  in.W = rng.vector(wp.n2(), -1, 1);
  return in;
}

void lemma_suite(const Context& ctx) {
  const WarpedProduct& wp = ctx.problem.wp;
  for (Factor fam : {Factor::Base, Factor::Fiber}) {
    const FieldPlacement p =
        ctx.problem.p.location == fam ? ctx.problem.p : FieldPlacement::zero(wp, fam);
    const std::string p_note = p.location == ctx.problem.p.location && ctx.manifest.p ? "manifest P" : "P = 0";

    std::vector<CurvatureCase> ccases;
    for (auto c : kCurvatureCases)
      if (family(c) == fam) ccases.push_back(c);
    std::vector<RicciCase> rcases;
    for (auto c : kRicciCases)
      if (family(c) == fam) rcases.push_back(c);

    std::vector<Check> curv, ric;
    for (auto c : ccases)
      curv.emplace_back(fmt::format("lemma.curvature.{}", to_string(c)), std::string(describe(c)), ctx.identity_tol);
    for (auto c : rcases)
      ric.emplace_back(fmt::format("lemma.ricci.{}", to_string(c)), std::string(describe(c)), ctx.identity_tol);
    Check scal(fmt::format("lemma.scalar.{}-p", to_string(fam)),
               fmt::format("Sbar from the factors, P on {}", to_string(fam)), ctx.identity_tol);

    Rng rng = vector_rng(ctx.seed, fam == Factor::Base ? 1 : 2);
    for (const auto& pt : ctx.points) {
      std::optional<FactorData> d;
      std::optional<AmbientData> amb;
      try {
        d.emplace(factor_data(wp, p, pt));
        amb.emplace(ambient_data(wp, p, pt));
      } catch (const Error& e) {
        for (auto& c : curv) c.fail(e.what());
        for (auto& c : ric) c.fail(e.what());
        scal.fail(e.what());
        continue;
      }
      for (std::size_t k = 0; k < ccases.size(); ++k) {
        const PlacedVectors in = random_inputs(rng, wp);
        try {
          curv[k].compare(ambient_curvature_lhs(wp, *amb, ccases[k], in), lemma_curvature_rhs(*d, ccases[k], in));
        } catch (const Error& e) {
          curv[k].fail(e.what());
        }
      }
      for (std::size_t k = 0; k < rcases.size(); ++k) {
        const PlacedVectors in = random_inputs(rng, wp);
        try {
          ric[k].compare(ambient_ricci_lhs(wp, *amb, rcases[k], in), lemma_ricci_rhs(*d, rcases[k], in));
        } catch (const Error& e) {
          ric[k].fail(e.what());
        }
      }
      try {
        scal.compare(Vec<double>::Constant(1, amb->s_bar), Vec<double>::Constant(1, scalar_formula_rhs(*d)));
      } catch (const Error& e) {
        scal.fail(e.what());
      }
    }
    for (auto& c : curv) {
      c.note(p_note);
      ctx.out.push_back(std::move(c).finish());
    }
    for (auto& c : ric) {
      c.note(p_note);
      ctx.out.push_back(std::move(c).finish());
    }
    scal.note(p_note);
    ctx.out.push_back(std::move(scal).finish());
  }
}

void ssnm_suite(const Context& ctx) {
  const WarpedProduct& wp = ctx.problem.wp;
  const ChartManifold& m = wp.ambient();
  const Eigen::Index n = wp.dim(), n1 = wp.n1();
  const VectorField p = lift(wp, ctx.problem.p);

  Check relation("ssnm.curvature-relation", "Rbar(X,Y)Z direct vs via Levi-Civita R, nabla P and pi", kRelationTol);
  Check torsion_check("ssnm.torsion", "T(X,Y) = pi(Y)X - pi(X)Y", kTorsionTol);
  Check nonmet("ssnm.nonmetricity", "(nablabar_X g)(Y,Z) = -pi(Y)g(X,Z) - pi(Z)g(X,Y)", kNonmetricityTol);
  Check compat("geometry.metric-compatibility", "Levi-Civita nabla g = 0", kCompatibilityTol);
  Check bianchi("geometry.bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", kBianchiTol);
  Check block("geometry.block-metric", "mixed base/fiber metric jet blocks are exactly zero", 0.0);

  Rng rng = vector_rng(ctx.seed, 3);
  for (const auto& pt : ctx.points) {
    const Vec<double> x = rng.vector(n, -1, 1), y = rng.vector(n, -1, 1), z = rng.vector(n, -1, 1);
    try {
      const SsnmGeometry geo = ssnm_geometry(m, p, pt);
      const CurvatureRelation rel = curvature_relation_check(geo, x, y, z);
      relation.add(rel.error, rel.error / std::max(1.0, max_abs(rel.direct)));

      const Vec<double> t = torsion(geo.bar, x, y);
      const Vec<double> expect = geo.pi_of(y) * x - geo.pi_of(x) * y;
      const double te = max_abs(t - expect);
      torsion_check.add(te, te / (1.0 + max_abs(expect)));

      const double lhs = nonmetricity(geo.base.metric, geo.bar, x, y, z);
      const double rhs = -geo.pi_of(y) * geo.base.inner(x, z) - geo.pi_of(z) * geo.base.inner(x, y);
      nonmet.add(std::abs(lhs - rhs), std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));

      const double c = nonmetricity(geo.base.metric, geo.base.lc, x, y, z);
      compat.add(std::abs(c), std::abs(c) / (1.0 + geo.base.metric.dg.flat().cwiseAbs().maxCoeff()));

      const Tensor4<double> r = riemann_tensor(geo.base.lc);
      const Vec<double> rxy = apply_riemann(r, x, y, z);
      const Vec<double> cyc = rxy + apply_riemann(r, y, z, x) + apply_riemann(r, z, x, y);
      bianchi.add(max_abs(cyc), max_abs(cyc) / (1.0 + max_abs(rxy)));

      double mixed = 0.0;
      const MetricJet<double>& mj = geo.base.metric;
      for (Eigen::Index a = 0; a < n1; ++a)
        for (Eigen::Index u = n1; u < n; ++u) {
          mixed = std::max(mixed, std::abs(mj.g(a, u)));
          for (Eigen::Index k = 0; k < n; ++k) {
            mixed = std::max(mixed, std::abs(mj.dg(k, a, u)));
            for (Eigen::Index l = 0; l < n; ++l) mixed = std::max(mixed, std::abs(mj.d2g(k, l, a, u)));
          }
        }
      block.add(mixed, mixed);
    } catch (const Error& e) {
      for (Check* c : {&relation, &torsion_check, &nonmet, &compat, &bianchi, &block}) c->fail(e.what());
    }
  }
  for (Check* c : {&relation, &torsion_check, &nonmet, &compat, &bianchi, &block})
    ctx.out.push_back(std::move(*c).finish());
}

std::string coefficients(double a, double b, double c, std::size_t generators) {
  std::string s = fmt::format("a={:.17g}", a);
  if (generators > 0) s += fmt::format(" b={:.17g}", b);
  if (generators > 1) s += fmt::format(" c={:.17g}", c);
  return s;
}

void einstein_suite(const Context& ctx) {
  const WarpedProduct& wp = ctx.problem.wp;
  const FieldPlacement& p = ctx.problem.p;
  QEStructure qe = ctx.problem.qe;
  const double fit_tol = ctx.manifest.tolerances.fit;
  const std::size_t ngen = (qe.u1 ? 1 : 0) + (qe.u2 ? 1 : 0);

  std::vector<FieldPlacement> gens;
  if (qe.u1) gens.push_back(*qe.u1);
  if (qe.u2) gens.push_back(*qe.u2);

  Check fit_check("einstein.fit", "least-squares (a, b, c) of Ricbar = a g + b A(x)A + c B(x)B", fit_tol);
  std::optional<FitResult> fitted;
  try {
    fitted = fit(wp, p, gens, ctx.points);
    fit_check.add(fitted->residual, fitted->residual);
    const std::string values = fmt::format("{} residual={:.17g}", coefficients(fitted->a, fitted->b, fitted->c, ngen),
                                           fitted->residual);
    if (ctx.problem.qe_declared) {
      const double dev = std::max({std::abs(fitted->a - qe.a), std::abs(fitted->b - qe.b), std::abs(fitted->c - qe.c)});
      fit_check.add(dev, dev);
      fit_check.note(values);
    } else {
      fit_check.info(values);
    }
  } catch (const Error& e) {
    if (ctx.problem.qe_declared)
      fit_check.fail(e.what());
    else
      fit_check.info(e.what());
  }
  ctx.out.push_back(std::move(fit_check).finish());

  if (!ctx.problem.qe_declared && fitted) {
    qe.a = fitted->a;
    qe.b = fitted->b;
    qe.c = fitted->c;
  }

  double delta = INFINITY;
  {
    Check d("einstein.defect", "max-abs of Ricbar - a g - b A(x)A - c B(x)B", fit_tol);
    try {
      delta = defect(wp, p, qe, ctx.points).max_abs;
      d.add(delta, delta);
      const std::string values = coefficients(qe.a, qe.b, qe.c, ngen);
      if (ctx.problem.qe_declared)
        d.note(values);
      else
        d.info(values + " (fitted, no structure declared)");
    } catch (const Error& e) {
      d.fail(e.what());
    }
    ctx.out.push_back(std::move(d).finish());
  }

  if (!qe.u1) return;
  const std::string pattern = placement_pattern(p, qe);

  for (Proposition prop : propositions_for(p, qe)) {
    try {
      const PropositionReport rep = proposition_check(wp, p, prop, qe, ctx.points);
      for (std::size_t k = 0; k < rep.equations.size(); ++k) {
        const EquationResult& e = rep.equations[k];
        Check c(fmt::format("einstein.prop.{}.{}", to_string(prop), k + 1), e.label, e.bound);
        c.add(e.residual, e.residual);
        c.note(fmt::format("{}; residual <= n^2 delta + 1e-7 with delta={:.3g}{}", pattern, rep.defect,
                           e.as_printed ? "" : "; corrected form"));
        ctx.out.push_back(std::move(c).finish());
      }
    } catch (const Error& e) {
      Check c(fmt::format("einstein.prop.{}", to_string(prop)), pattern, 0.0);
      c.fail(e.what());
      ctx.out.push_back(std::move(c).finish());
    }
  }

  {
    const Alpha which = qe.generalized() ? (p.location == Factor::Base ? Alpha::A3 : Alpha::A4)
                                         : (p.location == Factor::Base ? Alpha::A1 : Alpha::A2);
    Check c("einstein.alpha", fmt::format("{} is constant over the base", to_string(which)), ctx.identity_tol);
    try {
      PointList base_points;
      for (const auto& pt : ctx.points) base_points.emplace_back(pt.begin(), pt.begin() + wp.n1());
      const AlphaConstant al = alpha_check(wp, p, which, qe.a, base_points);
      c.add(al.spread, al.spread);
      const std::string values =
          fmt::format("spread={:.17g} first={:.17g}", al.spread, al.samples.empty() ? 0.0 : al.samples.front().second);
      if (delta <= fit_tol)
        c.note(values);
      else
        c.info(values + " (nonzero defect, diagnostic only)");
    } catch (const Error& e) {
      c.fail(e.what());
    }
    ctx.out.push_back(std::move(c).finish());
  }

  {
    Check c("einstein.theorem", "Delta_B f = c0 f for n1 = 1", 0.0);
    try {
      const TheoremReport t = theorem_bookkeeping(wp, p, qe, ctx.points);
      if (t.status == TheoremReport::Status::Checked) {
        c = Check("einstein.theorem", "Delta_B f = c0 f for n1 = 1", t.bound);
        c.add(t.residual, t.residual);
        c.note(fmt::format("{}; c0 = {} = {:.17g}", t.pattern, t.c0_formula, t.c0));
      } else {
        c.info(fmt::format("{}: {}", to_string(t.status), t.message));
      }
    } catch (const Error& e) {
      c.fail(e.what());
    }
    ctx.out.push_back(std::move(c).finish());
  }
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Lemmas:
      return "lemmas";
    case Suite::Ssnm:
      return "ssnm";
    case Suite::Einstein:
      return "einstein";
    case Suite::All:
      return "all";
  }
  return "";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::Lemmas, Suite::Ssnm, Suite::Einstein, Suite::All})
    if (to_string(s) == name) return s;
  throw InvalidArgument(fmt::format("unknown suite '{}'", name));
}

std::string_view to_string(CheckRecord::Status s) {
  switch (s) {
    case CheckRecord::Status::Pass:
      return "pass";
    case CheckRecord::Status::Fail:
      return "fail";
    case CheckRecord::Status::Info:
      return "info";
  }
  return "";
}

int VerificationReport::count(CheckRecord::Status s) const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

VerificationReport run_suite(const Manifest& m, Suite suite, const SuiteOptions& options) {
  VerificationReport report;
  report.manifest = m.name;
  report.suite = suite;
  report.seed = options.seed.value_or(m.sampling.seed);
  report.points = options.points.value_or(m.sampling.points);
  if (report.points < 1) throw InvalidArgument("need at least one sample point");

  const Problem problem = instantiate(m);
  Rng rng(report.seed);
  const PointList points = sample_points(rng, problem.box, report.points);
  const Context ctx{problem, m, points, report.seed, options.tolerance.value_or(m.tolerances.identity), report.records};

  const std::vector<std::pair<Suite, std::function<void(const Context&)>>> parts = {
      {Suite::Lemmas, lemma_suite}, {Suite::Ssnm, ssnm_suite}, {Suite::Einstein, einstein_suite}};
  for (const auto& [which, run] : parts) {
    if (suite != Suite::All && suite != which) continue;
    try {
      run(ctx);
    } catch (const std::exception& e) {
      Check c(fmt::format("{}.error", to_string(which)), "suite aborted", 0.0);
      c.fail(e.what());
      report.records.push_back(std::move(c).finish());
    }
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return report;
}

}  // namespace wpg
