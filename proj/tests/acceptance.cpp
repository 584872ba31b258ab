// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: acceptance [criterion...]   (all criteria when none is given)

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"
#include "wpg/catalog.hpp"
#include "wpg/einstein.hpp"
#include "wpg/suite.hpp"

using namespace wpg;
using test::max_abs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void sub(bool ok, std::string line) {
    pass = pass && ok;
    details.push_back(fmt::format("  [{}] {}", ok ? "ok" : "FAIL", line));
  }
};

PointList sample(const std::vector<Interval>& box, int count, std::uint64_t seed) {
  Rng rng(seed);
  return sample_points(rng, box, count);
}

// 1. Curvature relation of the semi-symmetric connection on random charts.
Outcome relation_on_random_charts() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const int dim = rng.integer(2, 4);
    const ChartSpec spec = random_general_chart(rng, "x", dim);
    const ChartManifold chart = ChartManifold::from_text(spec.coords, spec.metric, spec.signature);
    const VectorField p = VectorField::from_text(chart, random_polynomial_field(rng, chart.coords()));
    for (const auto& pt : sample_points(rng, spec.box, 100)) {
      const SsnmGeometry geo = ssnm_geometry(chart, p, pt);
      const Vec<double> x = rng.vector(dim, -1, 1), y = rng.vector(dim, -1, 1), z = rng.vector(dim, -1, 1);
      const CurvatureRelation r = curvature_relation_check(geo, x, y, z);
      worst = std::max(worst, r.error / std::max(1.0, max_abs(r.direct)));
    }
  }
  const double elapsed = seconds_since(t0);
  o.sub(worst <= 1e-8, fmt::format("max relative error {:.3g} <= 1e-8 over 20 charts x 100 points", worst));
  o.sub(elapsed <= 10.0, fmt::format("runtime {:.2f} s <= 10 s", elapsed));
  o.summary = fmt::format("max relative error {:.3g}, {:.2f} s", worst, elapsed);
  return o;
}

// 2. Every curvature, Ricci and scalar decomposition over the catalog and 20 random products.
Outcome master_identity_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<std::string> names = catalog_names();
  for (int s = 1; s <= 20; ++s) names.push_back(fmt::format("random-{}", s));
  double worst = 0;
  std::string worst_at;
  std::set<std::string> ids;
  int failed = 0;
  for (const auto& name : names) {
    SuiteOptions opt;
    opt.points = 50;
    const VerificationReport r = run_suite(catalog(name), Suite::Lemmas, opt);
    for (const auto& c : r.records) {
      if (!c.id.starts_with("lemma.")) continue;
      ids.insert(c.id);
      if (c.status != CheckRecord::Status::Pass) ++failed;
      if (c.max_scaled > worst || c.status != CheckRecord::Status::Pass) {
        worst = std::max(worst, c.max_scaled);
        worst_at = fmt::format("{} {}", name, c.id);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.sub(ids.size() == 20, fmt::format("{} identities covered (11 curvature, 7 Ricci, 2 scalar)", ids.size()));
  o.sub(failed == 0 && worst <= 1e-7,
        fmt::format("max scaled error {:.3g} <= 1e-7 ({}) over {} manifolds x 50 points", worst, worst_at, names.size()));
  o.sub(elapsed <= 60.0, fmt::format("runtime {:.2f} s <= 60 s", elapsed));
  o.summary = fmt::format("max scaled error {:.3g}, {} failed records, {:.2f} s", worst, failed, elapsed);
  return o;
}

// 3. Closed-form fixtures. Ricci and scalar use Ric_ij = R^a_iaj; the classical value is the negative.
Outcome closed_form_fixtures() {
  Outcome o;
  {
    const Problem s = instantiate(catalog("unit-sphere-warped"));
    double err = 0, observed = 0;
    for (const auto& pt : sample(s.box, 50, 1)) {
      observed = scalar(s.wp.ambient(), pt);
      err = std::max(err, std::abs(observed - 2.0));
    }
    o.sub(err <= 1e-9, fmt::format("unit-sphere-warped S = 2: observed {:.12g} (classical sign {:.12g}), |err| {:.3g}",
                                   observed, classical_sign(observed), err));
  }
  {
    const Problem h = instantiate(catalog("hyperbolic3"));
    double err = 0, err_classical = 0;
    for (const auto& pt : sample(h.box, 50, 2)) {
      const Mat<double> ric = ricci(h.wp.ambient(), pt);
      const Mat<double> g = metric_jet(h.wp.ambient(), pt).g;
      err = std::max(err, max_abs(Mat<double>(ric + 2 * g)));
      err_classical = std::max(err_classical, max_abs(Mat<double>(classical_sign(ric) + 2 * g)));
    }
    o.sub(err <= 1e-8, fmt::format("hyperbolic3 Ric = -2g: |Ric + 2g| {:.3g} (Ric = +2g here; classical sign |err| {:.3g})",
                                   err, err_classical));
  }
  {
    const Problem h = instantiate(catalog("hyperbolic2-ssnm"));
    double err = 0;
    for (const auto& pt : sample(h.box, 50, 3))
      err = std::max(err, std::abs(scalar_ssnm(h.wp.ambient(), lift(h.wp, h.p), pt) - 2.0));
    o.sub(err <= 1e-8, fmt::format("hyperbolic2-ssnm Sbar = 2: |err| {:.3g}", err));
  }
  {
    const ChartManifold e = ChartManifold::from_text({"x", "y"}, {{"1", "0"}, {"1"}}, {1, 1});
    const VectorField p = VectorField::from_text(e, {"1", "0"});
    Mat<double> expected(2, 2);
    expected << -1, 0, 0, 0;
    double err_ric = 0, err_s = 0;
    for (const auto& pt : sample({{-1, 1}, {-1, 1}}, 50, 4)) {
      err_ric = std::max(err_ric, max_abs(Mat<double>(ricci_ssnm(e, p, pt) - expected)));
      err_s = std::max(err_s, std::abs(scalar_ssnm(e, p, pt) + 1.0));
    }
    o.sub(err_ric <= 1e-10, fmt::format("Euclidean pi = dx Ricbar = diag(-1, 0): |err| {:.3g}", err_ric));
    o.sub(err_s <= 1e-10, fmt::format("Euclidean pi = dx Sbar = -1: |err| {:.3g}", err_s));
  }
  {
    const Problem m = instantiate(catalog("minkowski-flat"));
    double err = 0;
    for (const auto& pt : sample(m.box, 50, 5)) {
      const Tensor4<double> r = riemann_tensor(christoffel(m.wp.ambient(), pt));
      err = std::max(err, r.flat().cwiseAbs().maxCoeff());
    }
    o.sub(err <= 1e-12, fmt::format("minkowski-flat curvature = 0: |R| {:.3g}", err));
  }
  int bad = 0;
  for (const auto& d : o.details) bad += d.find("[FAIL]") != std::string::npos;
  o.summary = fmt::format("{} of {} fixtures hold", o.details.size() - bad, o.details.size());
  return o;
}

// 4. Antisymmetric mixed Ricci of the semi-symmetric connection with P tangent to the fiber.
Outcome ssnm_ricci_antisymmetry() {
  Outcome o;
  const WarpedProduct wp = build(ChartManifold::from_text({"t"}, {{"1"}}, {1}),
                                 ChartManifold::from_text({"x"}, {{"1"}}, {1}), "exp(t)");
  const FieldPlacement p = FieldPlacement::from_text(wp, Factor::Fiber, {"1"});
  double err = 0;
  for (const auto& pt : sample({{-1, 1}, {-1, 1}}, 50, 6)) {
    const Mat<double> ric = ricci_ssnm(wp.ambient(), lift(wp, p), pt);
    const double e2t = std::exp(2 * pt[0]);
    err = std::max({err, std::abs(ric(0, 1) - e2t), std::abs(ric(1, 0) + e2t)});
  }
  o.sub(err <= 1e-8, fmt::format("Ricbar(dt,dx) = -Ricbar(dx,dt) = e^(2t) at 50 points: |err| {:.3g}", err));
  o.summary = fmt::format("|err| {:.3g}", err);
  return o;
}

// 5. Quasi-Einstein fitting and the conditional-identity contract.
Outcome qe_machinery() {
  Outcome o;
  {
    const Problem rs = instantiate(catalog("r-cross-s2"));
    const FitResult f = fit(rs.wp, rs.p, {*rs.qe.u1}, sample(rs.box, 50, 7));
    const double err = std::max(std::abs(f.a - 1.0), std::abs(f.b + 1.0));
    o.sub(err <= 1e-8, fmt::format("r-cross-s2 fit (a, b) = (1, -1): observed ({:.12g}, {:.12g}), classical sign "
                                   "({:.12g}, {:.12g})",
                                   f.a, f.b, -f.a, -f.b));
    o.sub(f.residual <= 1e-8, fmt::format("r-cross-s2 fit residual {:.3g} <= 1e-8", f.residual));

    QEStructure qe = rs.qe;
    qe.a = f.a, qe.b = f.b;
    const PropositionReport r = proposition_check(rs.wp, rs.p, Proposition::QeScalarBaseP, qe, sample(rs.box, 50, 8));
    const double nbar = static_cast<double>(rs.wp.dim());
    const double s_direct = scalar_ssnm(rs.wp.ambient(), lift(rs.wp, rs.p), sample(rs.box, 1, 9).front());
    const double printed = std::abs(2.0 - (nbar * f.a + f.b));
    o.sub(printed <= 5e-13, fmt::format("scalar line 2 = 3a + b with fitted (a, b): 3a + b = {:.12g}, Sbar^M = {:.12g}",
                                        nbar * f.a + f.b, s_direct));
    o.sub(r.equations.at(0).residual <= 1e-7,
          fmt::format("scalar line Sbar^M = n a + b with fitted (a, b): residual {:.3g}", r.equations.at(0).residual));
  }
  {
    const Problem h = instantiate(catalog("hyperbolic3"));
    const FitResult f = fit(h.wp, h.p, {*h.qe.u1}, sample(h.box, 50, 10));
    const double err = std::max(std::abs(f.a + 2.0), std::abs(f.b));
    o.sub(err <= 1e-8, fmt::format("hyperbolic3 fit (a, b) = (-2, 0): observed ({:.12g}, {:.3g}), classical sign "
                                   "({:.12g}, {:.3g})",
                                   f.a, f.b, -f.a, -f.b));
  }

  struct Pattern {
    Factor p, u1;
    std::optional<Factor> u2;
  };
  const std::vector<Pattern> patterns{
      {Factor::Base, Factor::Base, {}},              {Factor::Base, Factor::Fiber, {}},
      {Factor::Fiber, Factor::Base, {}},             {Factor::Fiber, Factor::Fiber, {}},
      {Factor::Base, Factor::Base, Factor::Base},    {Factor::Base, Factor::Fiber, Factor::Fiber},
      {Factor::Base, Factor::Base, Factor::Fiber},   {Factor::Fiber, Factor::Base, Factor::Base},
      {Factor::Fiber, Factor::Fiber, Factor::Fiber}, {Factor::Fiber, Factor::Base, Factor::Fiber}};
  auto coordinate_field = [](Factor f, int dim, int k) {
    std::vector<std::string> c(dim, "0");
    c[k] = "1";
    return FieldSpec{f, c};
  };
  for (const auto& pat : patterns) {
    int checked = 0, failed = 0, propositions = 0, corrected = 0;
    double worst_ratio = 0, worst_corrected = 0;
    std::string pattern;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const int n1 = 2 + static_cast<int>(seed % 2), n2 = 2 + static_cast<int>((seed / 2) % 2);
      Manifest m = random_warped_manifest(1000 * (1 + static_cast<int>(pat.p)) + seed, n1, n2, pat.p);
      auto dim_of = [&](Factor f) { return f == Factor::Base ? n1 : n2; };
      m.u1 = coordinate_field(pat.u1, dim_of(pat.u1), 0);
      if (pat.u2) m.u2 = coordinate_field(*pat.u2, dim_of(*pat.u2), *pat.u2 == pat.u1 ? 1 : 0);
      const Problem pr = instantiate(m);
      const PointList pts = sample(pr.box, 50, seed);
      std::vector<FieldPlacement> gens{*pr.qe.u1};
      if (pr.qe.u2) gens.push_back(*pr.qe.u2);
      const FitResult f = fit(pr.wp, pr.p, gens, pts);
      QEStructure qe = pr.qe;
      qe.a = f.a, qe.b = f.b, qe.c = f.c;
      pattern = placement_pattern(pr.p, qe);
      for (Proposition prop : propositions_for(pr.p, qe)) {
        const PropositionReport r = proposition_check(pr.wp, pr.p, prop, qe, pts);
        for (const auto& e : r.equations) {
          if (!e.as_printed) {
            ++corrected;
            worst_corrected = std::max(worst_corrected, e.residual / e.bound);
            continue;
          }
          ++checked;
          if (!e.pass) ++failed;
          worst_ratio = std::max(worst_ratio, e.residual / e.bound);
        }
        ++propositions;
      }
    }
    o.sub(checked > 0 && failed == 0,
          fmt::format("contract on '{}': {} propositions, {} printed equations, max residual/bound {:.3g}; "
                      "{} corrected lines, max residual/bound {:.3g}",
                      pattern, propositions, checked, worst_ratio, corrected, worst_corrected));
  }
  int bad = 0;
  for (const auto& d : o.details) bad += d.find("[FAIL]") != std::string::npos;
  o.summary = fmt::format("{} of {} sub-checks hold", o.details.size() - bad, o.details.size());
  return o;
}

// 6. Jets against central differences.
Outcome derivative_oracle() {
  Outcome o;
  Rng rng(2024);
  double worst = 0;
  int count = 0;
  while (count < 200) {
    const int dim = rng.integer(1, 3);
    const auto coords = coordinate_names("x", dim);
    const Expression e = parse(test::random_expression(rng, coords, 5), coords);
    if (e.is_constant()) continue;
    const std::vector<double> p = test::to_std(rng.vector(dim, -1, 1));
    const Jet2<double> j = e.eval_jet2(p);
    const auto fd = test::central_differences(e, p, 1e-4);
    for (Eigen::Index i = 0; i < dim; ++i) {
      worst = std::max(worst, std::abs(j.gradient()(i) - fd.gradient(i)) / std::max(1.0, std::abs(j.gradient()(i))));
      for (Eigen::Index k = 0; k < dim; ++k)
        worst = std::max(worst, std::abs(j.hessian(i, k) - fd.hessian(i, k)) / std::max(1.0, std::abs(j.hessian(i, k))));
    }
    ++count;
  }
  o.sub(worst <= 1e-5, fmt::format("max relative jet vs finite-difference error {:.3g} <= 1e-5 on {} expressions", worst, count));
  o.summary = fmt::format("max relative error {:.3g}", worst);
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 7. Two CLI runs per catalog entry give byte-identical structured reports.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "wpg_acceptance";
  std::filesystem::create_directories(dir);
  int identical = 0, total = 0;
  for (const auto& name : catalog_names()) {
    std::string reports[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / fmt::format("{}-{}.json", name, k);
      const std::string cmd = fmt::format("{} check --catalog {} --suite all --seed 42 --report {} > /dev/null 2>&1",
                                          WPG_CLI_PATH, name, path.string());
      const int status = std::system(cmd.c_str());
      (void)status;
      reports[k] = read_file(path);
    }
    ++total;
    const bool same = !reports[0].empty() && reports[0] == reports[1];
    identical += same;
    o.sub(same, fmt::format("{}: {} bytes", name, reports[0].size()));
  }
  std::filesystem::remove_all(dir);
  o.summary = fmt::format("{} of {} catalog reports byte-identical", identical, total);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"curvature relation on random charts", relation_on_random_charts},
      {"master identity suite", master_identity_suite},
      {"closed-form fixtures", closed_form_fixtures},
      {"mixed Ricci antisymmetry", ssnm_ricci_antisymmetry},
      {"quasi-Einstein machinery", qe_machinery},
      {"derivative oracle", derivative_oracle},
      {"determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  bool all = true;
  for (int k : selected) {
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      fmt::print(stderr, "unknown criterion {}\n", k);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = fmt::format("error: {}", e.what());
    }
    fmt::print("criterion {}: {} | {} | {}\n", k, o.pass ? "PASS" : "FAIL", criteria[k - 1].first, o.summary);
    for (const auto& d : o.details) fmt::print("{}\n", d);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
