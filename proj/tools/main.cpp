#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wpg/catalog.hpp"
#include "wpg/suite.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

wpg::Manifest resolve(const std::string& manifest_path, const std::string& catalog_name) {
  if (!manifest_path.empty()) return wpg::load_manifest(manifest_path);
  return wpg::catalog(catalog_name);
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw wpg::InvalidArgument(fmt::format("bad coordinate '{}' in --at", item));
    out.push_back(v);
  }
  return out;
}

void print_matrix(const std::string& title, const wpg::Mat<double>& m) {
  fmt::print("{}\n", title);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    fmt::print(" ");
    for (Eigen::Index j = 0; j < m.cols(); ++j) fmt::print(" {:>14.8g}", m(i, j));
    fmt::print("\n");
  }
}

void print_connection(const std::string& title, const wpg::Tensor3<double>& gamma,
                      const std::vector<std::string>& coords) {
  fmt::print("{} (nonzero Gamma^k_ij, with nabla_i d_j = Gamma^k_ij d_k)\n", title);
  const Eigen::Index n = gamma.dim();
  bool any = false;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (gamma(k, i, j) != 0.0) {
          fmt::print("  Gamma^{}_{} {} = {:.10g}\n", coords[k], coords[i], coords[j], gamma(k, i, j));
          any = true;
        }
  if (!any) fmt::print("  all zero\n");
}

int run_curvature(const wpg::Manifest& m, const std::vector<double>& at) {
  const wpg::Problem problem = wpg::instantiate(m);
  const wpg::ChartManifold& chart = problem.wp.ambient();
  if (static_cast<Eigen::Index>(at.size()) != chart.dim())
    throw wpg::InvalidArgument(fmt::format("--at needs {} coordinates ({})", chart.dim(), fmt::join(chart.coords(), ", ")));
  const wpg::SsnmGeometry geo = wpg::ssnm_geometry(chart, wpg::lift(problem.wp, problem.p), at);
  const wpg::Mat<double> ric = wpg::ricci(geo.base.lc);
  const wpg::Mat<double> ric_bar = wpg::ricci(geo.bar);

  fmt::print("manifest {} at ({}) in coordinates ({})\n", m.name, fmt::join(at, ", "), fmt::join(chart.coords(), ", "));
  print_matrix("g", geo.base.metric.g);
  print_connection("Levi-Civita", geo.base.lc.gamma, chart.coords());
  print_connection("semi-symmetric", geo.bar.gamma, chart.coords());
  print_matrix("Ric", ric);
  print_matrix("Ricbar", ric_bar);
  fmt::print("S = {:.12g}\n", wpg::scalar(ric, geo.base.metric.g_inv));
  fmt::print("Sbar = {:.12g}\n", wpg::scalar(ric_bar, geo.base.metric.g_inv));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warped-product curvature engine and identity checker"};
  app.require_subcommand(1);

  std::string manifest_path, catalog_name, suite_name, report_path, at_text, show_name;
  int points = 0;
  std::uint64_t seed = 0;
  double tol = 0;
  bool list = false;

  auto* check = app.add_subcommand("check", "run a verification suite");
  auto* src_manifest = check->add_option("--manifest", manifest_path, "manifest JSON file");
  auto* src_catalog = check->add_option("--catalog", catalog_name, "built-in manifold name");
  src_manifest->excludes(src_catalog);
  check->add_option("--suite", suite_name, "lemmas | ssnm | einstein | all")->required();
  auto* opt_points = check->add_option("--points", points, "sample points")->check(CLI::PositiveNumber);
  auto* opt_seed = check->add_option("--seed", seed, "sampling seed");
  auto* opt_tol = check->add_option("--tol", tol, "identity tolerance")->check(CLI::PositiveNumber);
  check->add_option("--report", report_path, "write the structured report here");

  auto* cat = app.add_subcommand("catalog", "list or show built-in manifolds");
  auto* opt_list = cat->add_flag("--list", list, "list names");
  auto* opt_show = cat->add_option("--show", show_name, "print a manifest");
  opt_list->excludes(opt_show);

  auto* curv = app.add_subcommand("curvature", "print g, Gamma, Gammabar, Ric, Ricbar, S, Sbar at a point");
  auto* c_manifest = curv->add_option("--manifest", manifest_path, "manifest JSON file");
  auto* c_catalog = curv->add_option("--catalog", catalog_name, "built-in manifold name");
  c_manifest->excludes(c_catalog);
  curv->add_option("--at", at_text, "comma-separated ambient coordinates")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInvalid;
  }

  if (*cat) {
    if (list) {
      for (const auto& n : wpg::catalog_names()) fmt::print("{}\n", n);
      fmt::print("random-<seed>\n");
      return 0;
    }
    if (show_name.empty()) {
      fmt::print(stderr, "catalog: give --list or --show <name>\n");
      return kExitInvalid;
    }
    try {
      fmt::print("{}\n", wpg::to_json(wpg::catalog(show_name)));
    } catch (const wpg::Error& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return kExitInvalid;
    }
    return 0;
  }

  if ((*check || *curv) && manifest_path.empty() && catalog_name.empty()) {
    fmt::print(stderr, "give --manifest <path> or --catalog <name>\n");
    return kExitInvalid;
  }

  wpg::Manifest manifest;
  try {
    manifest = resolve(manifest_path, catalog_name);
    wpg::instantiate(manifest);
  } catch (const wpg::Error& e) {
    fmt::print(stderr, "invalid manifest: {}\n", e.what());
    return kExitInvalid;
  }

  if (*curv) {
    try {
      return run_curvature(manifest, parse_point(at_text));
    } catch (const wpg::Error& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return kExitFail;
    }
  }

  wpg::Suite suite;
  try {
    suite = wpg::parse_suite(suite_name);
  } catch (const wpg::Error& e) {
    fmt::print(stderr, "{}\n", e.what());
    return kExitInvalid;
  }
  wpg::SuiteOptions options;
  if (*opt_points) options.points = points;
  if (*opt_seed) options.seed = seed;
  if (*opt_tol) options.tolerance = tol;

  const wpg::VerificationReport report = wpg::run_suite(manifest, suite, options);
  fmt::print("{}", wpg::report_table(report));
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      fmt::print(stderr, "cannot write report '{}'\n", report_path);
      return kExitFail;
    }
    out << wpg::report_json(report);
  }
  return report.pass() ? 0 : kExitFail;
}
