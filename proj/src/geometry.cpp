#include "wpg/geometry.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <Eigen/Eigenvalues>
#include <cmath>

namespace wpg {
namespace {

Eigen::Index upper_index(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
  if (i > j) std::swap(i, j);
  return Jet2<double>::packed_index(i, j, n);
}

}  // namespace

ChartManifold::ChartManifold(std::vector<std::string> coords, std::vector<Expression> metric_upper,
                             std::vector<int> signature)
    : coords_(std::move(coords)), metric_(std::move(metric_upper)), signature_(std::move(signature)) {
  const auto n = static_cast<Eigen::Index>(coords_.size());
  if (n < 1) throw InvalidArgument("chart dimension must be at least 1");
  if (static_cast<Eigen::Index>(metric_.size()) != Jet2<double>::packed_size(n))
    throw InvalidArgument(fmt::format("chart of dimension {} needs {} metric entries, got {}", n,
                                      Jet2<double>::packed_size(n), metric_.size()));
  if (static_cast<Eigen::Index>(signature_.size()) != n)
    throw InvalidArgument(fmt::format("signature has {} entries for dimension {}", signature_.size(), n));
  for (int e : signature_)
    if (e != 1 && e != -1) throw InvalidArgument("signature entries must be +1 or -1");
  for (auto& e : metric_)
    if (e.coordinates() != coords_) e = e.rebind(coords_);
}

ChartManifold ChartManifold::from_text(std::vector<std::string> coords,
                                       const std::vector<std::vector<std::string>>& metric,
                                       std::vector<int> signature) {
  const std::size_t n = coords.size();
  if (metric.size() != n) throw InvalidArgument(fmt::format("metric has {} rows, expected {}", metric.size(), n));
  std::vector<Expression> upper;
  for (std::size_t i = 0; i < n; ++i) {
    // rows may be full or upper-triangular (row i holding entries i..n-1)
    const auto& row = metric[i];
    const bool full = row.size() == n;
    if (!full && row.size() != n - i)
      throw InvalidArgument(fmt::format("metric row {} has {} entries", i, row.size()));
    for (std::size_t j = i; j < n; ++j) upper.push_back(parse(row[full ? j : j - i], coords));
    if (full)
      for (std::size_t j = 0; j < i; ++j) {
        const Expression lower = parse(row[j], coords);
        const Expression& mirror = upper[Jet2<double>::packed_index(j, i, n)];
        if (!(lower == mirror))
          throw InvalidArgument(fmt::format("metric is not symmetric at ({}, {}): '{}' vs '{}'", i, j,
                                            lower.to_string(), mirror.to_string()));
      }
  }
  return ChartManifold(std::move(coords), std::move(upper), std::move(signature));
}

const Expression& ChartManifold::metric(Eigen::Index i, Eigen::Index j) const {
  return metric_[upper_index(i, j, dim())];
}

int ChartManifold::negative_count() const {
  int c = 0;
  for (int e : signature_) c += e < 0;
  return c;
}

VectorField::VectorField(const ChartManifold& chart, std::vector<Expression> components)
    : components_(std::move(components)) {
  if (static_cast<Eigen::Index>(components_.size()) != chart.dim())
    throw InvalidArgument(
        fmt::format("vector field has {} components on a chart of dimension {}", components_.size(), chart.dim()));
  for (auto& c : components_)
    if (c.coordinates() != chart.coords()) c = c.rebind(chart.coords());
}

VectorField VectorField::zero(const ChartManifold& chart) {
  return VectorField(chart, std::vector<Expression>(chart.dim(), Expression::constant(0.0, chart.coords())));
}

VectorField VectorField::from_text(const ChartManifold& chart, const std::vector<std::string>& components) {
  std::vector<Expression> parsed;
  for (const auto& c : components) parsed.push_back(parse(c, chart.coords()));
  return VectorField(chart, std::move(parsed));
}

bool VectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

MetricJet<double> metric_jet(const ChartManifold& chart, std::span<const double> point) {
  const Eigen::Index n = chart.dim();
  if (static_cast<Eigen::Index>(point.size()) != n)
    throw InvalidArgument(fmt::format("point has {} coordinates, chart has {}", point.size(), n));

  MetricJet<double> m{Mat<double>(n, n), Mat<double>(n, n), Tensor3<double>(n), Tensor4<double>(n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const Jet2<double> e = chart.metric(i, j).eval_jet2(point);
      m.g(i, j) = m.g(j, i) = e.value();
      for (Eigen::Index k = 0; k < n; ++k) {
        m.dg(k, i, j) = m.dg(k, j, i) = e.gradient()(k);
        for (Eigen::Index l = 0; l < n; ++l) m.d2g(k, l, i, j) = m.d2g(k, l, j, i) = e.hessian(k, l);
      }
    }

  const double scale = m.g.cwiseAbs().maxCoeff();
  const double det = m.g.determinant();
  if (!(std::abs(det) >= kDegeneracyThreshold * std::pow(scale, static_cast<double>(n))) || scale == 0.0)
    throw DegenerateMetric(fmt::format("degenerate metric at ({}): det = {:.3g}", fmt::join(point, ", "), det));

  Eigen::SelfAdjointEigenSolver<Mat<double>> eig(m.g, Eigen::EigenvaluesOnly);
  int negatives = 0;
  for (Eigen::Index k = 0; k < n; ++k) negatives += eig.eigenvalues()(k) < 0.0;
  if (negatives != chart.negative_count())
    throw SignatureMismatch(fmt::format("metric at ({}) has {} negative eigenvalues, signature declares {}",
                                        fmt::join(point, ", "), negatives, chart.negative_count()));

  m.g_inv = m.g.inverse();
  return m;
}

VectorJet<double> eval_vector(const VectorField& field, std::span<const double> point) {
  const Eigen::Index n = field.dim();
  VectorJet<double> v{Vec<double>(n), Mat<double>(n, static_cast<Eigen::Index>(point.size()))};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Jet2<double> c = field.components()[i].eval_jet2(point);
    v.value(i) = c.value();
    v.jacobian.row(i) = c.gradient().transpose();
  }
  return v;
}

LocalGeometry local_geometry(const ChartManifold& chart, std::span<const double> point) {
  LocalGeometry geo;
  geo.point = Eigen::Map<const Vec<double>>(point.data(), static_cast<Eigen::Index>(point.size()));
  geo.metric = metric_jet(chart, point);
  geo.lc = levi_civita(geo.metric);
  return geo;
}

ConnectionJet<double> christoffel(const ChartManifold& chart, std::span<const double> point) {
  return levi_civita(metric_jet(chart, point));
}

Vec<double> riemann(const ChartManifold& chart, std::span<const double> point, const Vec<double>& x,
                    const Vec<double>& y, const Vec<double>& z) {
  return riemann(christoffel(chart, point), x, y, z);
}

Mat<double> ricci(const ChartManifold& chart, std::span<const double> point) {
  return ricci(christoffel(chart, point));
}

double scalar(const ChartManifold& chart, std::span<const double> point) {
  const LocalGeometry geo = local_geometry(chart, point);
  return scalar(ricci(geo.lc), geo.metric.g_inv);
}

ScalarCalculus<double> scalar_calculus(const ChartManifold& chart, const Expression& f, const VectorField& p,
                                       std::span<const double> point) {
  const LocalGeometry geo = local_geometry(chart, point);
  const Expression bound = f.coordinates() == chart.coords() ? f : f.rebind(chart.coords());
  return scalar_calculus(geo.metric, geo.lc, bound.eval_jet2(point), eval_vector(p, point).value);
}

double divergence(const ChartManifold& chart, const VectorField& p, std::span<const double> point) {
  return divergence(christoffel(chart, point), eval_vector(p, point));
}

}  // namespace wpg
