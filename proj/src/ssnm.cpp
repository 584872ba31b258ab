#include "wpg/ssnm.hpp"

namespace wpg {

SsnmGeometry ssnm_geometry(const ChartManifold& chart, const VectorField& p, std::span<const double> point) {
  if (p.dim() != chart.dim()) throw InvalidArgument("generator field does not match the chart dimension");
  SsnmGeometry geo;
  geo.base = local_geometry(chart, point);
  geo.p = eval_vector(p, point);
  geo.pi = lower(geo.base.metric, geo.p);
  geo.bar = semi_symmetric_coeffs(geo.base.lc, geo.pi);
  return geo;
}

ConnectionJet<double> connection_coeffs(const ChartManifold& chart, const ConnectionSpec& spec,
                                        std::span<const double> point) {
  if (spec.kind() == ConnectionSpec::Kind::LeviCivita) return christoffel(chart, point);
  return ssnm_geometry(chart, spec.generator(), point).bar;
}

Vec<double> torsion(const ChartManifold& chart, const ConnectionSpec& spec, std::span<const double> point,
                    const Vec<double>& x, const Vec<double>& y) {
  return torsion(connection_coeffs(chart, spec, point), x, y);
}

CurvatureRelation curvature_relation_check(const SsnmGeometry& geo, const Vec<double>& x, const Vec<double>& y,
                                           const Vec<double>& z) {
  const LocalGeometry& lc = geo.base;
  CurvatureRelation out;
  out.direct = riemann(geo.bar, x, y, z);

  const Vec<double> nabla_x_p = covariant_derivative(lc.lc, geo.p, x);
  const Vec<double> nabla_y_p = covariant_derivative(lc.lc, geo.p, y);
  out.via_relation = riemann(lc.lc, x, y, z) + lc.inner(z, nabla_x_p) * y - lc.inner(z, nabla_y_p) * x +
                     geo.pi_of(z) * (geo.pi_of(y) * x - geo.pi_of(x) * y);
  out.error = (out.direct - out.via_relation).cwiseAbs().maxCoeff();
  return out;
}

CurvatureRelation curvature_relation_check(const ChartManifold& chart, const VectorField& p,
                                           std::span<const double> point, const Vec<double>& x,
                                           const Vec<double>& y, const Vec<double>& z) {
  return curvature_relation_check(ssnm_geometry(chart, p, point), x, y, z);
}

Mat<double> ricci_ssnm(const ChartManifold& chart, const VectorField& p, std::span<const double> point) {
  return ricci(ssnm_geometry(chart, p, point).bar);
}

double scalar_ssnm(const ChartManifold& chart, const VectorField& p, std::span<const double> point) {
  const SsnmGeometry geo = ssnm_geometry(chart, p, point);
  return scalar(ricci(geo.bar), geo.base.metric.g_inv);
}

}  // namespace wpg
