#pragma once

#include <optional>

#include "wpg/geometry.hpp"

namespace wpg {

/// Levi-Civita, or the semi-symmetric non-metric connection
/// ∇̄_X Y = ∇_X Y + π(Y) X generated by P, with π(X) = g(X, P).
class ConnectionSpec {
 public:
  enum class Kind { LeviCivita, SemiSymmetricNonMetric };

  static ConnectionSpec levi_civita() { return ConnectionSpec(); }
  static ConnectionSpec semi_symmetric(VectorField p) { return ConnectionSpec(std::move(p)); }

  Kind kind() const { return p_ ? Kind::SemiSymmetricNonMetric : Kind::LeviCivita; }
  const VectorField& generator() const { return *p_; }

 private:
  ConnectionSpec() = default;
  explicit ConnectionSpec(VectorField p) : p_(std::move(p)) {}

  std::optional<VectorField> p_;
};

/// π_j = g_jl P^l with its first derivatives: dpi(m, j) = ∂_m π_j.
template <typename Scalar>
struct OneFormJet {
  Vec<Scalar> value;
  Mat<Scalar> jacobian;
};

template <typename Scalar>
OneFormJet<Scalar> lower(const MetricJet<Scalar>& m, const VectorJet<Scalar>& p) {
  const Eigen::Index n = m.g.rows();
  OneFormJet<Scalar> pi{m.g * p.value, Mat<Scalar>(n, n)};
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar s(0);
      for (Eigen::Index l = 0; l < n; ++l) s += m.dg(q, j, l) * p.value(l) + m.g(j, l) * p.jacobian(l, q);
      pi.jacobian(q, j) = s;
    }
  return pi;
}

/// Γ̄^k_ij = Γ^k_ij + δ^k_i π_j, with exact first derivatives.
template <typename Scalar>
ConnectionJet<Scalar> semi_symmetric_coeffs(const ConnectionJet<Scalar>& lc, const OneFormJet<Scalar>& pi) {
  const Eigen::Index n = lc.gamma.dim();
  ConnectionJet<Scalar> bar = lc;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      bar.gamma(i, i, j) += pi.value(j);
      for (Eigen::Index q = 0; q < n; ++q) bar.dgamma(q, i, i, j) += pi.jacobian(q, j);
    }
  return bar;
}

/// T(X,Y) = ∇̄_X Y − ∇̄_Y X − [X,Y] for constant-coefficient X, Y.
template <typename Scalar>
Vec<Scalar> torsion(const ConnectionJet<Scalar>& c, const Vec<Scalar>& x, const Vec<Scalar>& y) {
  const Eigen::Index n = c.gamma.dim();
  Vec<Scalar> t = Vec<Scalar>::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) t(k) += (c.gamma(k, i, j) - c.gamma(k, j, i)) * x(i) * y(j);
  return t;
}

/// (∇̄_X g)(Y,Z) = X(g(Y,Z)) − g(∇̄_X Y, Z) − g(Y, ∇̄_X Z) at the jet's point.
template <typename Scalar>
Scalar nonmetricity(const MetricJet<Scalar>& m, const ConnectionJet<Scalar>& c, const Vec<Scalar>& x,
                    const Vec<Scalar>& y, const Vec<Scalar>& z) {
  const Eigen::Index n = m.g.rows();
  Scalar out(0);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        Scalar s = m.dg(k, i, j);
        for (Eigen::Index l = 0; l < n; ++l) s -= c.gamma(l, k, i) * m.g(l, j) + c.gamma(l, k, j) * m.g(i, l);
        out += s * x(k) * y(i) * z(j);
      }
  return out;
}

/// Levi-Civita geometry plus the semi-symmetric connection at one point.
struct SsnmGeometry {
  LocalGeometry base;
  VectorJet<double> p;
  OneFormJet<double> pi;
  ConnectionJet<double> bar;

  double pi_of(const Vec<double>& x) const { return pi.value.dot(x); }
};

SsnmGeometry ssnm_geometry(const ChartManifold& chart, const VectorField& p, std::span<const double> point);

/// Connection coefficients of either kind.
ConnectionJet<double> connection_coeffs(const ChartManifold& chart, const ConnectionSpec& spec,
                                        std::span<const double> point);

Vec<double> torsion(const ChartManifold& chart, const ConnectionSpec& spec, std::span<const double> point,
                    const Vec<double>& x, const Vec<double>& y);

struct CurvatureRelation {
  Vec<double> direct;
  Vec<double> via_relation;
  double error = 0.0;  // max-abs component difference
};

/// R̄(X,Y)Z computed from Γ̄ and from
/// R(X,Y)Z + g(Z,∇_X P)Y − g(Z,∇_Y P)X + π(Z)[π(Y)X − π(X)Y] with Levi-Civita ∇.
CurvatureRelation curvature_relation_check(const ChartManifold& chart, const VectorField& p,
                                           std::span<const double> point, const Vec<double>& x,
                                           const Vec<double>& y, const Vec<double>& z);
CurvatureRelation curvature_relation_check(const SsnmGeometry& geo, const Vec<double>& x, const Vec<double>& y,
                                           const Vec<double>& z);

Mat<double> ricci_ssnm(const ChartManifold& chart, const VectorField& p, std::span<const double> point);
double scalar_ssnm(const ChartManifold& chart, const VectorField& p, std::span<const double> point);

}  // namespace wpg
