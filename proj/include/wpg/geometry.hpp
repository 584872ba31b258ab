#pragma once

#include <span>
#include <string>
#include <vector>

#include "wpg/error.hpp"
#include "wpg/expr.hpp"
#include "wpg/jet.hpp"
#include "wpg/tensor.hpp"

namespace wpg {

// Sign conventions used throughout:
//   R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z,  R(∂_i,∂_j)∂_k = R^l_ijk ∂_l
//   Ric(X,Y) = Σ_k ε_k ⟨R(X,E_k)Y, E_k⟩ = R^a_iaj X^i Y^j
//   S = Σ_k ε_k Ric(E_k,E_k) = g^ij Ric_ij
//   H^f(X,Y) = XYf − (∇_X Y)f,   Δf = −tr H^f
// This Ricci is the negative of the textbook one (a unit sphere has S = −(n−1)n),
// and Δ is the negative of the Laplace–Beltrami operator. See classical_sign().

/// One coordinate chart with a symbolic metric.
class ChartManifold {
 public:
  /// `metric` holds the upper triangle row by row: g_00, g_01, ..., g_0n, g_11, ...
  /// `signature` lists the ε_k of an orthonormal frame.
  ChartManifold(std::vector<std::string> coords, std::vector<Expression> metric_upper, std::vector<int> signature);

  /// Chart from a full n x n grid of formulas; the lower triangle must match the upper.
  static ChartManifold from_text(std::vector<std::string> coords,
                                 const std::vector<std::vector<std::string>>& metric,
                                 std::vector<int> signature);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  const Expression& metric(Eigen::Index i, Eigen::Index j) const;
  const std::vector<int>& signature() const { return signature_; }
  int negative_count() const;

 private:
  std::vector<std::string> coords_;
  std::vector<Expression> metric_;
  std::vector<int> signature_;
};

/// Vector field on a chart with one formula per coordinate direction.
class VectorField {
 public:
  VectorField(const ChartManifold& chart, std::vector<Expression> components);
  static VectorField zero(const ChartManifold& chart);
  static VectorField from_text(const ChartManifold& chart, const std::vector<std::string>& components);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(components_.size()); }
  const std::vector<Expression>& components() const { return components_; }
  bool is_zero() const;

 private:
  std::vector<Expression> components_;
};

/// Value and first derivatives of a vector field: jacobian(i, j) = ∂_j P^i.
template <typename Scalar>
struct VectorJet {
  Vec<Scalar> value;
  Mat<Scalar> jacobian;
};

template <typename Scalar>
struct MetricJet {
  Mat<Scalar> g;
  Mat<Scalar> g_inv;
  Tensor3<Scalar> dg;   // dg(k, i, j) = ∂_k g_ij
  Tensor4<Scalar> d2g;  // d2g(k, l, i, j) = ∂_k ∂_l g_ij
};

/// Affine connection coefficients at a point: gamma(k, i, j) = Γ^k_ij with
/// ∇_{∂_i} ∂_j = Γ^k_ij ∂_k, and dgamma(l, k, i, j) = ∂_l Γ^k_ij.
template <typename Scalar>
struct ConnectionJet {
  Tensor3<Scalar> gamma;
  Tensor4<Scalar> dgamma;
};

/// Per-point scalar-field calculus under the conventions above.
template <typename Scalar>
struct ScalarCalculus {
  Vec<Scalar> grad_f;
  Scalar grad_norm2{};
  Mat<Scalar> hessian_f;
  Scalar laplacian_f{};
  Scalar Pf{};
};

// ---------------------------------------------------------------------------
// Kernels on dense jets, templated on the scalar type.

/// Levi-Civita coefficients Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il − ∂_l g_ij) and their exact derivatives.
template <typename Scalar>
ConnectionJet<Scalar> levi_civita(const MetricJet<Scalar>& m) {
  const Eigen::Index n = m.g.rows();
  // first-kind symbols C(l, i, j) = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij) and their derivatives
  Tensor3<Scalar> c(n);
  Tensor4<Scalar> dc(n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        c(l, i, j) = Scalar(0.5) * (m.dg(i, j, l) + m.dg(j, i, l) - m.dg(l, i, j));
        for (Eigen::Index q = 0; q < n; ++q)
          dc(q, l, i, j) = Scalar(0.5) * (m.d2g(q, i, j, l) + m.d2g(q, j, i, l) - m.d2g(q, l, i, j));
      }

  ConnectionJet<Scalar> out{Tensor3<Scalar>(n), Tensor4<Scalar>(n)};
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        Scalar s(0);
        for (Eigen::Index l = 0; l < n; ++l) s += m.g_inv(k, l) * c(l, i, j);
        out.gamma(k, i, j) = out.gamma(k, j, i) = s;
      }

  // ∂_q g^kl = −g^ka ∂_q g_ab g^bl
  for (Eigen::Index q = 0; q < n; ++q) {
    Mat<Scalar> dq(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) dq(a, b) = m.dg(q, a, b);
    const Mat<Scalar> dinv = -m.g_inv * dq * m.g_inv;
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
          Scalar s(0);
          for (Eigen::Index l = 0; l < n; ++l) s += dinv(k, l) * c(l, i, j) + m.g_inv(k, l) * dc(q, l, i, j);
          out.dgamma(q, k, i, j) = out.dgamma(q, k, j, i) = s;
        }
  }
  return out;
}

/// Full curvature tensor R(l, i, j, k) = R^l_ijk of an arbitrary connection.
template <typename Scalar>
Tensor4<Scalar> riemann_tensor(const ConnectionJet<Scalar>& c) {
  const Eigen::Index n = c.gamma.dim();
  Tensor4<Scalar> r(n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
          Scalar s = c.dgamma(i, l, j, k) - c.dgamma(j, l, i, k);
          for (Eigen::Index m = 0; m < n; ++m)
            s += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          r(l, i, j, k) = s;
        }
  return r;
}

/// R(X,Y)Z contracted from a precomputed curvature tensor.
template <typename Scalar>
Vec<Scalar> apply_riemann(const Tensor4<Scalar>& r, const Vec<Scalar>& x, const Vec<Scalar>& y,
                          const Vec<Scalar>& z) {
  const Eigen::Index n = r.dim();
  Vec<Scalar> out = Vec<Scalar>::Zero(n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x(i) == Scalar(0)) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (y(j) == Scalar(0)) continue;
        for (Eigen::Index k = 0; k < n; ++k) out(l) += r(l, i, j, k) * x(i) * y(j) * z(k);
      }
    }
  return out;
}

/// R(X,Y)Z for the given connection at the point the jet was taken.
template <typename Scalar>
Vec<Scalar> riemann(const ConnectionJet<Scalar>& c, const Vec<Scalar>& x, const Vec<Scalar>& y,
                    const Vec<Scalar>& z) {
  return apply_riemann(riemann_tensor(c), x, y, z);
}

/// Ric_ij = R^a_iaj. Not symmetrized.
template <typename Scalar>
Mat<Scalar> ricci(const Tensor4<Scalar>& r) {
  const Eigen::Index n = r.dim();
  Mat<Scalar> ric = Mat<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index a = 0; a < n; ++a) ric(i, j) += r(a, i, a, j);
  return ric;
}

template <typename Scalar>
Mat<Scalar> ricci(const ConnectionJet<Scalar>& c) {
  return ricci(riemann_tensor(c));
}

/// S = g^ij Ric_ij; only the symmetric part of Ric contributes.
template <typename Scalar>
Scalar scalar(const Mat<Scalar>& ric, const Mat<Scalar>& g_inv) {
  return (g_inv.array() * ric.array()).sum();
}

/// (∇_X P)^k = X^i (∂_i P^k + Γ^k_ij P^j)
template <typename Scalar>
Vec<Scalar> covariant_derivative(const ConnectionJet<Scalar>& c, const VectorJet<Scalar>& p, const Vec<Scalar>& x) {
  const Eigen::Index n = c.gamma.dim();
  Vec<Scalar> out = p.jacobian * x;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out(k) += c.gamma(k, i, j) * x(i) * p.value(j);
  return out;
}

/// div P = ∂_i P^i + Γ^i_ik P^k
template <typename Scalar>
Scalar divergence(const ConnectionJet<Scalar>& c, const VectorJet<Scalar>& p) {
  const Eigen::Index n = c.gamma.dim();
  Scalar s = p.jacobian.trace();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) s += c.gamma(i, i, k) * p.value(k);
  return s;
}

/// H^f_ij = ∂_i∂_j f − Γ^k_ij ∂_k f, exactly symmetric for a torsion-free connection.
template <typename Scalar>
Mat<Scalar> hessian(const ConnectionJet<Scalar>& c, const Jet2<Scalar>& f) {
  const Eigen::Index n = c.gamma.dim();
  Mat<Scalar> h = f.hessian();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) h(i, j) -= c.gamma(k, i, j) * f.gradient()(k);
  return h;
}

template <typename Scalar>
ScalarCalculus<Scalar> scalar_calculus(const MetricJet<Scalar>& m, const ConnectionJet<Scalar>& c,
                                       const Jet2<Scalar>& f, const Vec<Scalar>& p) {
  ScalarCalculus<Scalar> out;
  out.grad_f = m.g_inv * f.gradient();
  out.grad_norm2 = f.gradient().dot(out.grad_f);
  out.hessian_f = hessian(c, f);
  out.laplacian_f = -scalar(out.hessian_f, m.g_inv);
  out.Pf = p.dot(f.gradient());
  return out;
}

/// The textbook-sign counterpart of a Ricci matrix or scalar computed here.
template <typename T>
T classical_sign(const T& value) {
  return -value;
}

// ---------------------------------------------------------------------------
// Chart-level evaluation (double precision).

/// Raised when |det g| < kDegeneracyThreshold · (max |g_ij|)^n.
inline constexpr double kDegeneracyThreshold = 1e-12;

MetricJet<double> metric_jet(const ChartManifold& chart, std::span<const double> point);
VectorJet<double> eval_vector(const VectorField& field, std::span<const double> point);

/// Everything a Levi-Civita computation needs at one point.
struct LocalGeometry {
  Vec<double> point;
  MetricJet<double> metric;
  ConnectionJet<double> lc;

  double inner(const Vec<double>& a, const Vec<double>& b) const { return a.dot(metric.g * b); }
};

LocalGeometry local_geometry(const ChartManifold& chart, std::span<const double> point);

// Convenience wrappers for the Levi-Civita connection of a chart.
ConnectionJet<double> christoffel(const ChartManifold& chart, std::span<const double> point);
Vec<double> riemann(const ChartManifold& chart, std::span<const double> point, const Vec<double>& x,
                    const Vec<double>& y, const Vec<double>& z);
Mat<double> ricci(const ChartManifold& chart, std::span<const double> point);
double scalar(const ChartManifold& chart, std::span<const double> point);
ScalarCalculus<double> scalar_calculus(const ChartManifold& chart, const Expression& f, const VectorField& p,
                                       std::span<const double> point);
double divergence(const ChartManifold& chart, const VectorField& p, std::span<const double> point);

}  // namespace wpg
