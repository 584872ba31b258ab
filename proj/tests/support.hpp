#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wpg/expr.hpp"
#include "wpg/geometry.hpp"
#include "wpg/random.hpp"

namespace wpg::test {

inline double max_abs(const Vec<double>& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat<double>& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Vec<double> unit(Eigen::Index n, Eigen::Index i) { return Vec<double>::Unit(n, i); }

inline std::vector<double> to_std(const Vec<double>& v) { return {v.data(), v.data() + v.size()}; }

/// Central differences of the plain value: gradient with step h, hessian from the 4-point stencil.
struct FiniteDifference {
  double value = 0;
  Vec<double> gradient;
  Mat<double> hessian;
};

inline FiniteDifference central_differences(const Expression& e, const std::vector<double>& p, double h = 1e-4) {
  const auto n = static_cast<Eigen::Index>(p.size());
  auto at = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    std::vector<double> q = p;
    if (i >= 0) q[i] += di;
    if (j >= 0) q[j] += dj;
    return e.eval(q);
  };
  FiniteDifference fd{e.eval(p), Vec<double>(n), Mat<double>(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    fd.gradient(i) = (at(i, h, -1, 0) - at(i, -h, -1, 0)) / (2 * h);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j)
        fd.hessian(i, i) = (at(i, h, -1, 0) - 2 * fd.value + at(i, -h, -1, 0)) / (h * h);
      else
        fd.hessian(i, j) = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4 * h * h);
    }
  }
  return fd;
}

/// Random smooth formula over `coords`. Arguments of log and sqrt are kept positive
/// and divisions use denominators bounded away from zero.
inline std::string random_expression(Rng& rng, const std::vector<std::string>& coords, int depth) {
  auto number = [&] { return number_text(std::round(rng.uniform(-2, 2) * 100) / 100); };
  if (depth <= 0 || rng.uniform() < 0.2) {
    if (rng.uniform() < 0.7) return coords[rng.integer(0, static_cast<int>(coords.size()) - 1)];
    return "(" + number() + ")";
  }
  const std::string a = random_expression(rng, coords, depth - 1);
  switch (rng.integer(0, 11)) {
    case 0:
      return "(" + a + " + " + random_expression(rng, coords, depth - 1) + ")";
    case 1:
      return "(" + a + " - " + random_expression(rng, coords, depth - 1) + ")";
    case 2:
    case 3:
      return "(" + a + " * " + random_expression(rng, coords, depth - 1) + ")";
    case 4:
      return "(" + a + ") / (2 + sin(" + random_expression(rng, coords, depth - 1) + "))";
    case 5:
      return "(" + a + ")^" + std::to_string(rng.integer(2, 3));
    case 6:
      return "sin(" + a + ")";
    case 7:
      return "cos(" + a + ")";
    case 8:
      return "exp(0.3*tanh(" + a + "))";
    case 9:
      return "log(1.5 + (" + a + ")^2)";
    case 10:
      return "sqrt(1 + cosh(0.5*tanh(" + a + ")))";
    default:
      return "-(" + a + ")";
  }
}

/// Orthonormal frame by Gram-Schmidt with ε-aware normalization. The next vector is the
/// remaining coordinate direction with the largest |⟨v, v⟩| after projection.
struct Frame {
  std::vector<Vec<double>> e;
  std::vector<int> eps;
};

inline Frame gram_schmidt(const Mat<double>& g) {
  const Eigen::Index n = g.rows();
  std::vector<Vec<double>> pool;
  for (Eigen::Index i = 0; i < n; ++i) pool.push_back(unit(n, i));
  Frame out;
  while (!pool.empty()) {
    for (auto& v : pool)
      for (std::size_t k = 0; k < out.e.size(); ++k) v -= out.eps[k] * v.dot(g * out.e[k]) * out.e[k];
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i)
      if (std::abs(pool[i].dot(g * pool[i])) > std::abs(pool[best].dot(g * pool[best]))) best = i;
    const double q = pool[best].dot(g * pool[best]);
    out.e.push_back(pool[best] / std::sqrt(std::abs(q)));
    out.eps.push_back(q > 0 ? 1 : -1);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

/// Ric(X,Y) = Σ_k ε_k ⟨R(X,E_k)Y, E_k⟩ as a coordinate matrix.
inline Mat<double> frame_ricci(const Tensor4<double>& r, const Mat<double>& g) {
  const Eigen::Index n = g.rows();
  const Frame fr = gram_schmidt(g);
  Mat<double> ric(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < fr.e.size(); ++k)
        s += fr.eps[k] * apply_riemann(r, unit(n, i), fr.e[k], unit(n, j)).dot(g * fr.e[k]);
      ric(i, j) = s;
    }
  return ric;
}

inline double frame_scalar(const Mat<double>& ric, const Mat<double>& g) {
  const Frame fr = gram_schmidt(g);
  double s = 0;
  for (std::size_t k = 0; k < fr.e.size(); ++k) s += fr.eps[k] * fr.e[k].dot(ric * fr.e[k]);
  return s;
}

/// div P = Σ_k ε_k ⟨∇_{E_k} P, E_k⟩
inline double frame_divergence(const ConnectionJet<double>& c, const VectorJet<double>& p, const Mat<double>& g) {
  const Frame fr = gram_schmidt(g);
  double s = 0;
  for (std::size_t k = 0; k < fr.e.size(); ++k)
    s += fr.eps[k] * covariant_derivative(c, p, fr.e[k]).dot(g * fr.e[k]);
  return s;
}

}  // namespace wpg::test
