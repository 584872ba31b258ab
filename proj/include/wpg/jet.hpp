#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cmath>

namespace wpg {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Value, gradient and Hessian of a scalar function at a point.
///
/// The Hessian is stored as its packed upper triangle (row-major, i <= j), so
/// it is symmetric by construction; `hessian()` expands it.
template <typename Scalar>
class Jet2 {
 public:
  Jet2() = default;

  /// Constant jet over `n` variables.
  static Jet2 constant(Scalar value, Eigen::Index n) {
    Jet2 j;
    j.value_ = value;
    j.gradient_ = Vec<Scalar>::Zero(n);
    j.packed_ = Vec<Scalar>::Zero(packed_size(n));
    return j;
  }

  /// Jet of the coordinate function x_index.
  static Jet2 variable(Scalar value, Eigen::Index index, Eigen::Index n) {
    Jet2 j = constant(value, n);
    j.gradient_(index) = Scalar(1);
    return j;
  }

  Eigen::Index size() const { return gradient_.size(); }
  Scalar value() const { return value_; }
  const Vec<Scalar>& gradient() const { return gradient_; }

  Scalar hessian(Eigen::Index i, Eigen::Index j) const {
    if (i > j) std::swap(i, j);
    return packed_(packed_index(i, j, size()));
  }

  Mat<Scalar> hessian() const {
    const Eigen::Index n = size();
    Mat<Scalar> h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) h(i, j) = h(j, i) = packed_(packed_index(i, j, n));
    return h;
  }

  const Vec<Scalar>& packed_hessian() const { return packed_; }

  Jet2& operator+=(const Jet2& o) {
    value_ += o.value_;
    gradient_ += o.gradient_;
    packed_ += o.packed_;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    value_ -= o.value_;
    gradient_ -= o.gradient_;
    packed_ -= o.packed_;
    return *this;
  }
  Jet2& operator*=(Scalar s) {
    value_ *= s;
    gradient_ *= s;
    packed_ *= s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator-(Jet2 a) { return a *= Scalar(-1); }
  friend Jet2 operator*(Jet2 a, Scalar s) { return a *= s; }
  friend Jet2 operator*(Scalar s, Jet2 a) { return a *= s; }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    const Eigen::Index n = a.size();
    Jet2 r;
    r.value_ = a.value_ * b.value_;
    r.gradient_ = a.value_ * b.gradient_ + b.value_ * a.gradient_;
    r.packed_ = a.value_ * b.packed_ + b.value_ * a.packed_;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j, ++k)
        r.packed_(k) += a.gradient_(i) * b.gradient_(j) + a.gradient_(j) * b.gradient_(i);
    return r;
  }

  /// Chain rule for a scalar function phi with phi(u), phi'(u), phi''(u) given.
  friend Jet2 compose(const Jet2& u, Scalar phi, Scalar dphi, Scalar d2phi) {
    const Eigen::Index n = u.size();
    Jet2 r;
    r.value_ = phi;
    r.gradient_ = dphi * u.gradient_;
    r.packed_ = dphi * u.packed_;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j, ++k) r.packed_(k) += d2phi * u.gradient_(i) * u.gradient_(j);
    return r;
  }

  static Eigen::Index packed_size(Eigen::Index n) { return n * (n + 1) / 2; }
  static Eigen::Index packed_index(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
    assert(i <= j);
    return i * n - i * (i - 1) / 2 + (j - i);
  }

 private:
  Scalar value_{};
  Vec<Scalar> gradient_;
  Vec<Scalar> packed_;
};

template <typename Scalar>
Jet2<Scalar> reciprocal(const Jet2<Scalar>& v) {
  const Scalar x = v.value();
  return compose(v, Scalar(1) / x, Scalar(-1) / (x * x), Scalar(2) / (x * x * x));
}

template <typename Scalar>
Jet2<Scalar> operator/(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return a * reciprocal(b);
}

template <typename Scalar>
Jet2<Scalar> sin(const Jet2<Scalar>& u) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  return compose(u, s, c, -s);
}

template <typename Scalar>
Jet2<Scalar> cos(const Jet2<Scalar>& u) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(u.value()), c = cos(u.value());
  return compose(u, c, -s, -c);
}

template <typename Scalar>
Jet2<Scalar> tan(const Jet2<Scalar>& u) {
  using std::tan;
  const Scalar t = tan(u.value());
  const Scalar sec2 = Scalar(1) + t * t;
  return compose(u, t, sec2, Scalar(2) * t * sec2);
}

template <typename Scalar>
Jet2<Scalar> sinh(const Jet2<Scalar>& u) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(u.value()), c = cosh(u.value());
  return compose(u, s, c, s);
}

template <typename Scalar>
Jet2<Scalar> cosh(const Jet2<Scalar>& u) {
  using std::cosh;
  using std::sinh;
  const Scalar s = sinh(u.value()), c = cosh(u.value());
  return compose(u, c, s, c);
}

template <typename Scalar>
Jet2<Scalar> tanh(const Jet2<Scalar>& u) {
  using std::tanh;
  const Scalar t = tanh(u.value());
  const Scalar sech2 = Scalar(1) - t * t;
  return compose(u, t, sech2, Scalar(-2) * t * sech2);
}

template <typename Scalar>
Jet2<Scalar> exp(const Jet2<Scalar>& u) {
  using std::exp;
  const Scalar e = exp(u.value());
  return compose(u, e, e, e);
}

/// Requires u > 0.
template <typename Scalar>
Jet2<Scalar> log(const Jet2<Scalar>& u) {
  using std::log;
  const Scalar x = u.value();
  return compose(u, log(x), Scalar(1) / x, Scalar(-1) / (x * x));
}

/// Requires u > 0.
template <typename Scalar>
Jet2<Scalar> sqrt(const Jet2<Scalar>& u) {
  using std::sqrt;
  const Scalar r = sqrt(u.value());
  return compose(u, r, Scalar(0.5) / r, Scalar(-0.25) / (r * u.value()));
}

/// u^p for a constant exponent p.
template <typename Scalar>
Jet2<Scalar> pow(const Jet2<Scalar>& u, Scalar p) {
  using std::pow;
  const Scalar x = u.value();
  if (p == Scalar(0)) return Jet2<Scalar>::constant(Scalar(1), u.size());
  if (p == Scalar(1)) return u;
  if (p == Scalar(2)) return u * u;
  return compose(u, pow(x, p), p * pow(x, p - Scalar(1)), p * (p - Scalar(1)) * pow(x, p - Scalar(2)));
}

}  // namespace wpg
