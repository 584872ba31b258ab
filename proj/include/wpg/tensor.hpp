#pragma once

#include <Eigen/Core>
#include <cassert>

namespace wpg {

/// Dense n x n x n array, all indices running over the same dimension.
template <typename Scalar>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(Eigen::Index n) : n_(n), data_(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n * n * n)) {}

  Eigen::Index dim() const { return n_; }
  Scalar& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) { return data_(index(a, b, c)); }
  Scalar operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) const { return data_(index(a, b, c)); }

  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& flat() const { return data_; }

 private:
  Eigen::Index index(Eigen::Index a, Eigen::Index b, Eigen::Index c) const {
    assert(a < n_ && b < n_ && c < n_);
    return (a * n_ + b) * n_ + c;
  }

  Eigen::Index n_ = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> data_;
};

/// Dense n^4 array.
template <typename Scalar>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(Eigen::Index n)
      : n_(n), data_(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n * n * n * n)) {}

  Eigen::Index dim() const { return n_; }
  Scalar& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index d) {
    return data_(index(a, b, c, d));
  }
  Scalar operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index d) const {
    return data_(index(a, b, c, d));
  }

  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& flat() const { return data_; }

 private:
  Eigen::Index index(Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index d) const {
    assert(a < n_ && b < n_ && c < n_ && d < n_);
    return ((a * n_ + b) * n_ + c) * n_ + d;
  }

  Eigen::Index n_ = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> data_;
};

}  // namespace wpg
