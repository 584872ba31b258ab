#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wpg/manifest.hpp"

namespace wpg {

/// mt19937_64 with a portable uniform conversion, so sample streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  Vec<double> vector(Eigen::Index n, double lo, double hi) {
    Vec<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// One point per call, i.i.d. uniform in the box, coordinates drawn in order.
std::vector<double> sample_point(Rng& rng, const std::vector<Interval>& box);
std::vector<std::vector<double>> sample_points(Rng& rng, const std::vector<Interval>& box, int count);

/// Coordinate names x0, x1, ... with the given prefix.
std::vector<std::string> coordinate_names(const std::string& prefix, int dim);

/// Diagonal chart with entries 1 + Σ c_i x_i + Σ d_i x_i², c, d ∈ [−0.3, 0.3], box [−0.5, 0.5]^dim.
ChartSpec random_diagonal_chart(Rng& rng, const std::string& prefix, int dim);

/// Full symmetric chart: diagonal entries 1 + Σ c_i x_i + Σ d_i x_i² with c, d ∈ [−0.15, 0.15]
/// and off-diagonal entries 0.05 (c₀ + Σ c_i x_i) with c ∈ [−1, 1]; positive definite on [−0.5, 0.5]^dim.
ChartSpec random_general_chart(Rng& rng, const std::string& prefix, int dim);

/// Polynomial components of degree ≤ 2 with coefficients in [−0.5, 0.5].
std::vector<std::string> random_polynomial_field(Rng& rng, const std::vector<std::string>& coords);

/// f = 1 + 0.25 Σ_k ℓ_k(x)² with random affine ℓ_k.
std::string random_warp(Rng& rng, const std::vector<std::string>& coords);

/// Diagonal factors with n₁, n₂ ∈ {1, 2, 3}, positive warp and a polynomial P on a random factor.
Manifest random_warped_manifest(std::uint64_t seed);

/// Same construction with fixed dimensions and P placement.
Manifest random_warped_manifest(std::uint64_t seed, int n1, int n2, Factor p_on);

/// Exact decimal text of a double ("%.17g").
std::string number_text(double v);

}  // namespace wpg
