#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "wpg/geometry.hpp"
#include "wpg/ssnm.hpp"

namespace wpg {

enum class Factor { Base, Fiber };

std::string_view to_string(Factor f);

/// B ×_f F with ambient metric g_B ⊕ f² g_F; ambient coordinates are base coordinates followed by fiber ones.
class WarpedProduct {
 public:
  const ChartManifold& base() const { return base_; }
  const ChartManifold& fiber() const { return fiber_; }
  const ChartManifold& ambient() const { return ambient_; }
  /// The warping function over the base coordinates.
  const Expression& warp() const { return warp_; }

  Eigen::Index n1() const { return base_.dim(); }
  Eigen::Index n2() const { return fiber_.dim(); }
  Eigen::Index dim() const { return base_.dim() + fiber_.dim(); }

  const ChartManifold& factor(Factor f) const { return f == Factor::Base ? base_ : fiber_; }

  std::span<const double> base_point(std::span<const double> ambient_point) const {
    return ambient_point.subspan(0, static_cast<std::size_t>(n1()));
  }
  std::span<const double> fiber_point(std::span<const double> ambient_point) const {
    return ambient_point.subspan(static_cast<std::size_t>(n1()));
  }

 private:
  friend WarpedProduct build(ChartManifold base, ChartManifold fiber, const Expression& f);
  WarpedProduct(ChartManifold base, ChartManifold fiber, Expression warp, ChartManifold ambient)
      : base_(std::move(base)), fiber_(std::move(fiber)), warp_(std::move(warp)), ambient_(std::move(ambient)) {}

  ChartManifold base_;
  ChartManifold fiber_;
  Expression warp_;
  ChartManifold ambient_;
};

/// Throws InvalidArgument on a coordinate-name collision or when f references a non-base coordinate.
WarpedProduct build(ChartManifold base, ChartManifold fiber, const Expression& f);
WarpedProduct build(ChartManifold base, ChartManifold fiber, std::string_view f);

/// A vector field living entirely on one factor.
struct FieldPlacement {
  Factor location = Factor::Base;
  std::vector<Expression> components;  // over the factor's coordinates

  static FieldPlacement zero(const WarpedProduct& wp, Factor location);
  static FieldPlacement from_text(const WarpedProduct& wp, Factor location, const std::vector<std::string>& components);
  VectorField on_factor(const WarpedProduct& wp) const;
};

VectorField lift(const WarpedProduct& wp, const FieldPlacement& placement);
Vec<double> lift_vector(const WarpedProduct& wp, Factor location, const Vec<double>& v);

// ---------------------------------------------------------------------------
// Curvature, Ricci and scalar identities for the semi-symmetric connection
// generated by a P tangent to one factor.

/// B*: P tangent to the base. F*: P tangent to the fiber.
/// X, Y, Z are base vectors; U, V, W are fiber vectors.
enum class CurvatureCase {
  B1,  // R̄(X,Y)Z
  B2,  // R̄(V,X)Y
  B3,  // R̄(X,Y)V and R̄(V,W)X (stacked)
  B4,  // R̄(X,V)W
  B5,  // R̄(U,V)W
  F1,  // R̄(X,Y)Z
  F2,  // R̄(V,X)Y
  F3,  // R̄(X,Y)V
  F4,  // R̄(V,W)X
  F5,  // R̄(X,V)W
  F6,  // R̄(U,V)W
};

enum class RicciCase {
  B1,  // Ric̄(X,Y)
  B2,  // Ric̄(X,V) and Ric̄(V,X)
  B3,  // Ric̄(V,W)
  F1,  // Ric̄(X,Y)
  F2,  // Ric̄(X,V)
  F3,  // Ric̄(V,X)
  F4,  // Ric̄(V,W)
};

inline constexpr std::array kCurvatureCases = {
    CurvatureCase::B1, CurvatureCase::B2, CurvatureCase::B3, CurvatureCase::B4, CurvatureCase::B5, CurvatureCase::F1,
    CurvatureCase::F2, CurvatureCase::F3, CurvatureCase::F4, CurvatureCase::F5, CurvatureCase::F6};
inline constexpr std::array kRicciCases = {RicciCase::B1, RicciCase::B2, RicciCase::B3, RicciCase::F1,
                                           RicciCase::F2, RicciCase::F3, RicciCase::F4};

std::string_view to_string(CurvatureCase c);
std::string_view to_string(RicciCase c);
/// The identity in words, e.g. "Rbar(V,X)Y, P on base".
std::string_view describe(CurvatureCase c);
std::string_view describe(RicciCase c);
Factor family(CurvatureCase c);
Factor family(RicciCase c);

struct PlacedVectors {
  std::optional<Vec<double>> X, Y, Z;  // base
  std::optional<Vec<double>> U, V, W;  // fiber
};

/// Base and fiber geometry, warping-function calculus and P data at one ambient point.
struct FactorData {
  const WarpedProduct* wp = nullptr;
  Factor p_location = Factor::Base;

  LocalGeometry base, fiber, ambient;
  Tensor4<double> base_r, base_rbar, fiber_r;
  Mat<double> base_ric, base_ric_bar, fiber_ric;
  double base_s = 0, base_sbar = 0, fiber_s = 0;

  double f = 0;
  Vec<double> df;                   // ∂_a f
  ScalarCalculus<double> calculus;  // base calculus of f (with P's base part for Pf)
  Mat<double> nabla_grad_f;         // (∇^B_X grad f)^a = nabla_grad_f(a, b) X^b

  VectorJet<double> p_factor;   // P on its own factor
  VectorJet<double> p_ambient;  // lifted P
  Vec<double> pi;               // ambient one-form π = g(·, P)
  double pi_p = 0;              // π(P)
  double div_base_p = 0;        // base divergence (0 for fiber P)
  double div_fiber_p = 0;       // fiber divergence (0 for base P)

  double pi_of(const Vec<double>& ambient_vector) const { return pi.dot(ambient_vector); }
};

/// Throws InvalidArgument if f(point) <= 0.
FactorData factor_data(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point);

/// Ambient semi-symmetric geometry of the lifted P.
struct AmbientData {
  SsnmGeometry geo;
  Tensor4<double> rbar;
  Mat<double> ric_bar;
  double s_bar = 0;
};

AmbientData ambient_data(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point);

/// Right-hand side of a curvature case assembled from factor-level quantities (ambient components).
Vec<double> lemma_curvature_rhs(const FactorData& d, CurvatureCase c, const PlacedVectors& in);
Vec<double> lemma_curvature_rhs(const WarpedProduct& wp, CurvatureCase c, const FieldPlacement& p,
                                const PlacedVectors& in, std::span<const double> point);
/// The same quantity computed directly from the ambient connection.
Vec<double> ambient_curvature_lhs(const WarpedProduct& wp, const AmbientData& a, CurvatureCase c,
                                  const PlacedVectors& in);

/// Right-hand side of a Ricci case (two entries for B2, one otherwise).
Vec<double> lemma_ricci_rhs(const FactorData& d, RicciCase c, const PlacedVectors& in);
Vec<double> lemma_ricci_rhs(const WarpedProduct& wp, RicciCase c, const FieldPlacement& p, const PlacedVectors& in,
                            std::span<const double> point);
Vec<double> ambient_ricci_lhs(const WarpedProduct& wp, const AmbientData& a, RicciCase c, const PlacedVectors& in);

/// Scalar curvature of ∇̄ assembled from the factors; the formula used depends on P's placement.
double scalar_formula_rhs(const FactorData& d);
double scalar_formula_rhs(const WarpedProduct& wp, const FieldPlacement& p, std::span<const double> point);

}  // namespace wpg
