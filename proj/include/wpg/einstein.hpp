#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpg/ssnm.hpp"
#include "wpg/warped.hpp"

namespace wpg {

/// Ric = a g + b A⊗A + c B⊗B with A = g(·,U1), B = g(·,U2).
/// U1 absent means Einstein; U2 absent means plain quasi-Einstein.
struct QEStructure {
  double a = 0, b = 0, c = 0;
  std::optional<FieldPlacement> u1, u2;

  bool generalized() const { return u2.has_value(); }
};

using PointList = std::vector<std::vector<double>>;

/// Generator one-forms at one point after normalizing each U to |g(U,U)| = 1.
struct GeneratorForms {
  std::vector<Vec<double>> vectors;  // normalized U
  std::vector<Vec<double>> forms;    // g(·, U)
};

/// Throws InvalidArgument if some |g(U,U)| <= 1e-10, if its sign changes across
/// the points, or if two generators are not orthogonal within 1e-8.
std::vector<GeneratorForms> generator_forms(const ChartManifold& chart, const std::vector<VectorField>& generators,
                                            const PointList& points);

struct DefectTensor {
  std::vector<Mat<double>> samples;  // D_ij per point
  double max_abs = 0;
};

DefectTensor defect(const ChartManifold& chart, const ConnectionSpec& connection, double a, double b, double c,
                    const std::vector<VectorField>& generators, const PointList& points);
/// Ambient defect of the lifted P and generators.
DefectTensor defect(const WarpedProduct& wp, const FieldPlacement& p, const QEStructure& qe, const PointList& points);

struct FitResult {
  double a = 0, b = 0, c = 0;
  double residual = 0;  // max-abs defect at the fitted parameters
};

/// Least-squares (a[, b[, c]]) minimizing Σ ‖D‖²_F. Throws IllPosedFit on rank-deficient normal equations.
FitResult fit(const ChartManifold& chart, const ConnectionSpec& connection, const std::vector<VectorField>& generators,
              const PointList& points);
FitResult fit(const WarpedProduct& wp, const FieldPlacement& p, const std::vector<FieldPlacement>& generators,
              const PointList& points);

std::vector<VectorField> lift_generators(const WarpedProduct& wp, const QEStructure& qe);

// ---------------------------------------------------------------------------
// α constants: fΔf + (1−n₂)|grad f|² [+ (1−n̄) f Pf] + a f²

enum class Alpha { A1, A2, A3, A4 };

std::string_view to_string(Alpha which);
/// α₁ and α₃ carry the P f term and need P on the base; α₂ and α₄ need P on the fiber.
Factor alpha_placement(Alpha which);

struct AlphaConstant {
  Alpha which = Alpha::A1;
  std::vector<std::pair<std::vector<double>, double>> samples;  // (base point, value)
  double spread = 0;
};

AlphaConstant alpha_check(const WarpedProduct& wp, const FieldPlacement& p, Alpha which, double a,
                          const PointList& base_points);

// ---------------------------------------------------------------------------
// Propositions: factor-level Ricci and scalar equations of (generalized) quasi-Einstein products.

enum class Proposition {
  QeRicciBaseP,    // Ric̄^B, Ric̄^F with P on the base
  QeRicciFiberP,   // Ric^B, Ric^F with P on the fiber
  QeScalarBaseP,   // S̄^M, S̄^B, S̄^F with P on the base
  QeScalarFiberP,  // S̄^M, S^B, S^F with P on the fiber
  GqeRicciBaseP,
  GqeRicciFiberP,
  GqeScalarBaseP,
  GqeScalarFiberP,
};

inline constexpr std::array kPropositions = {
    Proposition::QeRicciBaseP,  Proposition::QeRicciFiberP,  Proposition::QeScalarBaseP,
    Proposition::QeScalarFiberP, Proposition::GqeRicciBaseP, Proposition::GqeRicciFiberP,
    Proposition::GqeScalarBaseP, Proposition::GqeScalarFiberP};

std::string_view to_string(Proposition p);

/// Placement of P and the generators, e.g. "P:base U:fiber" or "P:fiber U1:base U2:fiber".
std::string placement_pattern(const FieldPlacement& p, const QEStructure& qe);

struct EquationResult {
  std::string label;
  double residual = 0;  // max over samples of the max-abs LHS − RHS
  double bound = 0;     // K δ + 1e-7
  bool pass = false;
  bool as_printed = true;  // false for the corrected companion of a printed equation
};

struct PropositionReport {
  Proposition prop = Proposition::QeRicciBaseP;
  std::string pattern;
  double defect = 0;  // δ
  double k = 0;       // n̄²
  std::vector<EquationResult> equations;

  bool pass() const;
};

/// Throws InvalidArgument when the placements do not match the proposition.
PropositionReport proposition_check(const WarpedProduct& wp, const FieldPlacement& p, Proposition prop,
                                    const QEStructure& qe, const PointList& points);

/// The propositions stated for the placements of P and the generators.
std::vector<Proposition> propositions_for(const FieldPlacement& p, const QEStructure& qe);

// ---------------------------------------------------------------------------
// n₁ = 1 bookkeeping: Δ_B f = c₀ f.

struct TheoremReport {
  enum class Status { Checked, NotApplicable, HypothesisFailed };

  Status status = Status::NotApplicable;
  std::string pattern;
  std::string message;
  std::string c0_formula;
  double c0 = 0, c1 = 0, c2 = 0;
  double defect = 0;
  double residual = 0;  // max |Δ_B f − c₀ f|
  double bound = 0;     // max(1, f) (n̄² δ + 1e-7)
  bool pass = false;
};

std::string_view to_string(TheoremReport::Status s);

TheoremReport theorem_bookkeeping(const WarpedProduct& wp, const FieldPlacement& p, const QEStructure& qe,
                                  const PointList& points);

}  // namespace wpg
