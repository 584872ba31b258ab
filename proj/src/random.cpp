#include "wpg/random.hpp"

#include <fmt/format.h>

#include <cstdio>

namespace wpg {
namespace {

constexpr double kHalfBox = 0.5;

/// Appends c·monomial with an explicit sign; an empty monomial appends the bare constant.
void append_term(std::string& s, double c, const std::string& monomial) {
  const std::string mag = number_text(std::abs(c));
  const std::string term = monomial.empty() ? mag : mag + "*" + monomial;
  if (s.empty())
    s = c < 0 ? "-" + term : term;
  else
    s += (c < 0 ? " - " : " + ") + term;
}

std::string square(const std::string& x) { return x + "^2"; }

std::string diagonal_entry(Rng& rng, const std::vector<std::string>& coords, double range) {
  std::string s = "1";
  for (const auto& x : coords) append_term(s, rng.uniform(-range, range), x);
  for (const auto& x : coords) append_term(s, rng.uniform(-range, range), square(x));
  return s;
}

std::string affine(Rng& rng, const std::vector<std::string>& coords, double range) {
  std::string s;
  append_term(s, rng.uniform(-range, range), "");
  for (const auto& x : coords) append_term(s, rng.uniform(-range, range), x);
  return s;
}

std::vector<Interval> unit_box(int dim) { return std::vector<Interval>(dim, Interval{-kHalfBox, kHalfBox}); }

Manifest random_manifest(Rng& rng, std::uint64_t seed, int n1, int n2, Factor p_on) {
  Manifest m;
  m.name = fmt::format("random-{}", seed);
  m.base = random_diagonal_chart(rng, "x", n1);
  m.fiber = random_diagonal_chart(rng, "y", n2);
  m.warping = random_warp(rng, m.base.coords);
  m.p = FieldSpec{p_on, random_polynomial_field(rng, p_on == Factor::Base ? m.base.coords : m.fiber.coords)};
  return m;
}

}  // namespace

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> sample_point(Rng& rng, const std::vector<Interval>& box) {
  std::vector<double> p;
  p.reserve(box.size());
  for (const auto& iv : box) p.push_back(rng.uniform(iv.lo, iv.hi));
  return p;
}

std::vector<std::vector<double>> sample_points(Rng& rng, const std::vector<Interval>& box, int count) {
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) out.push_back(sample_point(rng, box));
  return out;
}

std::vector<std::string> coordinate_names(const std::string& prefix, int dim) {
  std::vector<std::string> out;
  for (int i = 0; i < dim; ++i) out.push_back(fmt::format("{}{}", prefix, i));
  return out;
}

ChartSpec random_diagonal_chart(Rng& rng, const std::string& prefix, int dim) {
  ChartSpec c;
  c.coords = coordinate_names(prefix, dim);
  for (int i = 0; i < dim; ++i) {
    std::vector<std::string> row{diagonal_entry(rng, c.coords, 0.3)};
    for (int j = i + 1; j < dim; ++j) row.push_back("0");
    c.metric.push_back(std::move(row));
  }
  c.signature.assign(dim, 1);
  c.box = unit_box(dim);
  return c;
}

ChartSpec random_general_chart(Rng& rng, const std::string& prefix, int dim) {
  ChartSpec c;
  c.coords = coordinate_names(prefix, dim);
  for (int i = 0; i < dim; ++i) {
    std::vector<std::string> row{diagonal_entry(rng, c.coords, 0.15)};
    for (int j = i + 1; j < dim; ++j) row.push_back("0.05*(" + affine(rng, c.coords, 1.0) + ")");
    c.metric.push_back(std::move(row));
  }
  c.signature.assign(dim, 1);
  c.box = unit_box(dim);
  return c;
}

std::vector<std::string> random_polynomial_field(Rng& rng, const std::vector<std::string>& coords) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    std::string s = affine(rng, coords, 0.5);
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = i; j < coords.size(); ++j)
        append_term(s, rng.uniform(-0.5, 0.5), i == j ? square(coords[i]) : coords[i] + "*" + coords[j]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string random_warp(Rng& rng, const std::vector<std::string>& coords) {
  std::string sum;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!sum.empty()) sum += " + ";
    sum += "(" + affine(rng, coords, 1.0) + ")^2";
  }
  return "1 + 0.25*(" + sum + ")";
}

Manifest random_warped_manifest(std::uint64_t seed) {
  Rng rng(seed);
  const int n1 = rng.integer(1, 3);
  const int n2 = rng.integer(1, 3);
  const Factor p_on = rng.uniform() < 0.5 ? Factor::Base : Factor::Fiber;
  return random_manifest(rng, seed, n1, n2, p_on);
}

Manifest random_warped_manifest(std::uint64_t seed, int n1, int n2, Factor p_on) {
  Rng rng(seed);
  return random_manifest(rng, seed, n1, n2, p_on);
}

}  // namespace wpg
