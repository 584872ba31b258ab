#include "wpg/catalog.hpp"

#include <fmt/format.h>

#include <charconv>
#include <numbers>

#include "wpg/random.hpp"

namespace wpg {
namespace {

constexpr double kPi = std::numbers::pi;

ChartSpec line(const std::string& coord, Interval box, const std::string& metric = "1", int sign = 1) {
  return ChartSpec{{coord}, {{metric}}, {sign}, {box}};
}

Manifest flat_trivial() {
  Manifest m;
  m.name = "flat-trivial";
  m.base = line("x", {-1, 1});
  m.fiber = line("y", {-1, 1});
  m.warping = "1";
  return m;
}

Manifest polar_plane() {
  Manifest m;
  m.name = "polar-plane";
  m.base = line("r", {0.5, 2});
  m.fiber = line("theta", {0, 2 * kPi});
  m.warping = "r";
  m.p = FieldSpec{Factor::Fiber, {"1"}};
  return m;
}

Manifest unit_sphere_warped() {
  Manifest m;
  m.name = "unit-sphere-warped";
  m.base = line("t", {0.2, kPi - 0.2});
  m.fiber = line("phi", {0, 2 * kPi});
  m.warping = "sin(t)";
  return m;
}

Manifest hyperbolic2_ssnm() {
  Manifest m;
  m.name = "hyperbolic2-ssnm";
  m.base = line("t", {-1, 1});
  m.fiber = line("x", {-1, 1});
  m.warping = "exp(t)";
  m.p = FieldSpec{Factor::Base, {"1"}};
  return m;
}

Manifest hyperbolic3() {
  Manifest m;
  m.name = "hyperbolic3";
  m.base = line("t", {-1, 1});
  m.fiber = ChartSpec{{"x", "y"}, {{"1", "0"}, {"1"}}, {1, 1}, {{-1, 1}, {-1, 1}}};
  m.warping = "exp(t)";
  m.u1 = FieldSpec{Factor::Base, {"1"}};
  m.qe = QECoefficients{2, 0, 0};  // Ric = 2g with the sign conventions used here
  return m;
}

Manifest r_cross_s2() {
  Manifest m;
  m.name = "r-cross-s2";
  m.base = line("t", {-1, 1});
  m.fiber = ChartSpec{{"theta", "phi"}, {{"1", "0"}, {"sin(theta)^2"}}, {1, 1}, {{0.3, kPi - 0.3}, {0, 2 * kPi}}};
  m.warping = "1";
  m.u1 = FieldSpec{Factor::Base, {"1"}};
  m.qe = QECoefficients{-1, 1, 0};
  return m;
}

Manifest minkowski_flat() {
  Manifest m;
  m.name = "minkowski-flat";
  m.base = line("x", {-1, 1});
  m.fiber = line("t", {-1, 1}, "-1", -1);
  m.warping = "1";
  return m;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"flat-trivial", "polar-plane",  "unit-sphere-warped", "hyperbolic2-ssnm",
          "hyperbolic3",  "r-cross-s2",   "minkowski-flat"};
}

Manifest catalog(const std::string& name) {
  if (name == "flat-trivial") return flat_trivial();
  if (name == "polar-plane") return polar_plane();
  if (name == "unit-sphere-warped") return unit_sphere_warped();
  if (name == "hyperbolic2-ssnm") return hyperbolic2_ssnm();
  if (name == "hyperbolic3") return hyperbolic3();
  if (name == "r-cross-s2") return r_cross_s2();
  if (name == "minkowski-flat") return minkowski_flat();
  constexpr std::string_view prefix = "random-";
  if (name.starts_with(prefix)) {
    const std::string_view digits = std::string_view(name).substr(prefix.size());
    std::uint64_t seed = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty())
      return random_warped_manifest(seed);
  }
  throw InvalidArgument(fmt::format("unknown catalog entry '{}'", name));
}

}  // namespace wpg
