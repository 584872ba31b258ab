#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "wpg/manifest.hpp"
#include "wpg/warped.hpp"

using namespace wpg;
using test::max_abs;
using test::unit;

namespace {

ChartManifold line(const std::string& c) { return ChartManifold::from_text({c}, {{"1"}}, {1}); }
ChartManifold plane(const std::string& a, const std::string& b) {
  return ChartManifold::from_text({a, b}, {{"1", "0"}, {"1"}}, {1, 1});
}

WarpedProduct hyperbolic3() { return build(line("t"), plane("x", "y"), "exp(t)"); }
WarpedProduct hyperbolic2() { return build(line("t"), line("x"), "exp(t)"); }
WarpedProduct sphere() { return build(line("t"), line("phi"), "sin(t)"); }
WarpedProduct flat() { return build(line("x"), line("y"), "1"); }

Vec<double> v1(double a) { return Vec<double>::Constant(1, a); }

}  // namespace

TEST_CASE("build") {
  SUBCASE("flat product") {
    const WarpedProduct wp = flat();
    CHECK(wp.ambient().coords() == std::vector<std::string>{"x", "y"});
    const std::vector<double> p{0.3, 0.7};
    CHECK(max_abs(ricci(wp.ambient(), p)) == 0.0);
    CHECK(scalar(wp.ambient(), p) == 0.0);
  }
  SUBCASE("hyperbolic 3-space") {
    const WarpedProduct wp = hyperbolic3();
    CHECK(wp.dim() == 3);
    for (double t : {-0.7, 0.0, 0.5}) {
      const std::vector<double> p{t, 0.1, -0.4};
      const MetricJet<double> m = metric_jet(wp.ambient(), p);
      // textbook Ric = −2g, S = −6
      CHECK(max_abs(Mat<double>(classical_sign(ricci(wp.ambient(), p)) + 2 * m.g)) <= 1e-12);
      CHECK(classical_sign(scalar(wp.ambient(), p)) == doctest::Approx(-6.0));
    }
  }
  SUBCASE("unit sphere") {
    const WarpedProduct wp = sphere();
    for (double t : {0.3, 1.2, 2.5}) CHECK(scalar(wp.ambient(), std::vector<double>{t, 1.0}) == doctest::Approx(-2.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build(line("x"), line("x"), "1"), InvalidArgument);
    CHECK_THROWS_AS(build(line("t"), line("x"), "1 + x^2"), InvalidArgument);
    CHECK_THROWS_AS(build(line("t"), line("x"), "1 + z"), UnknownIdentifier);
    CHECK_THROWS_AS(build(line("t"), line("x"), parse("x", {"x"})), InvalidArgument);
  }
}

TEST_CASE("block metric") {
  const WarpedProduct wp = build(plane("a", "b"), ChartManifold::from_text({"u", "v"}, {{"1 + u^2", "0.1*v"}, {"2"}}, {1, 1}),
                                 "1 + a^2 + b^2");
  const MetricJet<double> m = metric_jet(wp.ambient(), std::vector<double>{0.2, 0.3, -0.1, 0.4});
  for (int i = 0; i < 2; ++i)
    for (int u = 2; u < 4; ++u) {
      CHECK(m.g(i, u) == 0.0);
      for (int k = 0; k < 4; ++k) {
        CHECK(m.dg(k, i, u) == 0.0);
        for (int l = 0; l < 4; ++l) CHECK(m.d2g(k, l, i, u) == 0.0);
      }
    }
  CHECK(m.g(2, 3) == doctest::Approx(0.04 * 1.13 * 1.13));
}

TEST_CASE("lift") {
  const WarpedProduct wp = hyperbolic3();
  const VectorField zero = lift(wp, FieldPlacement::zero(wp, Factor::Fiber));
  CHECK(zero.is_zero());
  const VectorField dt = lift(wp, FieldPlacement::from_text(wp, Factor::Base, {"1"}));
  const VectorJet<double> j = eval_vector(dt, std::vector<double>{0.2, 0.1, 0.3});
  CHECK(j.value == Vec<double>::Unit(3, 0));
  const VectorField fib = lift(wp, FieldPlacement::from_text(wp, Factor::Fiber, {"x*y", "2"}));
  CHECK(fib.components()[0].is_zero());
  CHECK(eval_vector(fib, std::vector<double>{0.2, 0.5, 3.0}).value(1) == 1.5);
  CHECK_THROWS_AS(FieldPlacement::from_text(wp, Factor::Fiber, {"1"}), InvalidArgument);
  CHECK_THROWS_AS(FieldPlacement::from_text(wp, Factor::Base, {"x"}), UnknownIdentifier);
}

TEST_CASE("curvature right-hand sides") {
  SUBCASE("B3 vanishes") {
    const WarpedProduct wp = hyperbolic3();
    PlacedVectors in;
    in.X = v1(0.3), in.Y = v1(-1.2), in.V = Vec<double>(Vec<double>::Random(2)), in.W = Vec<double>(Vec<double>::Random(2));
    const Vec<double> r = lemma_curvature_rhs(wp, CurvatureCase::B3, FieldPlacement::from_text(wp, Factor::Base, {"t"}),
                                              in, std::vector<double>{0.4, 0.0, 0.0});
    CHECK(max_abs(r) == 0.0);
  }
  SUBCASE("flat product") {
    const WarpedProduct wp = flat();
    PlacedVectors in;
    in.X = v1(1), in.Y = v1(2), in.Z = v1(3), in.U = v1(-1), in.V = v1(0.5), in.W = v1(2);
    const std::vector<double> p{0.1, 0.2};
    for (CurvatureCase c : kCurvatureCases)
      CHECK(max_abs(lemma_curvature_rhs(wp, c, FieldPlacement::zero(wp, family(c)), in, p)) == 0.0);
    for (RicciCase c : kRicciCases)
      CHECK(max_abs(lemma_ricci_rhs(wp, c, FieldPlacement::zero(wp, family(c)), in, p)) == 0.0);
    CHECK(scalar_formula_rhs(wp, FieldPlacement::zero(wp, Factor::Base), p) == 0.0);
  }
  SUBCASE("B2 on hyperbolic 3-space at t = 0") {
    const WarpedProduct wp = hyperbolic3();
    const FieldPlacement p = FieldPlacement::from_text(wp, Factor::Base, {"1"});
    PlacedVectors in;
    in.X = v1(1), in.Y = v1(1), in.V = unit(2, 0);
    const std::vector<double> at{0.0, 0.3, 0.2};
    CHECK(max_abs(lemma_curvature_rhs(wp, CurvatureCase::B2, p, in, at)) <= 1e-15);
    const AmbientData a = ambient_data(wp, p, at);
    CHECK(max_abs(ambient_curvature_lhs(wp, a, CurvatureCase::B2, in)) <= 1e-15);
  }
  SUBCASE("slot and placement errors") {
    const WarpedProduct wp = hyperbolic3();
    const FieldPlacement p = FieldPlacement::from_text(wp, Factor::Base, {"1"});
    PlacedVectors in;
    in.X = v1(1), in.Y = v1(1);
    const std::vector<double> at{0.0, 0.3, 0.2};
    CHECK_THROWS_AS(lemma_curvature_rhs(wp, CurvatureCase::B2, p, in, at), InvalidArgument);
    in.V = v1(1);
    CHECK_THROWS_AS(lemma_curvature_rhs(wp, CurvatureCase::B2, p, in, at), InvalidArgument);
    in.V = unit(2, 1);
    CHECK_THROWS_AS(lemma_curvature_rhs(wp, CurvatureCase::F2, p, in, at), InvalidArgument);
  }
}

TEST_CASE("ricci right-hand sides") {
  SUBCASE("mixed terms vanish for P on the base") {
    const WarpedProduct wp = hyperbolic3();
    PlacedVectors in;
    in.X = v1(0.7), in.V = Vec<double>(Vec<double>::Random(2));
    const Vec<double> r = lemma_ricci_rhs(wp, RicciCase::B2, FieldPlacement::from_text(wp, Factor::Base, {"exp(t)"}), in,
                                          std::vector<double>{0.1, 0.2, 0.3});
    CHECK(r.size() == 2);
    CHECK(max_abs(r) == 0.0);
  }
  SUBCASE("antisymmetric mixed terms for P on the fiber") {
    const WarpedProduct wp = hyperbolic2();
    const FieldPlacement p = FieldPlacement::from_text(wp, Factor::Fiber, {"1"});
    PlacedVectors in;
    in.X = v1(1), in.V = v1(1);
    for (double t : {0.0, 0.4}) {
      const std::vector<double> at{t, 0.25};
      const double e2t = std::exp(2 * t);
      CHECK(lemma_ricci_rhs(wp, RicciCase::F2, p, in, at)(0) == doctest::Approx(e2t));
      CHECK(lemma_ricci_rhs(wp, RicciCase::F3, p, in, at)(0) == doctest::Approx(-e2t));
      const AmbientData a = ambient_data(wp, p, at);
      CHECK(a.ric_bar(0, 1) == doctest::Approx(e2t));
      CHECK(a.ric_bar(1, 0) == doctest::Approx(-e2t));
    }
  }
}

TEST_CASE("scalar formula") {
  SUBCASE("hyperbolic plane with P = d/dt") {
    const WarpedProduct wp = hyperbolic2();
    const FieldPlacement p = FieldPlacement::from_text(wp, Factor::Base, {"1"});
    for (double t : {-0.5, 0.0, 0.8}) {
      const std::vector<double> at{t, 0.1};
      CHECK(scalar_formula_rhs(wp, p, at) == doctest::Approx(2.0));
      CHECK(ambient_data(wp, p, at).s_bar == doctest::Approx(2.0));
    }
  }
  SUBCASE("unit sphere without P") {
    const WarpedProduct wp = sphere();
    CHECK(scalar_formula_rhs(wp, FieldPlacement::zero(wp, Factor::Base), std::vector<double>{1.0, 0.0}) ==
          doctest::Approx(-2.0));
    CHECK(scalar_formula_rhs(wp, FieldPlacement::zero(wp, Factor::Fiber), std::vector<double>{1.0, 0.0}) ==
          doctest::Approx(-2.0));
  }
  SUBCASE("non-positive warp") {
    const WarpedProduct wp = build(line("t"), line("x"), "t");
    CHECK_THROWS_AS(factor_data(wp, FieldPlacement::zero(wp, Factor::Base), std::vector<double>{-0.5, 0.0}),
                    InvalidArgument);
  }
}

TEST_CASE("master identity on random products") {
  for (std::uint64_t seed = 100; seed < 108; ++seed) {
    const Problem problem = instantiate(random_warped_manifest(seed));
    const WarpedProduct& wp = problem.wp;
    Rng rng(seed);
    for (Factor location : {Factor::Base, Factor::Fiber}) {
      const FieldPlacement p =
          location == problem.p.location ? problem.p : FieldPlacement::zero(wp, location);
      for (int k = 0; k < 10; ++k) {
        const std::vector<double> at = sample_point(rng, problem.box);
        const FactorData d = factor_data(wp, p, at);
        const AmbientData a = ambient_data(wp, p, at);
        PlacedVectors in;
        in.X = rng.vector(wp.n1(), -1, 1), in.Y = rng.vector(wp.n1(), -1, 1), in.Z = rng.vector(wp.n1(), -1, 1);
        in.U = rng.vector(wp.n2(), -1, 1), in.V = rng.vector(wp.n2(), -1, 1), in.W = rng.vector(wp.n2(), -1, 1);
        for (CurvatureCase c : kCurvatureCases) {
          if (family(c) != location) continue;
          const Vec<double> lhs = ambient_curvature_lhs(wp, a, c, in);
          CHECK(max_abs(Vec<double>(lhs - lemma_curvature_rhs(d, c, in))) <= 1e-7 * (1 + max_abs(lhs)));
        }
        for (RicciCase c : kRicciCases) {
          if (family(c) != location) continue;
          const Vec<double> lhs = ambient_ricci_lhs(wp, a, c, in);
          CHECK(max_abs(Vec<double>(lhs - lemma_ricci_rhs(d, c, in))) <= 1e-7 * (1 + max_abs(lhs)));
        }
        CHECK(std::abs(a.s_bar - scalar_formula_rhs(d)) <= 1e-7 * (1 + std::abs(a.s_bar)));
      }
    }
  }
}

TEST_CASE("zero P reduces to levi-civita") {
  const Problem problem = instantiate(random_warped_manifest(5));
  const WarpedProduct& wp = problem.wp;
  Rng rng(5);
  const std::vector<double> at = sample_point(rng, problem.box);
  const AmbientData a = ambient_data(wp, FieldPlacement::zero(wp, Factor::Fiber), at);
  const Tensor4<double> r = riemann_tensor(christoffel(wp.ambient(), at));
  const Eigen::Index n = wp.dim();
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) CHECK(a.rbar(l, i, j, k) == r(l, i, j, k));
  CHECK(a.ric_bar == ricci(wp.ambient(), at));
}
