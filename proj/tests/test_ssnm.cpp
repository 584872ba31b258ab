#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpg/ssnm.hpp"

using namespace wpg;
using test::max_abs;
using test::unit;

namespace {

ChartManifold euclidean_plane() { return ChartManifold::from_text({"x", "y"}, {{"1", "0"}, {"1"}}, {1, 1}); }
ChartManifold sphere() { return ChartManifold::from_text({"theta", "phi"}, {{"1", "0"}, {"sin(theta)^2"}}, {1, 1}); }

ConnectionSpec dx(const ChartManifold& e) { return ConnectionSpec::semi_symmetric(VectorField::from_text(e, {"1", "0"})); }

}  // namespace

TEST_CASE("zero generator gives levi-civita") {
  const ChartManifold s2 = sphere();
  const std::vector<double> p{1.0, 0.5};
  const ConnectionJet<double> lc = connection_coeffs(s2, ConnectionSpec::levi_civita(), p);
  const ConnectionJet<double> bar = connection_coeffs(s2, ConnectionSpec::semi_symmetric(VectorField::zero(s2)), p);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(bar.gamma(k, i, j) == lc.gamma(k, i, j));
        for (int q = 0; q < 2; ++q) CHECK(bar.dgamma(q, k, i, j) == lc.dgamma(q, k, i, j));
      }
  const Mat<double> ric_bar = ricci_ssnm(s2, VectorField::zero(s2), p);
  CHECK(max_abs(Mat<double>(ric_bar - ric_bar.transpose())) == 0.0);
  CHECK(ric_bar.isApprox(ricci(s2, p)));
  CHECK(scalar_ssnm(s2, VectorField::zero(s2), p) == doctest::Approx(-2.0));
}

TEST_CASE("coefficients for pi = dx") {
  const ChartManifold e = euclidean_plane();
  const ConnectionJet<double> c = connection_coeffs(e, dx(e), std::vector<double>{0.2, 0.3});
  // ∇̄_{∂y} ∂x = ∂y
  CHECK(c.gamma(1, 1, 0) == 1.0);
  CHECK(c.gamma(1, 0, 1) == 0.0);
  CHECK(c.gamma(0, 0, 0) == 1.0);
  CHECK(c.gamma(0, 1, 0) == 0.0);
}

TEST_CASE("torsion") {
  const ChartManifold e = euclidean_plane();
  const std::vector<double> p{0.2, 0.3};
  const Vec<double> ex = unit(2, 0), ey = unit(2, 1);
  CHECK(max_abs(torsion(e, ConnectionSpec::levi_civita(), p, ex, ey)) == 0.0);
  const Vec<double> t = torsion(e, dx(e), p, ex, ey);
  CHECK(t(0) == 0.0);
  CHECK(t(1) == -1.0);
  CHECK(max_abs(torsion(e, dx(e), p, ex, ex)) == 0.0);
}

TEST_CASE("curvature relation fixtures") {
  const ChartManifold e = euclidean_plane();
  const Vec<double> ex = unit(2, 0), ey = unit(2, 1);
  const std::vector<double> p{0.4, -0.1};
  const CurvatureRelation zero = curvature_relation_check(e, VectorField::zero(e), p, ex, ey, ex);
  CHECK(zero.error == 0.0);
  CHECK(max_abs(zero.direct) == 0.0);

  const CurvatureRelation r = curvature_relation_check(e, VectorField::from_text(e, {"1", "0"}), p, ex, ey, ex);
  CHECK(r.error == 0.0);
  CHECK(r.direct(0) == 0.0);
  CHECK(r.direct(1) == -1.0);
  CHECK(r.via_relation(1) == -1.0);
}

TEST_CASE("ricci and scalar for pi = dx") {
  const ChartManifold e = euclidean_plane();
  const VectorField p = VectorField::from_text(e, {"1", "0"});
  const std::vector<double> at{0.7, 0.2};
  const Mat<double> ric = ricci_ssnm(e, p, at);
  CHECK(ric(0, 0) == -1.0);
  CHECK(ric(0, 1) == 0.0);
  CHECK(ric(1, 0) == 0.0);
  CHECK(ric(1, 1) == 0.0);
  CHECK(scalar_ssnm(e, p, at) == -1.0);
}

TEST_CASE("hyperbolic plane with P = d/dt") {
  const ChartManifold h = ChartManifold::from_text({"t", "x"}, {{"1", "0"}, {"exp(2*t)"}}, {1, 1});
  const VectorField p = VectorField::from_text(h, {"1", "0"});
  for (double t : {-0.9, 0.0, 0.45}) CHECK(scalar_ssnm(h, p, std::vector<double>{t, 0.3}) == doctest::Approx(2.0));
}

TEST_CASE("random charts") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = rng.integer(2, 4);
    const ChartSpec spec = random_general_chart(rng, "x", dim);
    const ChartManifold chart = ChartManifold::from_text(spec.coords, spec.metric, spec.signature);
    const VectorField p = VectorField::from_text(chart, random_polynomial_field(rng, chart.coords()));
    for (int k = 0; k < 5; ++k) {
      const std::vector<double> at = test::to_std(rng.vector(dim, -0.5, 0.5));
      const SsnmGeometry geo = ssnm_geometry(chart, p, at);
      const Vec<double> x = rng.vector(dim, -1, 1), y = rng.vector(dim, -1, 1), z = rng.vector(dim, -1, 1);

      const CurvatureRelation rel = curvature_relation_check(geo, x, y, z);
      CHECK(rel.error / std::max(1.0, max_abs(rel.direct)) <= 1e-8);

      const Vec<double> t = torsion(geo.bar, x, y);
      CHECK(max_abs(Vec<double>(t - (geo.pi_of(y) * x - geo.pi_of(x) * y))) <= 1e-10);

      const double q = nonmetricity(geo.base.metric, geo.bar, x, y, z);
      const double expected = -geo.pi_of(y) * geo.base.inner(x, z) - geo.pi_of(z) * geo.base.inner(x, y);
      CHECK(std::abs(q - expected) <= 1e-9);

      const Mat<double> ric = ricci(geo.bar);
      CHECK(std::abs(scalar(ric, geo.base.metric.g_inv) - test::frame_scalar(ric, geo.base.metric.g)) <= 1e-9);
    }
  }
}
