#include <doctest.h>

#include <cmath>

#include "aledg/error.hpp"
#include "aledg/quadrature.hpp"

using namespace aledg;

namespace {

double edge_integral(const EdgeRule& r, int p) {
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights(i) * std::pow(r.points(i), p);
  return s;
}

double volume_integral(const VolumeRule& r, int a, int b) {
  double s = 0.0;
  for (int q = 0; q < r.size(); ++q) {
    s += r.weights(q) * std::pow(r.points[q].x(), a) * std::pow(r.points[q].y(), b);
  }
  return s;
}

}  // namespace

TEST_CASE("two-point edge rule") {
  const EdgeRule r = edge_gauss(1);
  REQUIRE(r.size() == 2);
  CHECK(r.points(0) == doctest::Approx(-1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(r.points(1) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(r.weights(0) == doctest::Approx(0.5));
  CHECK(r.weights(1) == doctest::Approx(0.5));
  CHECK(edge_integral(r, 0) == doctest::Approx(1.0));
  CHECK(std::abs(edge_integral(r, 3)) < 1e-16);
}

TEST_CASE("edge rules integrate degree 2k+1 on [-1/2, 1/2]") {
  for (int k = 1; k <= 3; ++k) {
    const EdgeRule r = edge_gauss(k);
    CHECK(r.size() == k + 1);
    for (int p = 0; p <= 2 * k + 1; ++p) {
      const double exact = p % 2 ? 0.0 : std::pow(0.5, p) / (p + 1);
      CHECK(std::abs(edge_integral(r, p) - exact) < 1e-15);
    }
  }
}

TEST_CASE("volume rule reference integrals") {
  const VolumeRule r = volume_rule(2);
  CHECK(volume_integral(r, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(volume_integral(r, 1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(volume_integral(r, 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  CHECK(monomial_integral(1, 1) == doctest::Approx(1.0 / 24.0));
}

TEST_CASE("volume rules are exact up to their degree") {
  for (int deg = 1; deg <= kMaxVolumeDegree; ++deg) {
    const VolumeRule r = volume_rule(deg);
    for (const double w : r.weights) CHECK(w > 0.0);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        CHECK(std::abs(volume_integral(r, a, b) - monomial_integral(a, b)) < 1e-15);
      }
    }
  }
  CHECK_THROWS_AS(volume_rule(kMaxVolumeDegree + 1), Error);
}

TEST_CASE("zxs rule sizes and weights") {
  const ZXSRule r1 = zxs_rule(1);
  CHECK(r1.N == 2);
  CHECK(r1.sigma_hat == doctest::Approx(1.0 / 3.0));
  CHECK(r1.interior_size() == 0);
  CHECK(r1.size() == 6);

  const ZXSRule r2 = zxs_rule(2);
  CHECK(r2.N == 3);
  CHECK(r2.sigma_hat == doctest::Approx(1.0 / 9.0));
  CHECK(r2.interior_size() == 9);

  for (int k = 1; k <= 3; ++k) {
    const ZXSRule r = zxs_rule(k);
    CHECK(r.all_weights().sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.all_weights().minCoeff() > 0.0);
  }
}

TEST_CASE("zxs rule averages degree-k monomials") {
  for (int k = 1; k <= 3; ++k) {
    const ZXSRule r = zxs_rule(k);
    const auto pts = r.all_points();
    const Eigen::VectorXd w = r.all_weights();
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; a + b <= k; ++b) {
        double s = 0.0;
        for (size_t q = 0; q < pts.size(); ++q) {
          s += w(q) * std::pow(pts[q].x(), a) * std::pow(pts[q].y(), b);
        }
        CHECK(std::abs(s - monomial_integral(a, b) / reference::kArea) < 1e-14);
      }
    }
  }
}

TEST_CASE("zxs edge points are the edge Gauss points") {
  for (int k = 1; k <= 3; ++k) {
    const ZXSRule r = zxs_rule(k);
    const EdgeRule e = edge_gauss(k);
    for (int nu = 0; nu < 3; ++nu) {
      REQUIRE(static_cast<int>(r.edge_points[nu].size()) == e.size());
      for (int b = 0; b < e.size(); ++b) {
        const Vector2 p = reference::edge_point(nu, e.points(b) + 0.5);
        CHECK(r.edge_points[nu][b] == p);
      }
    }
  }
}
