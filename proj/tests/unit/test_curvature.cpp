#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qes/curvature.hpp"
#include "qes/error.hpp"

using namespace qes;

TEST_CASE("deformation factor") {
  const Deformation pos(1.0), neg(-1.0);
  CHECK(deformation_factor(pos, 1e-12) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(deformation_factor(pos, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(deformation_factor(neg, 0.6) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(deformation_factor(neg, 1.0), Error);
  CHECK_THROWS_AS(deformation_factor(pos, 0.0), Error);
  CHECK_THROWS_AS(deformation_factor(pos, -0.5), Error);
  try {
    deformation_factor(neg, 1.2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("domain bounds") {
  CHECK(std::isinf(domain_max(1.0)));
  CHECK(domain_max(-4.0) == 0.5);
  try {
    domain_max(0.0);
    FAIL("flat space accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateCurvature);
  }
}

TEST_CASE("arc coordinate") {
  const Deformation pos(1.0), neg(-1.0);
  CHECK(arc_coordinate(pos, 1e-300) == doctest::Approx(0.0));
  CHECK(arc_coordinate(neg, std::nextafter(1.0, 0.0)) ==
        doctest::Approx(1.5707963267948966).epsilon(1e-7));
  CHECK(neg.arc_max() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-16));
  CHECK(arc_coordinate(pos, 0.3) == doctest::Approx(0.2956730475634224).epsilon(1e-15));

  for (double lambda : {1.0, 2.5, -1.0, -0.3}) {
    const Deformation def(lambda);
    const double rmax = std::isinf(def.domain_max()) ? 20.0 : def.domain_max();
    double prev = 0;
    for (int i = 1; i < 200; ++i) {
      const double r = rmax * i / 200.0;
      const double x = arc_coordinate(def, r);
      CHECK(x > prev);
      prev = x;
      CHECK(std::fabs(radius_from_arc(def, x) - r) <= 1e-14 * (1 + r));
      // derivative 1/f against a central difference
      const double h = 1e-6 * r;
      const double fd = (arc_coordinate(def, r + h) - arc_coordinate(def, r - h)) / (2 * h);
      CHECK(std::fabs(fd - 1.0 / deformation_factor(def, r)) <= 1e-8 * (1 + fd));
      // f^2 - lambda r^2 = 1
      const double f = deformation_factor(def, r);
      CHECK(std::fabs(f * f - lambda * r * r - 1.0) <= 1e-14 * (1 + std::fabs(lambda) * r * r));
      const RadialPoint p = point_from_arc(def, x);
      CHECK(p.f == doctest::Approx(f).epsilon(1e-12));
    }
  }
}

TEST_CASE("compact domain edge") {
  const Deformation neg(-1.0);
  double prev = 1.0;
  for (double r : {0.9, 0.99, 0.999, 0.99999, 0.9999999}) {
    const double f = deformation_factor(neg, r);
    CHECK(f < prev);
    prev = f;
  }
  CHECK(prev < 1e-3);
  CHECK(arc_coordinate(neg, 0.9999999999) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-5));
}

TEST_CASE("radial reduction") {
  RadialReduction a = reduce_radial(3, 0, 1.0, 3.0);
  CHECK(a.L == 0.0);
  CHECK(a.E == 2.0);
  RadialReduction b = reduce_radial(5, 2, 1.0, 0.0);
  CHECK(b.L == 3.0);
  CHECK(b.E == -4.0);
  RadialReduction c = reduce_radial(2, 0, -1.0, 1.0);
  CHECK(c.L == -0.5);
  CHECK(c.negative_L);
  CHECK(c.E == doctest::Approx(1.25));
  CHECK_THROWS_AS(reduce_radial(1, 0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(reduce_radial(3, -1, 1.0, 0.0), Error);
}
