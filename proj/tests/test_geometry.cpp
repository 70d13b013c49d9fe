#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "trisub/geometry.hpp"

using namespace trisub;

namespace {

const double kSqrt3 = std::sqrt(3.0);

ShapePoint random_valid_shape(std::mt19937_64& rng, double min_y = 0.0) {
  std::uniform_real_distribution<double> ux(0.0, 0.5);
  std::uniform_real_distribution<double> uy(0.0, kSqrt3 / 2.0);
  for (;;) {
    const double x = ux(rng);
    const double y = uy(rng);
    const ShapePoint s{x, y};
    if (y > min_y && is_valid_shape(s)) return s;
  }
}

TrianglePoints apply_similarity(const TrianglePoints& t, double scale, double angle, Point2 shift,
                                bool reflect) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto map = [&](Point2 p) {
    if (reflect) p.y = -p.y;
    return Point2{scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y};
  };
  return {map(t.a), map(t.b), map(t.c)};
}

}  // namespace

TEST_CASE("normalize: reference triangles") {
  const ShapePoint eq = normalize({{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}});
  CHECK(eq.x == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eq.y == doctest::Approx(kSqrt3 / 2).epsilon(1e-14));

  const ShapePoint flat = normalize({{0, 0}, {1, 0}, {0.25, 0}});
  CHECK(flat.x == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(flat.y == 0.0);

  // right triangle with legs 1, 2: ordered squared lengths 1, 4, 5
  const ShapePoint r = normalize({{0, 0}, {2, 0}, {0, 1}});
  const double x_expected = (5.0 - 4.0 + 1.0) / (2.0 * 5.0);
  const double y_expected = std::sqrt((1.0 + 4.0 + 5.0) / (2.0 * 5.0) - x_expected * x_expected + x_expected - 1.0);
  CHECK(x_expected == doctest::Approx(0.2));
  CHECK(y_expected == doctest::Approx(0.4));
  CHECK(r.x == doctest::Approx(x_expected).epsilon(1e-14));
  CHECK(r.y == doctest::Approx(y_expected).epsilon(1e-12));
  // shortest/longest edge ratio identity
  CHECK(r.x * r.x + r.y * r.y == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(normalize({{1, 2}, {1, 2}, {1, 2}}), PointDegenerate);
}

TEST_CASE("normalize is similarity invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.1, 10.0);
  std::uniform_real_distribution<double> ua(0.0, 6.28318);
  std::uniform_real_distribution<double> ut(-5.0, 5.0);
  for (int t = 0; t < 50; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-3);
    const TrianglePoints tri{{0, 0}, {s.x, s.y}, {1, 0}};
    const TrianglePoints moved =
        apply_similarity(tri, us(rng), ua(rng), {ut(rng), ut(rng)}, (t % 2) == 0);
    const ShapePoint back = normalize(moved);
    CHECK(back.x == doctest::Approx(s.x).epsilon(1e-9));
    CHECK(back.y == doctest::Approx(s.y).epsilon(1e-9));
  }
}

TEST_CASE("normalize: edge-length ties resolve deterministically") {
  // isosceles: two edges equal; permuting vertex labels must not matter
  const TrianglePoints t1{{0, 0}, {1, 0}, {0.5, 0.7}};
  const TrianglePoints t2{{1, 0}, {0.5, 0.7}, {0, 0}};
  const ShapePoint a = normalize(t1), b = normalize(t2);
  CHECK(a.x == doctest::Approx(b.x).epsilon(1e-14));
  CHECK(a.y == doctest::Approx(b.y).epsilon(1e-14));
}

TEST_CASE("subdivide: equilateral symmetry") {
  const ShapePoint eq{0.5, kSqrt3 / 2};
  const auto kids = subdivide(eq);
  for (const auto& k : kids) {
    CHECK(k.x == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(k.y == doctest::Approx(kSqrt3 / 4).epsilon(1e-12));
  }
}

TEST_CASE("subdivide: flat parents stay flat and follow the six maps") {
  for (double x : {0.0, 0.1, 0.2, 2.0 / 7.0, 0.37, 0.5}) {
    const auto kids = subdivide({x, 0.0});
    for (int i = 1; i <= 6; ++i) {
      CHECK(kids[std::size_t(i - 1)].y == 0.0);
      CHECK(kids[std::size_t(i - 1)].x == z_map(i, x));  // bitwise
    }
  }
}

TEST_CASE("subdivide: children cover area and diameter bounds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-6);
    const double parent_area = 0.5 * s.y;
    for (int i = 1; i <= 6; ++i) {
      const TrianglePoints child = child_vertices(s, i);
      CHECK(triangle_area(child) == doctest::Approx(parent_area / 6.0).epsilon(1e-12));
      const double d = longest_edge(child);
      CHECK(d >= 0.25 - 1e-12);
      CHECK(d <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("functional J") {
  CHECK(functional_J({0.5, kSqrt3 / 2}).value() == doctest::Approx(4.0 * kSqrt3).epsilon(1e-12));
  CHECK(functional_J({0.2, 0.4}).value() == doctest::Approx(10.0).epsilon(1e-12));
  const ExtendedValue flat = functional_J({0.3, 0.0});
  CHECK(flat.is_infinite());
  CHECK(flat.reciprocal() == 0.0);
  // minimum over shapes stays above the disc bound
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-9);
    CHECK(functional_J(s).value() >= 4.0 * std::numbers::pi / 3.0);
  }
}

TEST_CASE("functional I and the I/3 <= J <= I sandwich") {
  const double p = 1.0 + std::sqrt(0.2) + std::sqrt(0.8);
  const double i_expected = p * p / 0.2;
  CHECK(functional_I({0.2, 0.4}).value() == doctest::Approx(i_expected).epsilon(1e-12));
  CHECK(functional_I({0.5, kSqrt3 / 2}).value() == doctest::Approx(12.0 * kSqrt3).epsilon(1e-12));
  CHECK(functional_I({0.3, 0.0}).is_infinite());

  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-9);
    const double j = functional_J(s).value();
    const double i = functional_I(s).value();
    CHECK(j <= i * (1 + 1e-12));
    CHECK(j >= i / 3.0 * (1 - 1e-12));
  }
}

TEST_CASE("largest angle") {
  CHECK(largest_angle({0.5, kSqrt3 / 2}) == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
  CHECK(largest_angle({0.2, 0.4}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(largest_angle({0.3, 0.0}) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK_THROWS_AS(largest_angle({0.0, 0.0}), DegenerateAngle);
  // it is the maximum angle: compare against the two base angles
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-6);
    const double apex = largest_angle(s);
    const double at_origin = std::atan2(s.y, s.x);
    const double at_one = std::atan2(s.y, 1.0 - s.x);
    CHECK(apex >= at_origin - 1e-9);
    CHECK(apex >= at_one - 1e-9);
  }
}

TEST_CASE("submartingale identity: mean child J is 4/3 of the parent") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 1000; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-9);
    const double j = functional_J(s).value();
    double mean = 0.0;
    for (const auto& k : subdivide(s)) mean += functional_J(k).value();
    mean /= 6.0;
    CHECK(mean == doctest::Approx((4.0 / 3.0) * j).epsilon(1e-12));
  }
}

TEST_CASE("median-length identity") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const ShapePoint s = random_valid_shape(rng);
    const double x = s.x, y = s.y;
    const Point2 a{0, 0}, b{x, y}, c{1, 0};
    const double l1 = dist2(midpoint(a, b), c);
    const double l2 = dist2(midpoint(b, c), a);
    const double l3 = dist2(midpoint(a, c), b);
    CHECK(l1 == doctest::Approx(x * x / 4 + y * y / 4 - x + 1).epsilon(1e-12));
    CHECK(l2 == doctest::Approx(x * x / 4 + y * y / 4 + x / 2 + 0.25).epsilon(1e-12));
    CHECK(l3 == doctest::Approx(x * x + y * y - x + 0.25).epsilon(1e-12));
    const double edges = dist2(a, b) + dist2(b, c) + dist2(c, a);
    CHECK((l1 + l2 + l3) / edges == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("y and 1/J are comparable: 3 <= y*J <= 8 off the flat set") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 500; ++t) {
    const ShapePoint s = random_valid_shape(rng, 1e-9);
    const double yj = s.y * functional_J(s).value();
    CHECK(yj >= 3.0 - 1e-12);
    CHECK(yj <= 8.0 + 1e-12);
  }
}
