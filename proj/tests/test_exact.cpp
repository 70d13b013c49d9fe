#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trisub/certify.hpp"
#include "trisub/flat_ifs.hpp"
#include "trisub/growth_matrix.hpp"
#include "trisub/sturm.hpp"

using namespace trisub;

namespace {

// Affine entry c0 + c1 x.
struct E {
  long c0, c1;
};

// Golden entries: the three 6x6 matrices of scaled two-step growth factors,
// one per branch regime. Every entry is affine in x.
constexpr E kHigh[6][6] = {
    {{4, 10}, {8, -10}, {10, -14}, {10, -2}, {10, -8}, {8, -4}},
    {{4, 1}, {2, 2}, {4, -2}, {7, -5}, {7, -2}, {5, 2}},
    {{6, -3}, {0, 9}, {3, 3}, {9, -9}, {9, 0}, {6, 6}},
    {{8, 2}, {4, 4}, {8, -4}, {14, -10}, {14, -4}, {10, 4}},
    {{8, 2}, {4, 4}, {8, -4}, {14, -10}, {14, -4}, {10, 4}},
    {{6, 6}, {6, -3}, {9, -9}, {12, -6}, {12, -6}, {9, 0}},
};
constexpr E kMid[6][6] = {
    {{4, 10}, {4, 4}, {10, -14}, {10, -2}, {10, -8}, {8, -4}},
    {{4, 1}, {4, -5}, {4, -2}, {7, -5}, {7, -2}, {5, 2}},
    {{6, -3}, {6, -12}, {3, 3}, {9, -9}, {9, 0}, {6, 6}},
    {{8, 2}, {8, -10}, {8, -4}, {14, -10}, {14, -4}, {10, 4}},
    {{8, 2}, {8, -10}, {8, -4}, {14, -10}, {14, -4}, {10, 4}},
    {{6, 6}, {6, -3}, {9, -9}, {12, -6}, {12, -6}, {9, 0}},
};
constexpr E kLow[6][6] = {
    {{4, 10}, {4, 4}, {8, -4}, {10, -2}, {10, -8}, {8, -4}},
    {{4, 1}, {4, -5}, {5, -7}, {7, -5}, {7, -2}, {5, 2}},
    {{6, -3}, {6, -12}, {6, -12}, {9, -9}, {9, 0}, {6, 6}},
    {{8, 2}, {8, -10}, {10, -14}, {14, -10}, {14, -4}, {10, 4}},
    {{8, 2}, {8, -10}, {10, -14}, {14, -10}, {14, -4}, {10, 4}},
    {{6, 6}, {6, -3}, {9, -9}, {12, -6}, {12, -6}, {9, 0}},
};

// Reduced matrix for the high interval: same product up to 2^29 3^17.
constexpr E kReducedHigh[6][6] = {
    {{2, 5}, {4, -5}, {5, -7}, {5, -1}, {5, -4}, {2, -1}},
    {{4, 1}, {1, 1}, {2, -1}, {7, -5}, {7, -2}, {5, 2}},
    {{2, -1}, {0, 1}, {1, 1}, {1, -1}, {1, 0}, {1, 1}},
    {{4, 1}, {1, 1}, {2, -1}, {7, -5}, {7, -2}, {5, 2}},
    {{4, 1}, {1, 1}, {2, -1}, {7, -5}, {7, -2}, {5, 2}},
    {{1, 1}, {2, -1}, {1, -1}, {2, -1}, {2, -1}, {1, 0}},
};

void check_matrix(IntervalId id, const E expected[6][6]) {
  const GrowthMatrix m = build_growth_matrix(id);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const RationalPoly want = RationalPoly::affine(expected[i][j].c0, expected[i][j].c1);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(m[std::size_t(i)][std::size_t(j)] == want);
    }
}

RationalPoly poly_from(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 7) * Rational(7, 2)) == Rational(1));
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-1, 3).den() == 3);
  CHECK(Rational::parse("2/7") == Rational(2, 7));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational::from_double(0.25) == Rational(1, 4));
  CHECK(Rational::from_double(1.0 / 3.0) != Rational(1, 3));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("polynomial arithmetic and exact division") {
  const RationalPoly a = poly_from({1, 2, 1});   // (1+x)^2
  const RationalPoly b = poly_from({1, 1});      // 1+x
  CHECK(a.degree() == 2);
  CHECK((b * b) == a);
  auto [q, r] = a.divmod(b);
  CHECK(r.is_zero());
  CHECK(q == b);
  CHECK(a.eval(Rational(1)) == Rational(4));
  CHECK(a.derivative() == poly_from({2, 2}));
  CHECK(poly_from({4, 10}).str() == "4 + 10x");
  CHECK(poly_from({0, 9}).str() == "9x");
  CHECK(poly_from({8, -10}).str() == "8 - 10x");
}

TEST_CASE("growth matrices reproduce the tabulated entries") {
  check_matrix(IntervalId::High, kHigh);
  check_matrix(IntervalId::Mid, kMid);
  check_matrix(IntervalId::Low, kLow);
}

TEST_CASE("reduced-matrix scale identity on the high interval") {
  const GrowthMatrix m = build_growth_matrix(IntervalId::High);
  RationalPoly full = RationalPoly::constant(Rational(1));
  for (const auto& row : m)
    for (const auto& e : row) full = full * e;

  RationalPoly reduced = RationalPoly::constant(Rational(1));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      reduced = reduced * RationalPoly::affine(kReducedHigh[i][j].c0, kReducedHigh[i][j].c1);

  BigInt scale(1);
  for (int k = 0; k < 29; ++k) scale *= 2;
  for (int k = 0; k < 17; ++k) scale *= 3;
  reduced.scale(Rational(scale, BigInt(1)));
  CHECK(full == reduced);
}

TEST_CASE("expanded R-1 pieces: degree, endpoint values, continuity") {
  const RationalPoly high = expand_R_minus_one(IntervalId::High);
  const RationalPoly mid = expand_R_minus_one(IntervalId::Mid);
  const RationalPoly low = expand_R_minus_one(IntervalId::Low);

  // two constant entries per matrix leave degree 34
  CHECK(high.degree() == 34);
  CHECK(mid.degree() == 34);
  CHECK(low.degree() == 34);

  CHECK(high.eval(Rational(1, 2)).to_double() == doctest::Approx(11.989284).epsilon(1e-5));
  CHECK(low.eval(Rational(0)).to_double() == doctest::Approx(13495.561).epsilon(1e-5));
  CHECK(mid.eval(Rational(1, 5)).to_double() == doctest::Approx(417.66239).epsilon(1e-5));
  CHECK(high.eval(Rational(2, 7)).to_double() == doctest::Approx(98.311045).epsilon(1e-5));

  // shared endpoints agree exactly across neighboring pieces
  CHECK(high.eval(Rational(2, 7)) == mid.eval(Rational(2, 7)));
  CHECK(low.eval(Rational(1, 5)) == mid.eval(Rational(1, 5)));
}

TEST_CASE("exact pieces match the floating product at random rationals") {
  std::mt19937 rng(20240811);
  for (IntervalId id : {IntervalId::Low, IntervalId::Mid, IntervalId::High}) {
    const RationalPoly p = expand_R_minus_one(id);
    const Rational a = interval_left(id), b = interval_right(id);
    for (int t = 0; t < 10; ++t) {
      const long den = 1000 + long(rng() % 9000);
      const long lo_num = long(std::ceil(a.to_double() * double(den))) + 1;
      const long hi_num = long(std::floor(b.to_double() * double(den))) - 1;
      const long num = lo_num + long(rng() % std::uint64_t(std::max(1L, hi_num - lo_num + 1)));
      const Rational x(num, den);
      REQUIRE(x > a);
      REQUIRE(x < b);
      const double exact = p.eval(x).to_double() + 1.0;
      const double floating = product_R(x.to_double());
      CHECK(std::fabs(exact - floating) <= 1e-9 * std::fabs(exact));
    }
  }
}

TEST_CASE("sturm root counting on textbook cases") {
  const RationalPoly x2m2 = poly_from({-2, 0, 1});
  CHECK(sturm_count_roots(x2m2, Rational(0), Rational(2)) == 1);
  const RationalPoly x2p1 = poly_from({1, 0, 1});
  CHECK(sturm_count_roots(x2p1, Rational(-10), Rational(10)) == 0);

  // half-open convention: the right endpoint counts, the left does not
  const RationalPoly xm1 = poly_from({-1, 1});
  CHECK(sturm_count_roots(xm1, Rational(0), Rational(1)) == 1);
  CHECK(sturm_count_roots(xm1, Rational(1), Rational(2)) == 0);

  // repeated roots count once
  const RationalPoly sq = poly_from({1, -2, 1});  // (x-1)^2
  CHECK(sturm_count_roots(sq, Rational(0), Rational(2)) == 1);

  // the expanded high piece has no root on (2/7, 1/2]
  CHECK(sturm_count_roots(expand_R_minus_one(IntervalId::High), Rational(2, 7), Rational(1, 2)) == 0);

  CHECK_THROWS_AS(sturm_count_roots(RationalPoly(), Rational(0), Rational(1)), ZeroPolynomial);
}

TEST_CASE("sturm counts are exact on random products of rational linear factors") {
  std::mt19937 rng(987654321);
  auto rand_int = [&](long lo, long hi) { return lo + long(rng() % std::uint64_t(hi - lo + 1)); };
  for (int trial = 0; trial < 100; ++trial) {
    const int nfactors = int(rand_int(1, 6));
    std::vector<Rational> roots;
    RationalPoly p = RationalPoly::constant(Rational(1));
    for (int k = 0; k < nfactors; ++k) {
      Rational r(rand_int(-20, 20), rand_int(1, 10));
      // occasionally repeat a root to exercise the square-free path
      if (!roots.empty() && rand_int(0, 3) == 0) r = roots[std::size_t(rand_int(0, long(roots.size()) - 1))];
      roots.push_back(r);
      p = p * RationalPoly({-r, Rational(1)});
    }
    Rational a(rand_int(-25, 25), rand_int(1, 4));
    Rational b = a + Rational(rand_int(1, 40), rand_int(1, 4));
    // keep the endpoints away from the roots: the count convention at a
    // root endpoint is exercised separately above
    bool endpoint_is_root = false;
    for (const auto& r : roots)
      if (r == a || r == b) endpoint_is_root = true;
    if (endpoint_is_root) continue;
    long expected = 0;
    std::vector<Rational> seen;
    for (const auto& r : roots) {
      bool dup = false;
      for (const auto& s : seen) dup = dup || s == r;
      if (!dup && r > a && r < b) {
        ++expected;
        seen.push_back(r);
      }
    }
    CAPTURE(trial);
    CHECK(sturm_count_roots(p, a, b) == expected);
  }
}

TEST_CASE("nearest-root isolation brackets simple roots to 1e-7") {
  // p = (x - 1/3)(x - 2)
  const RationalPoly p = RationalPoly({Rational(1, 3), Rational(-1)}) * RationalPoly({Rational(-2), Rational(1)});
  const SturmChain chain(IntPoly::from_rational(p));
  const auto above = nearest_root_above(chain, Rational(1));
  REQUIRE(above.has_value());
  CHECK(above->midpoint() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK((above->hi - above->lo) <= Rational(1, 10000000));
  const auto below = nearest_root_below(chain, Rational(1));
  REQUIRE(below.has_value());
  CHECK(below->midpoint() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  const auto none = nearest_root_above(chain, Rational(3));
  CHECK_FALSE(none.has_value());
}

TEST_CASE("positivity certification of R-1 on all three intervals") {
  const CertReport report = certify_F_positive();
  CHECK(report.verdict);
  REQUIRE(report.intervals.size() == 3);
  for (const auto& cert : report.intervals) {
    CHECK(cert.root_count == 0);
    CHECK(cert.endpoints_ok);
    CHECK(cert.interior_ok);
    CHECK(cert.degree == 34);
    CHECK(cert.verdict);
  }
  // nearest out-of-interval roots of each piece
  const auto& low = report.intervals[0];
  const auto& mid = report.intervals[1];
  const auto& high = report.intervals[2];
  REQUIRE(high.nearest_left.has_value());
  REQUIRE(high.nearest_right.has_value());
  CHECK(std::fabs(high.nearest_left->midpoint() - 0.0006183) <= 1e-5);
  CHECK(std::fabs(high.nearest_right->midpoint() - 0.6297289) <= 1e-5);
  REQUIRE(mid.nearest_right.has_value());
  CHECK(std::fabs(mid.nearest_right->midpoint() - 0.4569663) <= 1e-5);
  REQUIRE(low.nearest_right.has_value());
  CHECK(std::fabs(low.nearest_right->midpoint() - 0.3995404) <= 1e-5);
}

TEST_CASE("monotonicity certification of R") {
  const CertReport report = certify_F_monotone();
  CHECK(report.verdict);
  REQUIRE(report.intervals.size() == 3);
  for (const auto& cert : report.intervals) {
    CHECK(cert.root_count == 0);
    CHECK(cert.interior_ok);
  }
  REQUIRE(report.orderings.size() == 4);
  for (const auto& o : report.orderings) {
    CAPTURE(o.label);
    CHECK(o.holds);
  }
}

TEST_CASE("grid positivity check") {
  CHECK(grid_certify_F(66).verdict);
  CHECK_FALSE(grid_certify_F(1).verdict);
  const auto g66 = grid_certify_F(66);
  const auto g200 = grid_certify_F(200);
  CHECK(g200.verdict);
  CHECK(g200.margin > g66.margin);
  CHECK_THROWS_AS(grid_certify_F(0), std::invalid_argument);
}

TEST_CASE("lipschitz grid products") {
  const auto one = lipschitz_criterion(1, 1);
  const double expected1 = 1.5 * (8.0 / 3.0) * (8.0 / 3.0) * std::pow(2.0 / 3.0, 3);
  CHECK(one.product == doctest::Approx(expected1).epsilon(1e-12));
  CHECK_FALSE(one.verdict);

  const auto two = lipschitz_criterion(2, 1);
  CHECK(std::fabs(two.product - 92.067225) <= 1e-4);
  CHECK_FALSE(two.verdict);

  const auto three = lipschitz_criterion(3, 10000);
  CHECK(std::fabs(three.product - 0.0116774) <= 1e-5);
  CHECK(three.verdict);

  CHECK_THROWS_AS(lipschitz_criterion(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_criterion(2, 0), std::invalid_argument);
}
