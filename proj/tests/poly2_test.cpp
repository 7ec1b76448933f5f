#include <gtest/gtest.h>

#include <cmath>

#include "dense.hpp"
#include "random.hpp"
#include "weber/poly2.hpp"

using weber::make_rational;
using weber::Poly2;
using weber::Rational;

namespace {

const Poly2 X = Poly2::x();
const Poly2 Y = Poly2::y();

}  // namespace

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(weber::parse_rational("7"), Rational(7));
  EXPECT_EQ(weber::parse_rational("-3/6"), make_rational(-1, 2));
  EXPECT_THROW(weber::parse_rational("4/-8"), weber::Error);
  EXPECT_THROW(weber::parse_rational("1/0"), weber::Error);
  EXPECT_THROW(weber::parse_rational("abc"), weber::Error);
  EXPECT_THROW(weber::parse_rational(""), weber::Error);
}

TEST(Rational, StaysReduced) {
  const Rational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(Rational(0).get_den(), 1);
}

TEST(Rational, SquareRoots) {
  EXPECT_EQ(weber::rational_sqrt(make_rational(9, 4)), make_rational(3, 2));
  EXPECT_EQ(weber::rational_sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(weber::rational_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(weber::rational_sqrt(Rational(-4)).has_value());
}

TEST(Poly2Add, Cancellation) { EXPECT_TRUE((X * X + -(X * X)).is_zero()); }

TEST(Poly2Add, Simple) { EXPECT_EQ((X + Y) + (X - Y), Poly2(2) * X); }

TEST(Poly2Add, FocalSum) {
  const Poly2 q1 = (X - Poly2(3)).pow(2) + Y * Y;
  const Poly2 q2 = (X + Poly2(3)).pow(2) + Y * Y;
  const auto expected = oracle::squared_distance(3, 0) + oracle::squared_distance(-3, 0);
  EXPECT_EQ(q1 + q2, oracle::to_poly(expected));
  EXPECT_EQ(q1 + q2, Poly2(2) * X * X + Poly2(2) * Y * Y + Poly2(18));
}

TEST(Poly2Mul, ByZero) { EXPECT_TRUE(((X + Y) * Poly2()).is_zero()); }

TEST(Poly2Mul, DifferenceOfSquares) { EXPECT_EQ((X - Poly2(1)) * (X + Poly2(1)), X * X - Poly2(1)); }

TEST(Poly2Mul, FocalProduct) {
  const Poly2 q1 = (X - Poly2(3)).pow(2) + Y * Y;
  const Poly2 q2 = (X + Poly2(3)).pow(2) + Y * Y;
  const Poly2 identity = (X * X + Y * Y + Poly2(9)).pow(2) - Poly2(36) * X * X;
  EXPECT_EQ(q1 * q2, identity);
  EXPECT_EQ(q1 * q2, oracle::to_poly(oracle::squared_distance(3, 0) * oracle::squared_distance(-3, 0)));
}

TEST(Poly2Eval, Examples) {
  EXPECT_EQ((X * X + Y * Y - Poly2(1)).eval(1, 0), 0.0);
  EXPECT_LT(std::abs((Y * Y - Poly2(4) * X).eval(2, std::sqrt(8.0))), 1e-9);
  EXPECT_EQ(Poly2().eval(5, 7), 0.0);
}

TEST(Poly2Eval, ExactMatchesFloat) {
  const Poly2 p = Poly2(make_rational(1, 3)) * X.pow(3) * Y - Poly2(2) * Y.pow(2) + Poly2(7);
  const double x = 1.25, y = -0.5;
  EXPECT_NEAR(p.eval(x, y), p.eval_exact(make_rational(5, 4), make_rational(-1, 2)).get_d(), 1e-14);
}

TEST(Poly2Degree, ZeroIsMinusOne) {
  EXPECT_EQ(Poly2().degree(), -1);
  EXPECT_EQ(Poly2(5).degree(), 0);
  EXPECT_EQ((X * Y * Y + X).degree(), 3);
}

TEST(Poly2Normalize, Examples) {
  const Rational a = 5, b = 4;
  const Poly2 raw = Poly2(-16 * b * b) * X * X - Poly2(16 * a * a) * Y * Y + Poly2(16 * a * a * b * b);
  EXPECT_EQ(weber::normalize(raw), Poly2(16) * X * X + Poly2(25) * Y * Y - Poly2(400));
  EXPECT_EQ(weber::normalize(Poly2(3) * X), X);
  EXPECT_EQ(weber::normalize(Poly2(-2) * Y + Poly2(4)), Y - Poly2(2));
}

TEST(Poly2Normalize, ClearsDenominators) {
  const Poly2 p = Poly2(make_rational(1, 2)) * X + Poly2(make_rational(-1, 3));
  EXPECT_EQ(weber::normalize(p), Poly2(3) * X - Poly2(2));
}

TEST(Poly2Normalize, ZeroThrows) {
  try {
    weber::normalize(Poly2());
    FAIL();
  } catch (const weber::Error& e) {
    EXPECT_STREQ(e.what(), "cannot normalize zero");
  }
}

TEST(Poly2Scale, Examples) {
  EXPECT_TRUE(weber::equal_up_to_scale(Poly2(2) * (X * X + Y * Y) - Poly2(2), X * X + Y * Y - Poly2(1)));
  EXPECT_FALSE(weber::equal_up_to_scale(X * X - Y, X * X + Y));
  EXPECT_TRUE(weber::equal_up_to_scale(X - Y, Y - X));
  EXPECT_THROW(weber::equal_up_to_scale(Poly2(), X), weber::Error);
}

TEST(Poly2Property, RingAxioms) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 p = rng.poly(3, 5), q = rng.poly(3, 5), r = rng.poly(3, 5);
    ASSERT_EQ(p + q, q + p);
    ASSERT_EQ(p * q, q * p);
    ASSERT_EQ((p + q) + r, p + (q + r));
    ASSERT_EQ((p * q) * r, p * (q * r));
    ASSERT_EQ(p * (q + r), p * q + p * r);
    ASSERT_TRUE((p - p).is_zero());
    ASSERT_EQ(p * Poly2(1), p);
  }
}

TEST(Poly2Property, DegreeAdditive) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 p = rng.nonzero_poly(4, 6), q = rng.nonzero_poly(4, 6);
    ASSERT_EQ((p * q).degree(), p.degree() + q.degree());
  }
}

TEST(Poly2Property, NormalizeIdempotent) {
  gen::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 p = rng.nonzero_poly(4, 6);
    const Poly2 n = weber::normalize(p);
    ASSERT_EQ(weber::normalize(n), n);
    ASSERT_TRUE(weber::equal_up_to_scale(p, Poly2(rng.integer(1, 9) * (rng.integer(0, 1) ? 1 : -1)) * p));
    for (const auto& [m, c] : n.terms()) ASSERT_EQ(c.get_den(), 1);
    ASSERT_GT(n.leading_coeff(), 0);
  }
}

TEST(Poly2Property, EvalCompatibleWithProduct) {
  gen::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly2 p = rng.poly(3, 5), q = rng.poly(3, 5);
    const double x = rng.real(-2, 2), y = rng.real(-2, 2);
    const double fp = p.eval(x, y), fq = q.eval(x, y);
    const double scale = std::max(1.0, std::abs(fp) * std::abs(fq)) +
                         Rational(p.max_abs_coeff() * q.max_abs_coeff()).get_d() * std::pow(3.0, 6) * 36;
    ASSERT_LE(std::abs((p * q).eval(x, y) - fp * fq), 1e-12 * scale);
  }
}

TEST(Poly2Property, CompiledMatchesExact) {
  gen::Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly2 p = rng.poly(6, 10);
    const Rational x = rng.rational(), y = rng.rational();
    const double exact = p.eval_exact(x, y).get_d();
    ASSERT_NEAR(weber::CompiledPoly2(p)(x.get_d(), y.get_d()), exact, 1e-9 * std::max(1.0, std::abs(exact)));
  }
}

TEST(Poly2Property, DenseOracleAgrees) {
  gen::Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const long a = rng.integer(-5, 5), b = rng.integer(-5, 5), c = rng.integer(-5, 5);
    const oracle::Dense d = oracle::sq(oracle::squared_distance(a, b)) - c * oracle::squared_distance(b, a);
    const Poly2 qa = (X - Poly2(a)).pow(2) + (Y - Poly2(b)).pow(2);
    const Poly2 qb = (X - Poly2(b)).pow(2) + (Y - Poly2(a)).pow(2);
    ASSERT_EQ(oracle::to_poly(d), qa * qa - Poly2(c) * qb);
  }
}
