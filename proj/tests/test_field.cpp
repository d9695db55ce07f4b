#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "gbpa/field.hpp"

using namespace gbpa;

TEST(Rational, NormalizesSignAndGcd) {
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(Rational(-4, -2).to_string(), "2");
  EXPECT_EQ(Rational(0, -5), Rational(0));
  EXPECT_THROW(Rational(1, 0), field_error);
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("6/-4").to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational::parse("1.5"), field_error);
  EXPECT_THROW(Rational::parse("1/0"), field_error);
  EXPECT_THROW(Rational::parse(""), field_error);
  EXPECT_THROW(Rational::parse("x"), field_error);
}

TEST(Rational, PromotesOnOverflowAndDemotes) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational a(big), b(big);
  Rational p = a * b;
  EXPECT_FALSE(p.is_small());
  mpq_class expect = mpq_class(mpz_class(std::to_string(big))) * mpz_class(std::to_string(big));
  EXPECT_EQ(p.to_mpq(), expect);
  Rational back = p / b;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, a);
  Rational m(std::numeric_limits<std::int64_t>::min());
  EXPECT_EQ((-m).to_mpq(), -mpq_class(mpz_class("-9223372036854775808")));
}

TEST(Rational, AgreesWithGmpOnRandomArithmetic) {
  std::mt19937_64 rng(5);
  auto draw = [&] {
    std::int64_t n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    std::int64_t d = static_cast<std::int64_t>(rng() % 999999) + 1;
    if (rng() % 4 == 0) n *= 1000000007LL;
    return std::pair{Rational(n, d), mpq_class(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)))};
  };
  Rational acc(1);
  mpq_class oracle(1);
  for (int t = 0; t < 2000; ++t) {
    auto [x, qx] = draw();
    qx.canonicalize();
    EXPECT_EQ(x.to_mpq(), qx);
    switch (t % 4) {
      case 0: acc += x; oracle += qx; break;
      case 1: acc -= x; oracle -= qx; break;
      case 2: acc *= x; oracle *= qx; break;
      case 3:
        if (!x.is_zero()) { acc /= x; oracle /= qx; }
        break;
    }
    if (t % 50 == 0) { acc = Rational(1); oracle = 1; }
    ASSERT_EQ(acc.to_mpq(), oracle) << "step " << t;
    ASSERT_EQ(acc.to_string(), oracle.get_str());
  }
}

TEST(Rational, OrderingMatchesGmp) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 500; ++t) {
    std::int64_t a = static_cast<std::int64_t>(rng() % 201) - 100, b = static_cast<std::int64_t>(rng() % 50) + 1;
    std::int64_t c = static_cast<std::int64_t>(rng() % 201) - 100, d = static_cast<std::int64_t>(rng() % 50) + 1;
    bool lt = Rational(a, b) < Rational(c, d);
    EXPECT_EQ(lt, a * d < c * b);
  }
}

TEST(Rational, InverseOfZeroThrows) {
  EXPECT_THROW(Rational(0).inverse(), field_error);
  EXPECT_EQ(Rational(-3, 7).inverse(), Rational(-7, 3));
}

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), field_error);
  EXPECT_THROW(PrimeField(15), field_error);
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(32003));
}

TEST(PrimeField, MatchesModularIntegerArithmetic) {
  for (std::uint32_t p : {2u, 3u, 7u, 101u, 32003u}) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    for (int t = 0; t < 300; ++t) {
      std::int64_t a = static_cast<std::int64_t>(rng() % 100000) - 50000;
      std::int64_t b = static_cast<std::int64_t>(rng() % 100000) - 50000;
      auto mod = [&](std::int64_t v) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        return static_cast<std::uint32_t>(r < 0 ? r + p : r);
      };
      auto x = f.from_int(a), y = f.from_int(b);
      EXPECT_EQ((x + y).value(), mod(a + b));
      EXPECT_EQ((x - y).value(), mod(a - b));
      EXPECT_EQ((x * y).value(), mod(mod(a) * static_cast<std::int64_t>(mod(b))));
      if (!y.is_zero()) {
        auto q = x / y;
        EXPECT_EQ((q * y).value(), mod(a));
      }
    }
  }
}

TEST(PrimeField, ParsesFractionsModP) {
  PrimeField f7(7);
  EXPECT_EQ(f7.parse("1/2").value(), 4u);   // 2 * 4 = 8 = 1
  EXPECT_EQ(f7.parse("-1").value(), 6u);
  EXPECT_EQ(f7.parse("15").value(), 1u);
  EXPECT_THROW(f7.parse("1/7"), field_error);
  EXPECT_EQ(f7.name(), "F7");
}

TEST(PrimeField, DivisionByZeroThrows) {
  PrimeField f(5);
  EXPECT_THROW(f.one() / f.zero(), field_error);
}

TEST(PrimeField, MixingModuliThrows) {
  PrimeField f5(5), f7(7);
  EXPECT_THROW(f5.one() + f7.one(), field_error);
}
