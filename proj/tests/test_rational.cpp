#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "hamlie/rational.hpp"

using hamlie::Rational;

namespace {

mpq_class q(std::int64_t p, std::int64_t d = 1) {
  mpq_class x(mpz_class(std::to_string(p)), mpz_class(std::to_string(d)));
  x.canonicalize();
  return x;
}

// Mix of tiny values and values near the int64 boundary so both the inline
// path and the promotion path are exercised.
std::int64_t draw(std::mt19937_64& g) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  switch (g() % 4) {
    case 0: return static_cast<std::int64_t>(g() % 21) - 10;
    case 1: return static_cast<std::int64_t>(g() % 2000001) - 1000000;
    case 2: return kMax - static_cast<std::int64_t>(g() % 1000);
    default: return -kMax + static_cast<std::int64_t>(g() % 1000);
  }
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_EQ(Rational(2, -4).str(), "-1/2");
  EXPECT_EQ(Rational(6, 3).str(), "2");
  EXPECT_TRUE(Rational(0, 5).is_zero());
  EXPECT_TRUE(Rational(7, 7).is_one());
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParseAcceptsOnlyExactLiterals) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational::parse("+5/10"), Rational(1, 2));
  for (const char* bad : {"0.5", "1e3", "", "/", "1/", "abc", "1/-2", "1/0", " 1"})
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, ParsesValuesBeyondInt64) {
  const Rational big = Rational::parse("123456789012345678901234567891/7");
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.str(), "123456789012345678901234567891/7");
  EXPECT_EQ(big - big, Rational(0));
  EXPECT_TRUE((big - big).is_small());
}

TEST(Rational, ArithmeticMatchesGmp) {
  std::mt19937_64 g(42);
  for (int i = 0; i < 20000; ++i) {
    const auto a1 = draw(g), b1 = draw(g);
    auto a2 = draw(g), b2 = draw(g);
    if (a2 == 0) a2 = 1;
    if (b2 == 0) b2 = 3;
    const Rational a(a1, a2), b(b1, b2);
    const mpq_class qa = q(a1, a2), qb = q(b1, b2);
    ASSERT_EQ((a + b).to_mpq(), qa + qb);
    ASSERT_EQ((a - b).to_mpq(), qa - qb);
    ASSERT_EQ((a * b).to_mpq(), qa * qb);
    if (qb != 0) {
      ASSERT_EQ((a / b).to_mpq(), qa / qb);
    }
    ASSERT_EQ(a < b, qa < qb);
    ASSERT_EQ(a == b, qa == qb);
    // canonical storage: small iff it fits
    const Rational s = a * b;
    const mpq_class qs = qa * qb;
    const bool fits = qs.get_num().fits_slong_p() && qs.get_den().fits_slong_p() &&
                      qs.get_num() != mpz_class(std::to_string(std::numeric_limits<std::int64_t>::min()));
    ASSERT_EQ(s.is_small(), fits);
  }
}

TEST(Rational, Int64MinIsPromoted) {
  const Rational m(std::numeric_limits<std::int64_t>::min());
  EXPECT_FALSE(m.is_small());
  EXPECT_EQ((m + Rational(1)).to_int64(), std::numeric_limits<std::int64_t>::min() + 1);
  EXPECT_EQ(-(-m), m);
}

TEST(Rational, InverseAndIntegrality) {
  EXPECT_EQ(Rational(-3, 4).inverse(), Rational(-4, 3));
  EXPECT_THROW(Rational(0).inverse(), std::domain_error);
  EXPECT_TRUE(Rational(8, 4).is_integer());
  EXPECT_FALSE(Rational(1, 3).is_integer());
  EXPECT_THROW((void)Rational(1, 3).to_int64(), std::domain_error);
}
