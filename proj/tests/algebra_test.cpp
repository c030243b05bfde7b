#include <gtest/gtest.h>

#include <random>

#include "tzcl/random_poly.hpp"
#include "tzcl/diffpoly.hpp"
#include "tzcl/serialize.hpp"

using namespace tzcl;
using tzcl::random_poly;

namespace {

const DiffPoly u0 = DiffPoly::u(0);
const DiffPoly ub0 = DiffPoly::ub(0);

DiffPoly P(const char* s) { return parse_poly(s); }

}  // namespace

TEST(Scalar, RingIdentities) {
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
  EXPECT_EQ(Scalar::sqrt2() * Scalar::sqrt2(), Scalar(2));
  EXPECT_EQ(Scalar::sqrt_m2() * Scalar::sqrt_m2(), Scalar(-2));
  Scalar x(Rational(1, 2), 3, -2, Rational(5, 7));
  EXPECT_EQ(x * x.inverse(), Scalar(1));
  EXPECT_EQ(x.conj().conj(), x);
  EXPECT_THROW(Scalar().inverse(), std::domain_error);
}

TEST(Scalar, ComplexValue) {
  auto c = (Scalar::sqrt_m2() + 1).to_complex();
  EXPECT_NEAR(c.real(), 1.0, 1e-15);
  EXPECT_NEAR(c.imag(), std::sqrt(2.0), 1e-15);
}

TEST(DiffPoly, Add) {
  EXPECT_TRUE((u0 + (-u0)).is_zero());
  EXPECT_EQ((u0 + ub0).size(), 2u);
  EXPECT_EQ(DiffPoly::exp(1) + DiffPoly::exp(1), DiffPoly::exp(1, 2));
}

TEST(DiffPoly, Multiply) {
  EXPECT_EQ((u0 + ub0) * (u0 - ub0), u0 * u0 - ub0 * ub0);
  EXPECT_EQ(DiffPoly::exp(QExp(1, 2)) * DiffPoly::exp(QExp(1, 2)), DiffPoly::exp(1));
  DiffPoly r(Scalar::sqrt_m2());
  EXPECT_EQ(r * r, DiffPoly(-2));
}

TEST(DiffPoly, Conjugate) {
  EXPECT_EQ(conjugate(DiffPoly::exp(1) * DiffPoly::u(1)), DiffPoly::exp(1) * DiffPoly::ub(1));
  DiffPoly q = DiffPoly::z() * u0 - DiffPoly::zb() * ub0;
  EXPECT_EQ(conjugate(q), -q);
  EXPECT_EQ(conjugate(Scalar::i() * u0), Scalar(-1) * Scalar::i() * ub0);
}

TEST(DiffPoly, Weight) {
  EXPECT_EQ(weight_of(P("z*ub2*u1^2")), 0);
  EXPECT_EQ(weight_of(P("u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5")), 5);
  EXPECT_FALSE(weight_of(P("u0 + u1")).has_value());
  EXPECT_FALSE(weight_of(DiffPoly()).has_value());
  EXPECT_EQ(weight_of(DiffPoly::exp(-2)), 0);
}

TEST(DiffPoly, Partial) {
  EXPECT_EQ(partial(u0.pow(5), Generator::u(0)), 5 * u0.pow(4));
  EXPECT_EQ(partial(DiffPoly::exp(-2), Generator::exp_u()), DiffPoly::exp(-2, -2));
  EXPECT_EQ(partial(DiffPoly::z() * u0, Generator::z()), u0);
  EXPECT_TRUE(partial(u0, Generator::ub(0)).is_zero());
}

TEST(DiffPoly, EvalNumeric) {
  using C = std::complex<double>;
  EXPECT_EQ(eval_numeric(u0 * u0, {{Generator::u(0), C(2)}}, 0.0), C(4));
  EXPECT_EQ(eval_numeric(DiffPoly::exp(1), {}, 0.0), C(1));
  auto v = eval_numeric(u0 * ub0, {{Generator::u(0), C(1, 1)}, {Generator::ub(0), C(1, -1)}}, 0.0);
  EXPECT_NEAR(std::abs(v - C(2)), 0.0, 1e-15);
  EXPECT_NEAR(eval_numeric(DiffPoly::exp(QExp(-1, 2), 3), {}, 2.0).real(), 3 * std::exp(-1.0), 1e-14);
  EXPECT_THROW(eval_numeric(u0, {}, 0.0), MissingAssignment);
}

TEST(Text, ParseQuintic) {
  DiffPoly v5 = P("u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5");
  DiffPoly expected = DiffPoly::u(4) + 5 * DiffPoly::u(2) * DiffPoly::u(1) -
                      5 * DiffPoly::u(2) * u0.pow(2) - 5 * DiffPoly::u(1).pow(2) * u0 + u0.pow(5);
  EXPECT_EQ(v5, expected);
  EXPECT_EQ(format_poly(v5), "u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5");
}

TEST(Text, ParseExponentialsAndUnits) {
  EXPECT_EQ(P("E[1/2]*u0"), DiffPoly::exp(QExp(1, 2)) * u0);
  EXPECT_EQ(P("i*s2*ub0"), Scalar::sqrt_m2() * ub0);
  EXPECT_EQ(P("E[-2]"), DiffPoly::exp(-2));
  EXPECT_EQ(P("-(u0 - 2/4)^2"), -(u0 - DiffPoly(Scalar::frac(1, 2))).pow(2));
  EXPECT_EQ(P("0"), DiffPoly());
}

TEST(Text, Errors) {
  for (const char* bad : {"", "u0 +", "u", "E[x]", "1/0", "q1", "(u0", "u0 u1"})
    EXPECT_THROW(P(bad), ParseError) << bad;
  try {
    P("u0 + $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Text, FormatShapes) {
  EXPECT_EQ(format_poly(DiffPoly()), "0");
  EXPECT_EQ(format_poly(P("-u0")), "-u0");
  EXPECT_EQ(format_poly(P("E[1] - E[-2]")), "E[1] - E[-2]");
  EXPECT_EQ(format_poly(P("(1+i)*u0")), "(1 + i)*u0");
  EXPECT_EQ(format_poly(P("-1/3*u1^3*u0")), "-1/3*u1^3*u0");
}

TEST(Serialize, RecordShape) {
  auto j = to_json(P("3/2*i*E[-1/2]*u1*u0^2"));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["coeff"][1], "3/2");
  EXPECT_EQ(j[0]["exp_u"], "-1/2");
  EXPECT_EQ(j[0]["powers"]["u0"], 2);
  EXPECT_EQ(j[0]["powers"]["u1"], 1);
}

class AlgebraProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  static constexpr int kCases = 120;
};

TEST_F(AlgebraProperties, RingLaws) {
  for (int n = 0; n < kCases; ++n) {
    DiffPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
  }
}

TEST_F(AlgebraProperties, ConjugationIsRingInvolution) {
  for (int n = 0; n < kCases; ++n) {
    DiffPoly a = random_poly(rng), b = random_poly(rng);
    ASSERT_EQ(conjugate(conjugate(a)), a);
    ASSERT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
    ASSERT_EQ(conjugate(a + b), conjugate(a) + conjugate(b));
  }
}

TEST_F(AlgebraProperties, WeightIsAdditive) {
  for (int n = 0; n < kCases; ++n) {
    DiffPoly a = DiffPoly::monomial(random_poly(rng).terms().begin()->first, 2);
    DiffPoly b = DiffPoly::monomial(random_poly(rng).terms().begin()->first, Scalar::i());
    auto wa = weight_of(a), wb = weight_of(b);
    ASSERT_TRUE(wa && wb);
    ASSERT_EQ(weight_of(a * b), *wa + *wb);
    ASSERT_EQ(weight_of(conjugate(a)), -*wa);
  }
}

TEST_F(AlgebraProperties, TextRoundTrip) {
  for (int n = 0; n < kCases; ++n) {
    DiffPoly a = random_poly(rng);
    std::string s = format_poly(a);
    ASSERT_EQ(parse_poly(s), a) << s;
    ASSERT_EQ(format_poly(parse_poly(s)), s);
    ASSERT_EQ(poly_from_json(to_json(a)), a);
  }
}
