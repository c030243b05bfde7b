#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tzcl/cohomology.hpp"

using namespace tzcl;

namespace {

const SystemParams& sp = tzitzeica();
DiffPoly P(const char* s) { return parse_poly(s); }
const DiffPoly u0 = DiffPoly::u(0);
const DiffPoly ub0 = DiffPoly::ub(0);
const DiffPoly& f() {
  static const DiffPoly v = sp.f();
  return v;
}

const DiffPoly& p7() {
  static const DiffPoly v = P_step(sp, u0).a_next;
  return v;
}

OneFormModI reduced_d(const DiffPoly& g) { return OneFormModI::from_form(d_function(sp, g)); }

std::string rational_text(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  int n = num(rng);
  if (n == 0) n = 1;
  return std::to_string(n) + "/" + std::to_string(den(rng));
}

std::string complex_text(std::mt19937_64& rng) {
  std::string re = rational_text(rng), im = rational_text(rng);
  return re + (im[0] == '-' ? "" : "+") + im + "i";
}

SampleTable random_table(const std::vector<std::string>& names, int rows, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::ostringstream os;
  os << "# random samples\n";
  for (const auto& n : names) os << n << " ";
  os << "\n";
  for (int r = 0; r < rows; ++r) {
    for (const auto& n : names) os << (n == "u" ? rational_text(rng) : complex_text(rng)) << " ";
    os << "\n";
  }
  return parse_sample_table(os.str(), "random");
}

}  // namespace

TEST(PhiTilde, Examples) {
  EXPECT_EQ(phi_tilde(sp, u0, u0), (OneFormModI{u0 * P("u1"), -(u0 * f())}));
  EXPECT_TRUE(phi_tilde(sp, DiffPoly(1), DiffPoly(1)).is_zero());
  EXPECT_TRUE(closed_mod_ideal(sp, phi_tilde(sp, u0, q_function())).is_zero());
  EXPECT_TRUE(closed_mod_ideal(sp, phi_tilde(sp, q_function(), u0)).is_zero());
}

TEST(PhiTilde, ClosedForKernelElements) {
  for (const DiffPoly& p : {u0, v5_generator(), p7(), conjugate(v5_generator())}) {
    EXPECT_TRUE(closed_mod_ideal(sp, phi_tilde(sp, q_function(), p)).is_zero());
    EXPECT_TRUE(closed_mod_ideal(sp, phi_tilde(sp, p, q_function())).is_zero());
  }
}

TEST(Closed, Examples) {
  EXPECT_EQ(closed_mod_ideal(sp, {u0, DiffPoly()}), f());
  EXPECT_TRUE(closed_mod_ideal(sp, reduced_d(u0)).is_zero());
  EXPECT_TRUE(closed_mod_ideal(sp, reduced_d(P("z*u2*ub1 + E[1/2]*u0"))).is_zero());
}

TEST(PhiRep, ClosedAndZero) {
  EXPECT_TRUE(closed_mod_ideal(sp, phi_rep(sp, u0, 1)).is_zero());
  EXPECT_TRUE(phi_rep(sp, DiffPoly(), 2).is_zero());
  EXPECT_THROW(phi_rep(sp, u0, 2), std::invalid_argument);
}

TEST(PhiRep, DiffersFromPhiTildeByExactTerm) {
  const DiffPoly p5 = v5_generator();
  const OneFormModI rep = phi_rep(sp, p5, 3);
  EXPECT_TRUE(closed_mod_ideal(sp, rep).is_zero());
  // phi~_{P,q} = 5 phi_3 + d(Pq)/2, hence phi~_{q,P} + 5 phi_3 = d(Pq)/2.
  const DiffPoly half_pq = Scalar::frac(1, 2) * (p5 * q_function());
  EXPECT_EQ(phi_tilde(sp, p5, q_function()) - DiffPoly(5) * rep, reduced_d(half_pq));
  auto g = integrate_oneform(sp, phi_tilde(sp, q_function(), p5) + DiffPoly(5) * rep);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, half_pq);
}

TEST(Triviality, Examples) {
  auto t = triviality_test(sp, phi_tilde(sp, u0, u0));
  ASSERT_TRUE(t.trivial);
  EXPECT_EQ(t.potential, Scalar::frac(1, 2) * P("u0^2"));
  EXPECT_FALSE(triviality_test(sp, phi_tilde(sp, q_function(), u0)).trivial);
  auto z = triviality_test(sp, OneFormModI{});
  EXPECT_TRUE(z.trivial);
  EXPECT_TRUE(z.potential.is_zero());
  EXPECT_THROW(triviality_test(sp, {u0, DiffPoly()}), std::invalid_argument);
}

TEST(Triviality, OddClassesNontrivialEvenTrivial) {
  for (const DiffPoly& p : {u0, v5_generator(), p7()}) {
    EXPECT_FALSE(triviality_test(sp, phi_tilde(sp, q_function(), p)).trivial) << format_poly(p);
    const OneFormModI even = phi_tilde(sp, p, u0);
    auto t = triviality_test(sp, even);
    ASSERT_TRUE(t.trivial) << format_poly(p);
    EXPECT_EQ(reduced_d(t.potential), even);
  }
}

TEST(NormalForm, U0) {
  EXPECT_TRUE(normal_form_B(sp, u0, 1, 2, 3).is_zero());
  EXPECT_TRUE(normal_form_B(sp, u0, 2, 3, 5).is_zero());
  const Form phi = normal_form_Phi(sp, u0, 3);
  EXPECT_EQ(phi.degree(), 2);
  // rho = -(i/2)(u1 zeta + f zetabar + eta1), paired with eta0.
  const Scalar mhi = -Scalar::frac(1, 2) * Scalar::i();
  Form expect = wedge(Form::symbol(CoframeSymbol::eta(0)),
                      Form::symbol(CoframeSymbol::zeta(), mhi * P("u1")) +
                          Form::symbol(CoframeSymbol::zetabar(), mhi * f()) +
                          Form::symbol(CoframeSymbol::eta(1), DiffPoly(mhi)));
  expect += u0 * (DiffPoly(mhi) * (Form::wedge_of({CoframeSymbol::zeta(), CoframeSymbol::eta(1)}) -
                                   Form::wedge_of({CoframeSymbol::zetabar(), CoframeSymbol::etabar(1)})));
  EXPECT_EQ(phi, expect);
  EXPECT_TRUE(d_form(sp, phi).is_zero());
}

TEST(NormalForm, ClosedAtSufficientLevel) {
  EXPECT_TRUE(d_form(sp, normal_form_Phi(sp, q_function(), 2)).is_zero());
  EXPECT_TRUE(d_form(sp, normal_form_Phi(sp, ub0, 2)).is_zero());
  EXPECT_TRUE(d_form(sp, normal_form_Phi(sp, v5_generator(), 4)).is_zero());
  EXPECT_TRUE(d_form(sp, normal_form_Phi(sp, conjugate(v5_generator()), 4)).is_zero());
  EXPECT_TRUE(d_form(sp, normal_form_Phi(sp, p7(), 6)).is_zero());
  EXPECT_FALSE(d_form(sp, normal_form_Phi(sp, v5_generator(), 3)).is_zero());
}

TEST(NormalForm, Preconditions) {
  EXPECT_TRUE(normal_form_Phi(sp, DiffPoly(), 3).is_zero());
  EXPECT_THROW(normal_form_Phi(sp, P("E[1]"), 2), std::invalid_argument);
  EXPECT_THROW(normal_form_Phi(sp, P("u1"), 2), std::invalid_argument);
  EXPECT_THROW(normal_form_Phi(sp, P("u0*ub0"), 2), std::invalid_argument);
}

TEST(Gauge, U0) {
  const GaugeResult g = translation_gauge(sp, u0);
  EXPECT_EQ(g.A, P("1/2*u0^2"));
  EXPECT_EQ(g.B, P("u0*ub0 + E[1] + 1/2*E[-2]"));
  EXPECT_EQ(g.phi_hat, (OneFormModI{P("-1/2*u0^2"), P("E[1] + 1/2*E[-2]")}));
  EXPECT_EQ(format_form(g.phi_hat), "-1/2*u0^2*Z + (E[1] + 1/2*E[-2])*Zb");
  EXPECT_TRUE(closed_mod_ideal(sp, g.phi_hat).is_zero());
  auto pot = integrate_oneform(sp, phi_tilde(sp, u0, q_function()) - g.phi_hat);
  ASSERT_TRUE(pot.has_value());
  EXPECT_EQ(*pot, g.G);
}

TEST(Gauge, HigherGenerators) {
  for (const DiffPoly& p : {v5_generator(), p7()}) {
    const GaugeResult g = translation_gauge(sp, p);
    EXPECT_EQ(g.phi_hat.P.z_degree(), 0u);
    EXPECT_EQ(g.phi_hat.Q.zb_degree(), 0u);
    EXPECT_TRUE(closed_mod_ideal(sp, g.phi_hat).is_zero());
    auto t = triviality_test(sp, g.phi_hat - phi_tilde(sp, p, q_function()));
    ASSERT_TRUE(t.trivial);
    EXPECT_EQ(t.potential, -g.G);
  }
}

TEST(SampleTableText, Parse) {
  SampleTable t = parse_sample_table("u, u0, ub0  # header\n0.5, 1+2i, 1-2i\n-1/3 -i 3/2i\n", "inline");
  ASSERT_EQ(t.names, (std::vector<std::string>{"u", "u0", "ub0"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], std::complex<double>(1, 2));
  EXPECT_EQ(t.rows[1][1], std::complex<double>(0, -1));
  EXPECT_EQ(t.rows[1][2], std::complex<double>(0, 1.5));
  ASSERT_TRUE(t.exact.has_value());
  EXPECT_EQ((*t.exact)[1][0], Scalar(Rational(-1, 3)));
  EXPECT_FALSE(parse_sample_table("u0\n1e-3\n").exact.has_value());
  EXPECT_THROW(parse_sample_table("u0 u1\n1\n"), std::invalid_argument);
  EXPECT_THROW(parse_sample_table("u0 w\n1 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_sample_table("u0\nabc\n"), std::invalid_argument);
}

TEST(FiniteType, IndependentGenerators) {
  const SampleTable t = random_table({"u", "u0", "u1", "u2", "u3", "u4", "ub0", "ub1", "ub2", "ub3", "ub4"}, 12, 11);
  const RankResult r = finite_type_rank(t, {u0, v5_generator()});
  EXPECT_EQ(r.rank, 4);
  EXPECT_EQ(r.columns, 4);
  EXPECT_FALSE(r.finite_type.has_value());
  EXPECT_TRUE(r.dependency.empty());
}

TEST(FiniteType, CollinearGenerators) {
  const SampleTable t = random_table({"u0", "ub0"}, 6, 5);
  const RankResult r = finite_type_rank(t, {u0, DiffPoly(2) * u0});
  EXPECT_EQ(r.rank, 2);
  ASSERT_EQ(r.finite_type, 1);
  ASSERT_EQ(r.dependency.size(), 2u);
  EXPECT_EQ(r.dependency[0].label, "g1");
  EXPECT_NEAR(std::abs(r.dependency[0].coeff - 2.0), 0.0, 1e-10);
  EXPECT_EQ(r.dependency[1].label, "g2");
  EXPECT_EQ(r.dependency[1].coeff, -1.0);
  EXPECT_EQ(r.exact_verified, true);
}

TEST(FiniteType, EmptyAndTooFewRows) {
  const SampleTable t = random_table({"u0", "ub0"}, 1, 3);
  EXPECT_EQ(finite_type_rank(t, {}).rank, 0);
  EXPECT_THROW(finite_type_rank(t, {u0, ub0}), std::invalid_argument);
}
