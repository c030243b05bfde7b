#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tzcl/random_poly.hpp"
#include "tzcl/killing.hpp"

using namespace tzcl;

namespace {

const SystemParams& sp = tzitzeica();
DiffPoly P(const char* s) { return parse_poly(s); }
const DiffPoly u0 = DiffPoly::u(0);
const Scalar I = Scalar::i();
const Scalar S2 = Scalar::sqrt2();

DiffPoly E(long num, long den = 1) { return DiffPoly::exp(QExp(num, den)); }

Mat3 basis(int j, int k) {
  const DiffPoly one(1), zero;
  switch (j) {
    case 0: return g0(one);
    case 1: return k == 0 ? g1(one, zero) : g1(zero, one);
    case 2: return g2(one);
    case 3: return g3(one);
    case 4: return g4(one);
    default: return k == 0 ? g5(one, zero) : g5(zero, one);
  }
}

int dim(int j) { return (j == 1 || j == 5) ? 2 : 1; }

using CMat = std::array<std::array<std::complex<double>, 3>, 3>;

std::complex<double> to_complex(const Scalar& s) {
  const double r2 = std::numbers::sqrt2;
  return {s.re().get_d() + r2 * s.s2().get_d(), s.im().get_d() + r2 * s.is2().get_d()};
}

CMat numeric(const Mat3& m) {
  CMat out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = to_complex(m(i, j).coefficient(JetMonomial()));
  return out;
}

CMat mul(const CMat& a, const CMat& b) {
  CMat out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// R(-X^t)R^{-1} with R the rotation by angle about (1, 0, 0).
CMat tau(const CMat& x, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  CMat r{}, rinv{}, mt{};
  r[0][0] = rinv[0][0] = 1;
  r[1][1] = r[2][2] = rinv[1][1] = rinv[2][2] = c;
  r[1][2] = -s;
  r[2][1] = s;
  rinv[1][2] = s;
  rinv[2][1] = -s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mt[i][j] = -x[j][i];
  return mul(mul(r, mt), rinv);
}

bool is_multiple(const CMat& a, const CMat& b, std::complex<double> mu) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(a[i][j] - mu * b[i][j]) > 1e-12) return false;
  return true;
}

const KillingChain& u0_window() {
  static const KillingChain w = killing_window(sp, P_step(sp, u0));
  return w;
}

bool all_zero(const std::vector<NamedResidual>& rs) {
  for (const auto& r : rs)
    if (!r.value.is_zero()) return false;
  return true;
}

}  // namespace

TEST(Eigenspace, ProjectExamples) {
  EXPECT_EQ(eigenspace_project(g0(DiffPoly(1)), 0), g0(DiffPoly(1)));
  EXPECT_TRUE(eigenspace_project(g0(DiffPoly(1)), 1).is_zero());
  EXPECT_EQ(eigen_coordinates(g1(P("u0"), P("ub1")), 1), (std::vector<DiffPoly>{P("u0"), P("ub1")}));
}

TEST(Eigenspace, ProjectionIsDecomposition) {
  std::mt19937_64 rng(20240611);
  for (int n = 0; n < 30; ++n) {
    std::array<Scalar, 9> e;
    for (auto& x : e) x = tzcl::random_scalar(rng);
    e[8] = -(e[0] + e[4]);
    const Mat3 m = Mat3::scalar_matrix(e);
    Mat3 sum;
    for (int j = 0; j < 6; ++j) {
      const Mat3 pj = eigenspace_project(m, j);
      EXPECT_EQ(eigenspace_project(pj, j), pj);
      sum += pj;
    }
    EXPECT_EQ(sum, m);
  }
}

TEST(Eigenspace, TauEigenvalues) {
  // tau(X_{mu lambda}) = X_lambda forces tau = mu^{-j} on g_j; one rotation sense achieves it for all j.
  const double pi = std::numbers::pi;
  const std::complex<double> mu = std::polar(1.0, 2 * pi / 6);
  int senses = 0;
  for (double angle : {2 * pi / 6, -2 * pi / 6}) {
    bool ok = true;
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < dim(j); ++k) {
        const CMat x = numeric(basis(j, k));
        ok = ok && is_multiple(tau(x, angle), x, std::pow(mu, -j));
      }
    senses += ok;
  }
  EXPECT_EQ(senses, 1);
}

TEST(Eigenspace, BracketGrading) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int a = 0; a < dim(i); ++a)
        for (int b = 0; b < dim(j); ++b) {
          const Mat3 br = bracket(basis(i, a), basis(j, b));
          EXPECT_EQ(eigenspace_project(br, (i + j) % 6), br) << i << " " << j;
        }
}

TEST(Connection, Entries) {
  const Connection c = build_connection(sp);
  EXPECT_EQ(c.dz.at(-1)(1, 0), (Scalar::frac(1, 2) * S2) * E(1, 2));
  EXPECT_EQ(c.dz.at(0)(1, 2), (Scalar::frac(1, 2) * I) * u0);
  EXPECT_TRUE(c.dzb.at(-1).is_zero());
  EXPECT_TRUE(c.dz.at(1).is_zero());
  EXPECT_TRUE(is_twisted(c.dz));
  EXPECT_TRUE(is_twisted(c.dzb));
}

TEST(Connection, RequiresTzitzeica) {
  EXPECT_THROW(build_connection(SystemParams(2)), std::invalid_argument);
}

TEST(Connection, Flat) {
  const LoopMatrix res = flatness_residual(sp);
  ASSERT_EQ(res.size(), 5u);
  for (const auto& [k, m] : res) EXPECT_TRUE(m.is_zero()) << "lambda^" << k << "\n" << format_mat(m);
}

TEST(Connection, DroppingTheCentralTermBreaksFlatness) {
  // Curvature of lambda^{-1}psi_{-1} + lambda psi_1 alone: the lambda^0 part is [A_{-1}, A_1] != 0.
  EXPECT_FALSE(bracket(A_minus1(sp), A_plus1(sp)).is_zero());
}

TEST(KillingField, AssemblyShape) {
  const LoopMatrix x = assemble_killing_field(u0_window(), 0);
  EXPECT_EQ(x.at(0)(1, 2), -u0);
  const DiffPoly r = u0_window().r;
  EXPECT_EQ(x.at(3)(0, 0), Scalar(-2) * r);
  EXPECT_EQ(x.at(3)(1, 1), r);
  EXPECT_EQ(x.at(3)(2, 2), r);
  EXPECT_TRUE(is_twisted(x));
  EXPECT_TRUE(is_twisted(assemble_killing_field(u0_window(), 2)));
}

TEST(KillingField, ComponentWeights) {
  const KillingChain& w = u0_window();
  const std::vector<std::pair<DiffPoly, int>> expect = {{w.a, 1}, {w.b, 2}, {w.c, 2}, {w.f, 3}, {w.r, 4},
                                                        {w.s, 5}, {w.t, 6}, {w.v, 6}, {w.a_next, 7}};
  for (const auto& [p, d] : expect) EXPECT_EQ(weight_of(p), d) << format_poly(p);
}

TEST(KillingField, VacuumWindow) {
  const auto rs = component_equations_check(sp, KillingChain{}, vacuum_window());
  ASSERT_EQ(rs.size(), 16u);
  EXPECT_TRUE(all_zero(rs));
}

TEST(KillingField, ComponentEquationsU0) {
  const auto rs = chain_component_check(sp, u0);
  ASSERT_EQ(rs.size(), 16u);
  for (const auto& r : rs) EXPECT_TRUE(r.value.is_zero()) << r.name << ": " << format_poly(r.value);
}

TEST(KillingField, ComponentEquationsV5) {
  const auto rs = chain_component_check(sp, v5_generator());
  ASSERT_EQ(rs.size(), 16u);
  for (const auto& r : rs) EXPECT_TRUE(r.value.is_zero()) << r.name << ": " << format_poly(r.value);
}

TEST(KillingField, ComponentEquationsSecondWindow) {
  const KillingChain& w0 = u0_window();
  const RecursionTrace tr1 = P_step(sp, w0.a_next * Scalar(27));
  const KillingChain w1 = killing_window(sp, tr1, Scalar::frac(1, 27));
  EXPECT_EQ(w1.a, w0.a_next);
  EXPECT_TRUE(all_zero(component_equations_check(sp, w0, w1)));
}

TEST(KillingField, MatrixEquationAgrees) {
  auto [rz, rzb] = killing_equation_residual(sp, vacuum_window(), u0_window());
  for (const auto& [k, m] : rz) EXPECT_TRUE(m.is_zero()) << "zeta, lambda^" << k;
  for (const auto& [k, m] : rzb) EXPECT_TRUE(m.is_zero()) << "zetabar, lambda^" << k;
}

TEST(KillingField, UnscaledStagesFail) {
  KillingChain w = u0_window();
  w.b = Scalar(3) * w.b;
  auto rs = component_equations_check(sp, vacuum_window(), w);
  EXPECT_EQ(rs[9].name, "babar");
  EXPECT_FALSE(rs[9].value.is_zero());
}

TEST(DOperator, Examples) {
  EXPECT_TRUE(D_operator(sp, g0(u0)).is_zero());
  const Mat3 du1 = D_operator(sp, g0(P("u1")));
  EXPECT_FALSE(du1.is_zero());
  EXPECT_EQ(du1, g0(Scalar(-4) * E_lin(sp, P("u1"))));
  EXPECT_THROW(D_operator(sp, g3(DiffPoly(1))), std::invalid_argument);
}

TEST(DOperator, DoubleBracketAndLinearization) {
  std::mt19937_64 rng(20240611);
  const DiffPoly mult = -(E(1) + Scalar(2) * E(-2));
  for (int n = 0; n < 50; ++n) {
    const DiffPoly p = tzcl::random_poly(rng);
    const Mat3 x = g0(p);
    EXPECT_EQ(double_bracket(sp, x), g0(mult * p)) << format_poly(p);
    EXPECT_EQ(D_operator(sp, x), g0(Scalar(-4) * E_lin(sp, p))) << format_poly(p);
  }
}

TEST(KillingForm, Examples) {
  EXPECT_EQ(killing_form(g0(DiffPoly(1)), g0(DiffPoly(1))), DiffPoly(-2));
  EXPECT_TRUE(killing_form(g0(DiffPoly(1)), g3(DiffPoly(1))).is_zero());
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const Mat3 x = g1(tzcl::random_poly(rng), tzcl::random_poly(rng));
    const Mat3 y = g5(tzcl::random_poly(rng), tzcl::random_poly(rng));
    EXPECT_EQ(killing_form(x, y), killing_form(y, x));
  }
}
