#include "tzcl/killing.hpp"

#include <sstream>
#include <stdexcept>

namespace tzcl {

namespace {

const Scalar I = Scalar::i();
const Scalar S2 = Scalar::sqrt2();
const Scalar INV_S2 = Scalar::sqrt2().inverse();
const Scalar HALF = Scalar::frac(1, 2);

DiffPoly E(long num, long den = 1) { return DiffPoly::exp(QExp(num, den)); }

void require_tzitzeica(const SystemParams& sp) {
  if (sp.alpha() != Rational(-1)) throw std::invalid_argument("the su(3) connection needs alpha = -1");
}

int mod6(int k) { return ((k % 6) + 6) % 6; }

// Basis of sl(3) adapted to the eigenspaces: indices 0 | 1 2 | 3 | 4 | 5 | 6 7.
constexpr int kFirst[7] = {0, 1, 3, 4, 5, 6, 8};

Mat3 basis_element(int k) {
  const DiffPoly one(1), zero;
  switch (k) {
    case 0: return g0(one);
    case 1: return g1(one, zero);
    case 2: return g1(zero, one);
    case 3: return g2(one);
    case 4: return g3(one);
    case 5: return g4(one);
    case 6: return g5(one, zero);
    default: return g5(zero, one);
  }
}

// Inverse of the trace-form Gram matrix of the adapted basis.
const std::vector<std::vector<Scalar>>& gram_inverse() {
  static const auto inv = [] {
    constexpr int n = 8;
    std::vector<Mat3> b;
    for (int k = 0; k < n; ++k) b.push_back(basis_element(k));
    std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) g[k][l] = trace(b[k] * b[l]).coefficient(JetMonomial());
    std::vector<std::vector<Scalar>> out(n, std::vector<Scalar>(n));
    for (int col = 0; col < n; ++col) {
      LinearSystem sys(n);
      for (int r = 0; r < n; ++r) {
        LinearSystem::Row row;
        for (int c = 0; c < n; ++c)
          if (!g[r][c].is_zero()) row[c] = g[r][c];
        sys.add_row(row, r == col ? Scalar(1) : Scalar());
      }
      auto sol = linear_solve_exact(sys);
      if (!sol || sol->rank != n) throw std::logic_error("degenerate trace form");
      for (int r = 0; r < n; ++r) out[r][col] = sol->particular[r];
    }
    return out;
  }();
  return inv;
}

Mat3 entrywise(const Mat3& m, const auto& fn) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = fn(m(i, j));
  return out;
}

Mat3 block(const LoopMatrix& x, int k) {
  auto it = x.find(k);
  return it == x.end() ? Mat3() : it->second;
}

}  // namespace

Mat3 Mat3::scalar_matrix(std::array<Scalar, 9> entries) {
  Mat3 m;
  for (int k = 0; k < 9; ++k) m.e_[k] = DiffPoly(entries[k]);
  return m;
}

bool Mat3::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

Mat3& Mat3::operator+=(const Mat3& o) {
  for (int k = 0; k < 9; ++k) e_[k] += o.e_[k];
  return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
  for (int k = 0; k < 9; ++k) e_[k] -= o.e_[k];
  return *this;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
  return out;
}

Mat3 operator*(const DiffPoly& c, const Mat3& a) {
  return entrywise(a, [&](const DiffPoly& p) { return c * p; });
}

Mat3 bracket(const Mat3& a, const Mat3& b) { return a * b - b * a; }

DiffPoly trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

Mat3 e_minus1(const SystemParams& sp, const Mat3& m) {
  return entrywise(m, [&](const DiffPoly& p) { return tzcl::e_minus1(sp, p); });
}

Mat3 e_minus1bar(const SystemParams& sp, const Mat3& m) {
  return entrywise(m, [&](const DiffPoly& p) { return tzcl::e_minus1bar(sp, p); });
}

std::string format_mat(const Mat3& m) {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << "[";
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << format_poly(m(i, j));
    os << "]\n";
  }
  return os.str();
}

Mat3 g0(const DiffPoly& a) {
  Mat3 m;
  m(1, 2) = -a;
  m(2, 1) = a;
  return m;
}

Mat3 g1(const DiffPoly& b, const DiffPoly& c) {
  Mat3 m;
  m(0, 1) = -b;
  m(0, 2) = -I * b;
  m(1, 0) = b;
  m(1, 1) = c;
  m(1, 2) = -I * c;
  m(2, 0) = I * b;
  m(2, 1) = -I * c;
  m(2, 2) = -c;
  return m;
}

Mat3 g2(const DiffPoly& f) {
  Mat3 m;
  m(0, 1) = f;
  m(0, 2) = -I * f;
  m(1, 0) = f;
  m(2, 0) = -I * f;
  return m;
}

Mat3 g3(const DiffPoly& r) {
  Mat3 m;
  m(0, 0) = Scalar(-2) * r;
  m(1, 1) = r;
  m(2, 2) = r;
  return m;
}

Mat3 g4(const DiffPoly& s) {
  Mat3 m;
  m(0, 1) = s;
  m(0, 2) = I * s;
  m(1, 0) = s;
  m(2, 0) = I * s;
  return m;
}

Mat3 g5(const DiffPoly& t, const DiffPoly& v) {
  Mat3 m;
  m(0, 1) = -t;
  m(0, 2) = I * t;
  m(1, 0) = t;
  m(1, 1) = v;
  m(1, 2) = I * v;
  m(2, 0) = -I * t;
  m(2, 1) = I * v;
  m(2, 2) = -v;
  return m;
}

std::vector<DiffPoly> eigen_coordinates(const Mat3& m, int j) {
  if (j < 0 || j > 5) throw std::invalid_argument("eigenspace index must be in 0..5");
  const auto& ginv = gram_inverse();
  std::vector<DiffPoly> pairing(8);
  for (int l = 0; l < 8; ++l) pairing[l] = trace(m * basis_element(l));
  std::vector<DiffPoly> out;
  for (int k = kFirst[j]; k < kFirst[j + 1]; ++k) {
    DiffPoly c;
    for (int l = 0; l < 8; ++l)
      if (!ginv[k][l].is_zero()) c += ginv[k][l] * pairing[l];
    out.push_back(c);
  }
  return out;
}

Mat3 eigenspace_project(const Mat3& m, int j) {
  auto c = eigen_coordinates(m, j);
  Mat3 out;
  for (int k = kFirst[j]; k < kFirst[j + 1]; ++k) out += c[k - kFirst[j]] * basis_element(k);
  return out;
}

bool is_twisted(const LoopMatrix& x) {
  for (const auto& [k, m] : x)
    if (eigenspace_project(m, mod6(k)) != m) return false;
  return true;
}

Mat3 A_minus1(const SystemParams& sp) {
  require_tzitzeica(sp);
  return g5(HALF * S2 * E(1, 2), HALF * I * E(-1));
}

Mat3 A_plus1(const SystemParams& sp) {
  require_tzitzeica(sp);
  return g1(HALF * S2 * E(1, 2), HALF * I * E(-1));
}

Connection build_connection(const SystemParams& sp) {
  require_tzitzeica(sp);
  Connection c;
  c.dz[-1] = A_minus1(sp);
  c.dz[0] = g0(-(HALF * I) * DiffPoly::u(0));
  c.dz[1] = Mat3();
  c.dzb[-1] = Mat3();
  c.dzb[0] = g0((HALF * I) * DiffPoly::ub(0));
  c.dzb[1] = A_plus1(sp);
  return c;
}

LoopMatrix flatness_residual(const SystemParams& sp) {
  const Connection c = build_connection(sp);
  auto form_of = [&](int k, int i, int j) {
    return Form::symbol(CoframeSymbol::zeta(), block(c.dz, k)(i, j)) +
           Form::symbol(CoframeSymbol::zetabar(), block(c.dzb, k)(i, j));
  };
  const Wedge zz = Form::wedge_of({CoframeSymbol::zeta(), CoframeSymbol::zetabar()}).terms().begin()->first;
  const DiffPoly zz_sign = Form::wedge_of({CoframeSymbol::zeta(), CoframeSymbol::zetabar()}).terms().begin()->second;
  LoopMatrix out;
  for (int k = -2; k <= 2; ++k) {
    Mat3 res;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Form acc(2);
        if (k >= -1 && k <= 1) acc += d_form(sp, form_of(k, i, j));
        for (int a = -1; a <= 1; ++a) {
          const int b = k - a;
          if (b < -1 || b > 1) continue;
          for (int m = 0; m < 3; ++m) acc += wedge(form_of(a, i, m), form_of(b, m, j));
        }
        Form red = reduce_mod_ideal(acc);
        for (const auto& [w, coeff] : red.terms())
          if (w != zz) throw std::logic_error("unexpected wedge term in curvature");
        res(i, j) = zz_sign * red.coefficient(zz);
      }
    out[k] = res;
  }
  return out;
}

KillingChain killing_window(const SystemParams& sp, const RecursionTrace& tr, const Scalar& scale) {
  const Scalar third = Scalar::frac(1, 3), ninth = Scalar::frac(1, 9), th27 = Scalar::frac(1, 27);
  KillingChain w;
  w.a = scale * tr.a;
  w.b = (scale * third) * tr.b;
  w.f = (scale * third) * tr.f;
  w.r = (scale * ninth) * tr.r;
  w.s = (scale * ninth) * tr.s;
  w.t = (scale * th27) * tr.t;
  w.a_next = (scale * th27) * tr.a_next;
  w.c = HALF * (tzcl::e_minus1(sp, w.a) + (I * S2) * w.b);
  w.v = INV_S2 * (I * (E(-1) * w.t) + tzcl::e_minus1(sp, w.s));
  return w;
}

KillingChain vacuum_window() {
  KillingChain w;
  w.t = DiffPoly(I * INV_S2);
  w.v = -HALF * E(-1);
  w.a_next = DiffPoly::u(0);
  return w;
}

LoopMatrix assemble_killing_field(const KillingChain& w, int n) {
  LoopMatrix x;
  const int k = 6 * n;
  x[k] = g0(w.a);
  x[k + 1] = g1(E(-1, 2) * w.b, E(1) * w.c);
  x[k + 2] = g2(w.f);
  x[k + 3] = g3(w.r);
  x[k + 4] = g4(E(1, 2) * w.s);
  x[k + 5] = g5(E(1, 2) * w.t, w.v);
  return x;
}

std::pair<LoopMatrix, LoopMatrix> killing_equation_residual(const SystemParams& sp, const KillingChain& prev,
                                                            const KillingChain& cur) {
  const Connection c = build_connection(sp);
  LoopMatrix x = assemble_killing_field(cur, 0);
  x[-1] = assemble_killing_field(prev, -1).at(-1);
  x[6] = g0(cur.a_next);
  LoopMatrix rz, rzb;
  for (int k = 0; k <= 5; ++k) {
    Mat3 z = e_minus1(sp, x.at(k));
    Mat3 zb = e_minus1bar(sp, x.at(k));
    for (int j = -1; j <= 1; ++j) {
      z += bracket(block(c.dz, j), x.at(k - j));
      zb += bracket(block(c.dzb, j), x.at(k - j));
    }
    rz[k] = z;
    rzb[k] = zb;
  }
  return {rz, rzb};
}

std::vector<NamedResidual> component_equations_check(const SystemParams& sp, const KillingChain& prev,
                                                     const KillingChain& cur) {
  auto D = [&](const DiffPoly& p) { return tzcl::e_minus1(sp, p); };
  auto Db = [&](const DiffPoly& p) { return tzcl::e_minus1bar(sp, p); };
  const DiffPoly u0 = DiffPoly::u(0), ub0 = DiffPoly::ub(0);
  const auto& [a, b, c, f, r, s, t, v, an] = cur;
  return {
      {"abc", D(a) + (I * S2) * b - 2 * c},
      {"bf", D(b) - u0 * b + I * (E(-1, 2) * f)},
      {"cf", D(c) + 2 * u0 * c + S2 * (E(-1, 2) * f)},
      {"f", D(f) + HALF * u0 * f - (Scalar(3) * INV_S2) * (E(1, 2) * r)},
      {"r", D(r) + S2 * (E(1) * s)},
      {"stv", D(s) - S2 * v + I * (E(-1) * t)},
      {"ta", D(t) + u0 * t - (I * INV_S2) * an},
      {"va", D(v) - u0 * v - E(-1) * an},
      {"abcbar", Db(a) - (I * S2) * (E(1) * prev.t) + 2 * (E(-1) * prev.v)},
      {"babar", Db(b) + (I * INV_S2) * (E(1) * a)},
      {"cfbar", Db(c) + E(-2) * a},
      {"fbar", Db(f) - HALF * ub0 * f + I * (E(-3, 2) * b) - S2 * (E(3, 2) * c)},
      {"rbar", Db(r) + S2 * (E(1, 2) * f)},
      {"stvbar", Db(s) + ub0 * s - (Scalar(3) * INV_S2) * r},
      {"tabar", Db(t) + I * (E(-1) * s)},
      {"vabar", Db(v) + ub0 * v + S2 * (E(1) * s)},
  };
}

std::vector<NamedResidual> chain_component_check(const SystemParams& sp, const DiffPoly& seed) {
  const KillingChain w0 = killing_window(sp, P_step(sp, seed));
  if (seed == DiffPoly::u(0)) return component_equations_check(sp, vacuum_window(), w0);
  // abcbar at window 1 only needs a^1 and the t, v of window 0.
  KillingChain w1;
  w1.a = w0.a_next;
  auto out = component_equations_check(sp, KillingChain{}, w0);
  for (auto& [name, value] : component_equations_check(sp, w0, w1))
    if (name == "abcbar") {
      out[8] = {name, value};
    }
  return out;
}

Mat3 double_bracket(const SystemParams& sp, const Mat3& p) {
  return bracket(A_minus1(sp), bracket(A_plus1(sp), p));
}

Mat3 D_operator(const SystemParams& sp, const Mat3& p) {
  if (eigenspace_project(p, 0) != p) throw std::invalid_argument("D_operator expects a g0-valued input");
  Mat3 lap = DiffPoly(-4) * e_minus1bar(sp, e_minus1(sp, p));
  return lap + DiffPoly(4) * double_bracket(sp, p);
}

DiffPoly killing_form(const Mat3& x, const Mat3& y) { return trace(x * y); }

}  // namespace tzcl
