#include "tzcl/jet.hpp"

#include <stdexcept>

namespace tzcl {

SystemParams::SystemParams(Rational alpha) : alpha_(std::move(alpha)), memo_(std::make_shared<Memo>()) {
  alpha_.canonicalize();
  if (sgn(alpha_) == 0) throw std::invalid_argument("alpha must be nonzero");
  const QExp a = QExp::from(alpha_);
  f_ = DiffPoly::exp(-a) - DiffPoly::exp(QExp(2) * a);
  f_u_ = partial(f_, Generator::exp_u());
  f_uu_ = partial(f_u_, Generator::exp_u());
}

const DiffPoly& SystemParams::T(int i) const {
  if (i < 0) throw std::out_of_range("T: negative index");
  std::lock_guard guard(memo_->lock);
  auto& t = memo_->t;
  if (t.empty()) t.push_back(f_);
  while (static_cast<int>(t.size()) <= i) {
    const int n = static_cast<int>(t.size()) - 1;
    DiffPoly next;
    for (int j = 0; j <= n; ++j)
      next += Scalar(binomial(n, j)) * DiffPoly::u(n - j) * partial(t[j], Generator::exp_u());
    t.push_back(std::move(next));
  }
  return t[i];
}

const DiffPoly& SystemParams::Tbar(int i) const {
  T(i);
  std::lock_guard guard(memo_->lock);
  auto& tb = memo_->tbar;
  while (static_cast<int>(tb.size()) <= i) tb.push_back(conjugate(memo_->t[tb.size()]));
  return tb[i];
}

const SystemParams& tzitzeica() {
  static const SystemParams sp(Rational(-1));
  return sp;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

namespace {

// e_{-1} when bar is false, e_{-1bar} when true; the two differ by swapping the roles of
// (z, u_j, T^i) and (zb, ub_j, Tbar^i).
DiffPoly total_derivative(const SystemParams& sp, const DiffPoly& p, bool bar) {
  const GenKind own_z = bar ? GenKind::Zb : GenKind::Z;
  const GenKind own_u = bar ? GenKind::Ub : GenKind::U;
  const GenKind other_u = bar ? GenKind::U : GenKind::Ub;
  const Generator u0 = bar ? Generator::ub(0) : Generator::u(0);
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    const Generator zg{own_z, 0};
    if (unsigned k = m.exponent(zg)) out.add_term(m.with_exponent(zg, k - 1), c * Scalar(long(k)));
    if (!m.exp_u().is_zero()) {
      const JetMonomial mm = m * JetMonomial::var(u0);
      out.add_term(mm, c * Scalar(m.exp_u().rational()));
    }
    const int own_order = bar ? m.ub_order() : m.u_order();
    for (int i = 0; i <= own_order; ++i) {
      const Generator g{own_u, i};
      if (unsigned e = m.exponent(g)) {
        const JetMonomial mm = m.with_exponent(g, e - 1) * JetMonomial::var(Generator{own_u, i + 1});
        out.add_term(mm, c * Scalar(long(e)));
      }
    }
    const int other_order = bar ? m.u_order() : m.ub_order();
    for (int i = 0; i <= other_order; ++i) {
      const Generator g{other_u, i};
      if (unsigned e = m.exponent(g)) {
        const DiffPoly& t = bar ? sp.T(i) : sp.Tbar(i);
        out += t.mul_monomial(m.with_exponent(g, e - 1), -c * Scalar(long(e)));
      }
    }
  }
  return out;
}

}  // namespace

DiffPoly e_minus1(const SystemParams& sp, const DiffPoly& p) {
  return total_derivative(sp, p, false);
}

DiffPoly e_minus1bar(const SystemParams& sp, const DiffPoly& p) {
  return total_derivative(sp, p, true);
}

DiffPoly E_lin(const SystemParams& sp, const DiffPoly& p) {
  return e_minus1bar(sp, e_minus1(sp, p)) + sp.f_u() * p;
}

}  // namespace tzcl
