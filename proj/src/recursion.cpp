#include "tzcl/recursion.hpp"

namespace tzcl {

IntegrationFailed::IntegrationFailed(const std::string& stage, const OneFormModI& form)
    : std::runtime_error("integration failed at stage " + stage + ": " + format_form(form)), stage_(stage) {}

std::vector<std::pair<std::string, DiffPoly>> RecursionTrace::stages() const {
  return {{"a", a}, {"b", b}, {"f", f}, {"r", r}, {"s", s}, {"t", t}, {"a'", a_next}};
}

namespace {

const Scalar I = Scalar::i();
const Scalar S2 = Scalar::sqrt2();
const Scalar INV_S2 = Scalar::sqrt2().inverse();

DiffPoly E(long num, long den = 1) {
  return DiffPoly::exp(QExp(num, den));
}

void check_input(const SystemParams& sp, const DiffPoly& a, std::initializer_list<int> excluded, const char* who) {
  if (sp.alpha() != -1) throw std::invalid_argument(std::string(who) + ": only alpha = -1 is supported");
  auto d = weight_of(a);
  if (!d) throw std::invalid_argument(std::string(who) + ": input is zero or not weighted-homogeneous");
  if (*d % 2 == 0) throw std::invalid_argument(std::string(who) + ": weight must be odd");
  for (int x : excluded)
    if (*d == x) throw std::invalid_argument(std::string(who) + ": weight " + std::to_string(x) + " is excluded");
  if (!E_lin(sp, a).is_zero()) throw std::invalid_argument(std::string(who) + ": input is not in the kernel of E");
}

DiffPoly integrate_or_throw(const SystemParams& sp, const OneFormModI& w, const char* stage,
                            const IntegrationOptions& opts) {
  auto g = integrate_oneform(sp, w, opts);
  if (!g) throw IntegrationFailed(stage, w);
  return *g;
}

}  // namespace

RecursionTrace P_step(const SystemParams& sp, const DiffPoly& a, const IntegrationOptions& opts) {
  check_input(sp, a, {-1, -5}, "P_step");
  auto D = [&](const DiffPoly& p) { return e_minus1(sp, p); };
  const DiffPoly u0 = DiffPoly::u(0);
  RecursionTrace tr;
  tr.weight = *weight_of(a);
  tr.a = a;
  const DiffPoly a1 = D(a);
  tr.alpha = {(I * INV_S2) * (D(a1) + 2 * u0 * a1), (Scalar(-3) * I * INV_S2) * (E(1) * a)};
  tr.b = integrate_or_throw(sp, tr.alpha, "b", opts);
  tr.f = I * (E(1, 2) * (D(tr.b) - u0 * tr.b));
  tr.r = S2 * (E(-1, 2) * (D(tr.f) + Scalar::frac(1, 2) * u0 * tr.f));
  tr.s = -INV_S2 * (E(-1) * D(tr.r));
  const DiffPoly s1 = D(tr.s);
  tr.beta = {I * (E(1) * (D(s1) - u0 * s1)), Scalar(-3) * I * (E(-1) * tr.s)};
  tr.t = integrate_or_throw(sp, tr.beta, "t", opts);
  tr.a_next = -Scalar::sqrt_m2() * (D(tr.t) + u0 * tr.t);
  return tr;
}

// Each stage carries a factor 1/3 relative to the dzbar Killing equations, so that it inverts
// the corresponding stage of P_step and N(u_d + ...) = u_{d-6} + ...
RecursionTrace N_step(const SystemParams& sp, const DiffPoly& a, const IntegrationOptions& opts) {
  check_input(sp, a, {1, 5}, "N_step");
  auto Db = [&](const DiffPoly& p) { return e_minus1bar(sp, p); };
  const DiffPoly ub0 = DiffPoly::ub(0);
  const Scalar third = Scalar::frac(1, 3);
  RecursionTrace tr;
  tr.weight = *weight_of(a);
  tr.a = a;
  const DiffPoly a1 = Db(a);
  tr.alpha = {(I * INV_S2) * (E(1) * a), -(third * I * INV_S2) * (Db(a1) + 2 * ub0 * a1)};
  tr.t = E(-1) * integrate_or_throw(sp, tr.alpha, "t", opts);
  tr.s = third * I * (E(1) * Db(tr.t));
  tr.r = third * S2 * (Db(tr.s) + ub0 * tr.s);
  tr.f = -third * INV_S2 * (E(-1, 2) * Db(tr.r));
  const DiffPoly g = E(-1, 2) * tr.f;
  const DiffPoly g1 = Db(g);
  tr.beta = {-I * (E(-3, 2) * tr.f), third * I * (E(1) * (Db(g1) - ub0 * g1))};
  tr.b = E(1) * integrate_or_throw(sp, tr.beta, "b", opts);
  tr.a_next = third * S2 * I * (E(-1) * Db(tr.b));
  return tr;
}

std::vector<DiffPoly> chain_generate(const SystemParams& sp, const DiffPoly& seed, int steps,
                                     const IntegrationOptions& opts) {
  if (steps < 0) throw std::invalid_argument("chain_generate: steps must be >= 0");
  if (!E_lin(sp, seed).is_zero()) throw std::invalid_argument("chain_generate: seed is not in the kernel of E");
  std::vector<DiffPoly> out{seed};
  for (int k = 0; k < steps; ++k) {
    DiffPoly next = P_step(sp, out.back(), opts).a_next;
    if (!E_lin(sp, next).is_zero()) throw std::logic_error("chain_generate: output left the kernel of E");
    out.push_back(std::move(next));
  }
  return out;
}

DiffPoly v5_generator() {
  return parse_poly("u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5");
}

}  // namespace tzcl
