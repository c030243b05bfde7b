#include "tzcl/linsolve.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <set>
#include <stdexcept>
#include <thread>

namespace tzcl {

void LinearSystem::add_row(Row row, Scalar b) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first < 0 || it->first >= columns) throw std::out_of_range("LinearSystem: column index");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  rows.push_back(std::move(row));
  rhs.push_back(std::move(b));
}

namespace {

using Row = LinearSystem::Row;

// dst -= a * src
void axpy(Row& dst, Scalar& dst_b, const Scalar& a, const Row& src, const Scalar& src_b) {
  for (const auto& [c, v] : src) {
    auto [it, inserted] = dst.try_emplace(c, -(a * v));
    if (!inserted) {
      it->second -= a * v;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
  dst_b -= a * src_b;
}

}  // namespace

std::optional<SolutionSpace> linear_solve_exact(const LinearSystem& sys) {
  struct Pivot {
    Row row;
    Scalar b;
  };
  std::map<int, Pivot> piv;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    Row cur = sys.rows[r];
    Scalar b = sys.rhs[r];
    while (!cur.empty()) {
      auto p = piv.find(cur.begin()->first);
      if (p == piv.end()) break;
      const Scalar lead = cur.begin()->second;
      axpy(cur, b, lead, p->second.row, p->second.b);
    }
    if (cur.empty()) {
      if (!b.is_zero()) return std::nullopt;
      continue;
    }
    const int col = cur.begin()->first;
    const Scalar inv = cur.begin()->second.inverse();
    for (auto& [c, v] : cur) v *= inv;
    b *= inv;
    piv.emplace(col, Pivot{std::move(cur), std::move(b)});
  }
  // Back substitution, highest pivot first.
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    Row& row = it->second.row;
    std::vector<int> hits;
    for (const auto& [c, v] : row)
      if (c != it->first && piv.count(c)) hits.push_back(c);
    for (int c : hits) {
      const Scalar a = row.at(c);
      const Pivot& other = piv.at(c);
      axpy(row, it->second.b, a, other.row, other.b);
    }
  }
  SolutionSpace out;
  out.rank = static_cast<int>(piv.size());
  out.particular.assign(sys.columns, Scalar());
  for (const auto& [c, p] : piv) {
    out.particular[c] = p.b;
    out.pivots.push_back(c);
  }
  for (int f = 0; f < sys.columns; ++f) {
    if (piv.count(f)) continue;
    std::vector<Scalar> v(sys.columns, Scalar());
    v[f] = 1;
    for (const auto& [c, p] : piv) {
      auto e = p.row.find(f);
      if (e != p.row.end()) v[c] = -e->second;
    }
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

const char* to_string(AnsatzClass c) {
  switch (c) {
    case AnsatzClass::PureU: return "pure-u";
    case AnsatzClass::PureUb: return "pure-ub";
    case AnsatzClass::ExpU: return "exp-u";
    case AnsatzClass::ExpUb: return "exp-ub";
    case AnsatzClass::General: return "general";
  }
  return "?";
}

namespace {

// Monomials in one family of jets with sum of (j+1)*e_j == w, order <= max_order (if >= 0).
void partitions(int w, int max_part, bool bar, JetMonomial cur, std::vector<JetMonomial>& out) {
  if (w == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(w, max_part); part >= 1; --part) {
    const Generator g = bar ? Generator::ub(part - 1) : Generator::u(part - 1);
    partitions(w - part, part, bar, cur * JetMonomial::var(g), out);
  }
}

// Monomials in one family with order <= max_order and degree <= max_degree.
void bounded_monomials(int max_order, unsigned max_degree, bool bar, std::vector<JetMonomial>& out) {
  std::function<void(int, unsigned, JetMonomial)> rec = [&](int j, unsigned left, JetMonomial cur) {
    if (j > max_order) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      const Generator g = bar ? Generator::ub(j) : Generator::u(j);
      rec(j + 1, left - e, e ? cur * JetMonomial::var(g, e) : cur);
    }
  };
  rec(0, max_degree, JetMonomial());
}

std::vector<QExp> exponent_lattice(const Rational& alpha, int window) {
  std::vector<QExp> out;
  for (int k = -window; k <= window; ++k) out.push_back(QExp::from(Rational(k) * alpha / 2));
  return out;
}

}  // namespace

std::vector<JetMonomial> enumerate_monomials(int d, AnsatzClass cls, const Rational& alpha,
                                             const AnsatzBounds& bounds) {
  std::set<JetMonomial, CanonicalLess> found;
  const bool bar = cls == AnsatzClass::PureUb || cls == AnsatzClass::ExpUb;
  switch (cls) {
    case AnsatzClass::PureU:
    case AnsatzClass::PureUb:
    case AnsatzClass::ExpU:
    case AnsatzClass::ExpUb: {
      const int w = bar ? -d : d;
      if (w < 0) break;
      std::vector<JetMonomial> base;
      partitions(w, std::max(w, 1), bar, JetMonomial(), base);
      const bool with_exp = cls == AnsatzClass::ExpU || cls == AnsatzClass::ExpUb;
      for (const auto& m : base) {
        if (!with_exp) {
          found.insert(m);
          continue;
        }
        for (QExp q : exponent_lattice(alpha, bounds.exp_window)) found.insert(m.with_exp(q));
      }
      break;
    }
    case AnsatzClass::General: {
      std::vector<JetMonomial> us, ubs;
      bounded_monomials(bounds.max_u_order, bounds.max_degree, false, us);
      bounded_monomials(bounds.max_ub_order, bounds.max_degree, true, ubs);
      const auto exps = exponent_lattice(alpha, bounds.exp_window);
      for (unsigned a = 0; a <= bounds.max_z_degree; ++a)
        for (unsigned b = 0; b <= bounds.max_zb_degree; ++b) {
          JetMonomial zz = JetMonomial::var(Generator::z(), a) * JetMonomial::var(Generator::zb(), b);
          for (const auto& mu : us)
            for (const auto& mb : ubs) {
              if (mu.jet_degree() + mb.jet_degree() > bounds.max_degree) continue;
              JetMonomial m = zz * mu * mb;
              if (m.weight() != d) continue;
              for (QExp q : exps) found.insert(m.with_exp(q));
            }
        }
      break;
    }
  }
  if (!bounds.include_constant) {
    found.erase(JetMonomial());
  }
  return {found.begin(), found.end()};
}

Ansatz make_ansatz(int d, AnsatzClass cls, const Rational& alpha, const AnsatzBounds& bounds) {
  return {d, cls, enumerate_monomials(d, cls, alpha, bounds)};
}

DiffPoly Ansatz::combine(const std::vector<Scalar>& coeffs) const {
  DiffPoly out;
  for (std::size_t i = 0; i < monomials.size() && i < coeffs.size(); ++i) out.add_term(monomials[i], coeffs[i]);
  return out;
}

namespace {

using LinearMap = std::function<DiffPoly(const DiffPoly&)>;

// Images of every column under every map, computed in parallel; order of results is fixed.
std::vector<std::vector<DiffPoly>> images(const std::vector<JetMonomial>& cols, const std::vector<LinearMap>& maps) {
  std::vector<std::vector<DiffPoly>> out(cols.size(), std::vector<DiffPoly>(maps.size()));
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  auto job = [&](std::size_t start) {
    for (std::size_t c = start; c < cols.size(); c += workers)
      for (std::size_t k = 0; k < maps.size(); ++k) out[c][k] = maps[k](DiffPoly::monomial(cols[c]));
  };
  if (cols.size() < 16 || workers == 1) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t k = 0; k < maps.size(); ++k) out[c][k] = maps[k](DiffPoly::monomial(cols[c]));
    return out;
  }
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) tasks.push_back(std::async(std::launch::async, job, w));
  for (auto& t : tasks) t.get();
  return out;
}

// Rows indexed by (map, monomial of the image); the right-hand side comes from targets.
LinearSystem assemble(const std::vector<JetMonomial>& cols, const std::vector<LinearMap>& maps,
                      const std::vector<DiffPoly>& targets) {
  auto img = images(cols, maps);
  std::vector<std::map<JetMonomial, std::size_t, CanonicalLess>> index(maps.size());
  LinearSystem sys(static_cast<int>(cols.size()));
  auto row_of = [&](std::size_t k, const JetMonomial& m) -> std::size_t {
    auto [it, inserted] = index[k].try_emplace(m, sys.rows.size());
    if (inserted) {
      sys.rows.emplace_back();
      sys.rhs.emplace_back();
    }
    return it->second;
  };
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t k = 0; k < maps.size(); ++k)
      for (const auto& [m, v] : img[c][k].terms()) sys.rows[row_of(k, m)][static_cast<int>(c)] = v;
  for (std::size_t k = 0; k < targets.size(); ++k)
    for (const auto& [m, v] : targets[k].terms()) sys.rhs[row_of(k, m)] = v;
  return sys;
}

DiffPoly monic(const DiffPoly& p) {
  if (p.is_zero()) return p;
  return p * p.terms().begin()->second.inverse();
}

}  // namespace

std::vector<DiffPoly> kernel_basis(const SystemParams& sp, int d) {
  if (d == 0) throw std::invalid_argument("kernel_basis: weight 0 is not a pure class");
  Ansatz a = make_ansatz(d, d > 0 ? AnsatzClass::PureU : AnsatzClass::PureUb, sp.alpha());
  LinearSystem sys = assemble(a.monomials, {[&](const DiffPoly& p) { return E_lin(sp, p); }}, {});
  auto sol = linear_solve_exact(sys);
  std::vector<DiffPoly> out;
  for (const auto& v : sol->nullspace) out.push_back(monic(a.combine(v)));
  return out;
}

namespace {

std::optional<DiffPoly> try_integrate(const SystemParams& sp, const OneFormModI& w, int d, AnsatzClass cls,
                                      int window) {
  AnsatzBounds b;
  b.exp_window = window;
  b.include_constant = d != 0;
  b.max_u_order = w.P.u_order() - 1;
  b.max_ub_order = w.Q.ub_order() - 1;
  b.max_degree = std::max(w.P.max_jet_degree(), w.Q.max_jet_degree());
  b.max_z_degree = std::max(w.P.z_degree(), w.Q.z_degree());
  b.max_zb_degree = std::max(w.P.zb_degree(), w.Q.zb_degree());
  Ansatz a = make_ansatz(d, cls, sp.alpha(), b);
  LinearSystem sys = assemble(a.monomials,
                              {[&](const DiffPoly& p) { return e_minus1(sp, p); },
                               [&](const DiffPoly& p) { return e_minus1bar(sp, p); }},
                              {w.P, w.Q});
  auto sol = linear_solve_exact(sys);
  if (!sol) return std::nullopt;
  return a.combine(sol->particular);
}

bool has_kind(const DiffPoly& p, GenKind k) {
  for (const auto& [m, c] : p.terms()) {
    switch (k) {
      case GenKind::Z: if (m.z_degree()) return true; break;
      case GenKind::Zb: if (m.zb_degree()) return true; break;
      case GenKind::U: if (m.u_order() >= 0) return true; break;
      case GenKind::Ub: if (m.ub_order() >= 0) return true; break;
      case GenKind::Exp: if (!m.exp_u().is_zero()) return true; break;
    }
  }
  return false;
}

std::vector<AnsatzClass> candidate_classes(const OneFormModI& w) {
  const bool z = has_kind(w.P, GenKind::Z) || has_kind(w.Q, GenKind::Z) || has_kind(w.P, GenKind::Zb) ||
                 has_kind(w.Q, GenKind::Zb);
  if (!z && !has_kind(w.P, GenKind::Ub) && w.Q.ub_order() <= 0)
    return {AnsatzClass::PureU, AnsatzClass::ExpU, AnsatzClass::General};
  if (!z && !has_kind(w.Q, GenKind::U) && w.P.u_order() <= 0)
    return {AnsatzClass::PureUb, AnsatzClass::ExpUb, AnsatzClass::General};
  return {AnsatzClass::General};
}

}  // namespace

std::optional<DiffPoly> integrate_oneform(const SystemParams& sp, const OneFormModI& w,
                                          const IntegrationOptions& opts) {
  if (w.is_zero()) return DiffPoly();
  std::optional<int> d = opts.weight ? opts.weight : weight_of(w);
  if (!d) throw std::invalid_argument("integrate_oneform: form is not weighted-homogeneous");
  std::vector<AnsatzClass> classes = opts.cls ? std::vector<AnsatzClass>{*opts.cls} : candidate_classes(w);
  std::vector<int> windows{opts.exp_window};
  if (opts.widen) windows.push_back(2 * opts.exp_window);
  for (int window : windows)
    for (AnsatzClass cls : classes) {
      const bool uses_window = cls != AnsatzClass::PureU && cls != AnsatzClass::PureUb;
      if (!uses_window && window != opts.exp_window) continue;
      if (auto g = try_integrate(sp, w, *d, cls, window)) return g;
    }
  return std::nullopt;
}

}  // namespace tzcl
