#include "tzcl/diffpoly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace tzcl {

Generator Generator::conj() const {
  switch (kind) {
    case GenKind::Z: return zb();
    case GenKind::Zb: return z();
    case GenKind::U: return ub(index);
    case GenKind::Ub: return u(index);
    case GenKind::Exp: return exp_u();
  }
  return *this;
}

std::string Generator::name() const {
  switch (kind) {
    case GenKind::Z: return "z";
    case GenKind::Zb: return "zb";
    case GenKind::U: return "u" + std::to_string(index);
    case GenKind::Ub: return "ub" + std::to_string(index);
    case GenKind::Exp: return "u";
  }
  return "?";
}

std::optional<Generator> Generator::from_name(std::string_view s) {
  if (s == "z") return z();
  if (s == "zb") return zb();
  if (s == "u") return exp_u();
  auto digits = [](std::string_view d) -> std::optional<int> {
    if (d.empty() || d.size() > 6) return std::nullopt;
    int v = 0;
    for (char c : d) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (s.starts_with("ub")) {
    if (auto j = digits(s.substr(2))) return ub(*j);
    return std::nullopt;
  }
  if (s.starts_with("u")) {
    if (auto j = digits(s.substr(1))) return u(*j);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- JetMonomial

JetMonomial JetMonomial::var(Generator g, unsigned power) {
  if (g.kind == GenKind::Exp) throw std::invalid_argument("JetMonomial::var: use exponential()");
  return JetMonomial().with_exponent(g, power);
}

JetMonomial JetMonomial::exponential(QExp q) {
  JetMonomial m;
  m.exp_ = q;
  return m;
}

unsigned JetMonomial::exponent(Generator g) const {
  switch (g.kind) {
    case GenKind::Z: return z_;
    case GenKind::Zb: return zb_;
    case GenKind::U: return g.index < static_cast<int>(u_.size()) ? u_[g.index] : 0;
    case GenKind::Ub: return g.index < static_cast<int>(ub_.size()) ? ub_[g.index] : 0;
    case GenKind::Exp: return 0;
  }
  return 0;
}

unsigned JetMonomial::jet_degree() const {
  unsigned d = 0;
  for (auto e : u_) d += e;
  for (auto e : ub_) d += e;
  return d;
}

bool JetMonomial::is_one() const {
  return z_ == 0 && zb_ == 0 && u_.empty() && ub_.empty() && exp_.is_zero();
}

JetMonomial JetMonomial::with_exponent(Generator g, unsigned e) const {
  JetMonomial m = *this;
  switch (g.kind) {
    case GenKind::Z: m.z_ = e; break;
    case GenKind::Zb: m.zb_ = e; break;
    case GenKind::U:
      if (static_cast<int>(m.u_.size()) <= g.index) m.u_.resize(g.index + 1, 0);
      m.u_[g.index] = e;
      break;
    case GenKind::Ub:
      if (static_cast<int>(m.ub_.size()) <= g.index) m.ub_.resize(g.index + 1, 0);
      m.ub_[g.index] = e;
      break;
    case GenKind::Exp: throw std::invalid_argument("with_exponent: exp_u has no integer exponent");
  }
  m.trim();
  m.recompute_weight();
  return m;
}

JetMonomial JetMonomial::with_exp(QExp q) const {
  JetMonomial m = *this;
  m.exp_ = q;
  return m;
}

JetMonomial JetMonomial::conj() const {
  JetMonomial m;
  m.z_ = zb_;
  m.zb_ = z_;
  m.u_ = ub_;
  m.ub_ = u_;
  m.exp_ = exp_;
  m.weight_ = -weight_;
  return m;
}

void JetMonomial::trim() {
  while (!u_.empty() && u_.back() == 0) u_.pop_back();
  while (!ub_.empty() && ub_.back() == 0) ub_.pop_back();
}

void JetMonomial::recompute_weight() {
  int w = -static_cast<int>(z_) + static_cast<int>(zb_);
  for (std::size_t j = 0; j < u_.size(); ++j) w += static_cast<int>((j + 1) * u_[j]);
  for (std::size_t j = 0; j < ub_.size(); ++j) w -= static_cast<int>((j + 1) * ub_[j]);
  weight_ = w;
}

JetMonomial operator*(const JetMonomial& a, const JetMonomial& b) {
  JetMonomial m = a;
  m.z_ += b.z_;
  m.zb_ += b.zb_;
  if (m.u_.size() < b.u_.size()) m.u_.resize(b.u_.size(), 0);
  for (std::size_t j = 0; j < b.u_.size(); ++j) m.u_[j] += b.u_[j];
  if (m.ub_.size() < b.ub_.size()) m.ub_.resize(b.ub_.size(), 0);
  for (std::size_t j = 0; j < b.ub_.size(); ++j) m.ub_[j] += b.ub_[j];
  m.exp_ = a.exp_ + b.exp_;
  m.weight_ = a.weight_ + b.weight_;
  return m;
}

bool operator==(const JetMonomial& a, const JetMonomial& b) {
  return a.z_ == b.z_ && a.zb_ == b.zb_ && a.u_ == b.u_ && a.ub_ == b.ub_ && a.exp_ == b.exp_;
}

std::string JetMonomial::str() const {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  if (!exp_.is_zero()) append("E[" + exp_.str() + "]");
  for_each_var([&](Generator g, unsigned e) {
    append(e == 1 ? g.name() : g.name() + "^" + std::to_string(e));
  });
  return out.empty() ? "1" : out;
}

namespace {

// -1 if a sorts first, +1 if b sorts first, 0 if equal.
int compare_desc(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool CanonicalLess::operator()(const JetMonomial& a, const JetMonomial& b) const {
  if (a.weight_ != b.weight_) return a.weight_ > b.weight_;
  if (int c = compare_desc(a.ub_, b.ub_)) return c < 0;
  if (int c = compare_desc(a.u_, b.u_)) return c < 0;
  if (a.zb_ != b.zb_) return a.zb_ > b.zb_;
  if (a.z_ != b.z_) return a.z_ > b.z_;
  return b.exp_ < a.exp_;
}

// ------------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(JetMonomial(), c);
}

DiffPoly DiffPoly::monomial(const JetMonomial& m, const Scalar& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

DiffPoly DiffPoly::gen(Generator g, unsigned power) {
  return monomial(JetMonomial::var(g, power));
}

DiffPoly DiffPoly::exp(QExp q, const Scalar& c) {
  return monomial(JetMonomial::exponential(q), c);
}

Scalar DiffPoly::coefficient(const JetMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void DiffPoly::add_term(const JetMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  return a.terms_ == b.terms_;
}

DiffPoly DiffPoly::mul_monomial(const JetMonomial& m, const Scalar& c) const {
  DiffPoly r;
  if (c.is_zero()) return r;
  for (const auto& [mm, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, v * c);
  return r;
}

DiffPoly DiffPoly::pow(unsigned n) const {
  DiffPoly r(1);
  for (unsigned k = 0; k < n; ++k) r = r * *this;
  return r;
}

int DiffPoly::u_order() const {
  int o = -1;
  for (const auto& [m, c] : terms_) o = std::max(o, m.u_order());
  return o;
}

int DiffPoly::ub_order() const {
  int o = -1;
  for (const auto& [m, c] : terms_) o = std::max(o, m.ub_order());
  return o;
}

unsigned DiffPoly::max_jet_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.jet_degree());
  return d;
}

unsigned DiffPoly::z_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.z_degree());
  return d;
}

unsigned DiffPoly::zb_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.zb_degree());
  return d;
}

bool DiffPoly::is_pure_u_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.first.is_pure_u() && t.first.exp_u().is_zero();
  });
}

bool DiffPoly::has_exponentials() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return !t.first.exp_u().is_zero(); });
}

std::string DiffPoly::str() const {
  return format_poly(*this);
}

std::ostream& operator<<(std::ostream& os, const DiffPoly& p) {
  return os << format_poly(p);
}

DiffPoly conjugate(const DiffPoly& p) {
  DiffPoly r;
  for (const auto& [m, c] : p.terms()) r.add_term(m.conj(), c.conj());
  return r;
}

std::optional<int> weight_of(const DiffPoly& p) {
  if (p.is_zero()) return std::nullopt;
  const int w = p.terms().begin()->first.weight();
  for (const auto& [m, c] : p.terms())
    if (m.weight() != w) return std::nullopt;
  return w;
}

DiffPoly partial(const DiffPoly& p, Generator g) {
  DiffPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (g.kind == GenKind::Exp) {
      if (!m.exp_u().is_zero()) r.add_term(m, c * Scalar(m.exp_u().rational()));
      continue;
    }
    const unsigned e = m.exponent(g);
    if (e == 0) continue;
    r.add_term(m.with_exponent(g, e - 1), c * Scalar(static_cast<long>(e)));
  }
  return r;
}

std::complex<double> eval_numeric(const DiffPoly& p, const Assignment& values, double u) {
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t = c.to_complex() * std::exp(m.exp_u().value() * u);
    m.for_each_var([&](Generator g, unsigned e) {
      auto it = values.find(g);
      if (it == values.end()) throw MissingAssignment("no value assigned to " + g.name());
      t *= std::pow(it->second, static_cast<int>(e));
    });
    sum += t;
  }
  return sum;
}

}  // namespace tzcl
