#include "tzcl/form.hpp"

#include <algorithm>
#include <stdexcept>

namespace tzcl {

int CoframeSymbol::weight() const {
  switch (kind) {
    case Coframe::Zeta: return -1;
    case Coframe::ZetaBar: return 1;
    case Coframe::Eta: return index;
    case Coframe::EtaBar: return -index;
  }
  return 0;
}

CoframeSymbol CoframeSymbol::conj() const {
  switch (kind) {
    case Coframe::Zeta: return zetabar();
    case Coframe::ZetaBar: return zeta();
    case Coframe::Eta: return index == 0 ? *this : etabar(index);
    case Coframe::EtaBar: return eta(index);
  }
  return *this;
}

std::string CoframeSymbol::name() const {
  switch (kind) {
    case Coframe::Zeta: return "Z";
    case Coframe::ZetaBar: return "Zb";
    case Coframe::Eta: return "h" + std::to_string(index);
    case Coframe::EtaBar: return "hb" + std::to_string(index);
  }
  return "?";
}

std::optional<CoframeSymbol> CoframeSymbol::from_name(std::string_view s) {
  if (s == "Z") return zeta();
  if (s == "Zb") return zetabar();
  auto number = [](std::string_view d) -> std::optional<int> {
    if (d.empty() || d.size() > 6 || !std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    return std::stoi(std::string(d));
  };
  if (s.starts_with("hb")) {
    auto i = number(s.substr(2));
    if (i && *i >= 1) return etabar(*i);
    return std::nullopt;
  }
  if (s.starts_with("h")) {
    if (auto i = number(s.substr(1))) return eta(*i);
  }
  return std::nullopt;
}

namespace {

// Sorts in place; returns the permutation sign, or 0 if a symbol repeats.
int sort_with_sign(Wedge& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return sign;
}

}  // namespace

Form Form::function(const DiffPoly& p) {
  Form f(0);
  f.add_term({}, p);
  return f;
}

Form Form::symbol(CoframeSymbol s, const DiffPoly& coeff) {
  return wedge_of({s}, coeff);
}

Form Form::wedge_of(std::vector<CoframeSymbol> s, const DiffPoly& coeff) {
  Form f(static_cast<int>(s.size()));
  if (s.size() == 1 && s[0].kind == Coframe::EtaBar && s[0].index < 1)
    throw std::invalid_argument("etabar index must be >= 1");
  int sign = sort_with_sign(s);
  if (sign != 0) f.add_term(s, sign > 0 ? coeff : -coeff);
  return f;
}

DiffPoly Form::coefficient(const Wedge& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? DiffPoly() : it->second;
}

void Form::add_term(const Wedge& w, const DiffPoly& c) {
  if (static_cast<int>(w.size()) != degree_) throw std::invalid_argument("Form::add_term: degree mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form& Form::operator+=(const Form& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw std::invalid_argument("Form: adding forms of different degree");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  return *this += -o;
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

Form operator*(const DiffPoly& c, const Form& w) {
  Form r(w.degree());
  if (c.is_zero()) return r;
  for (const auto& [k, v] : w.terms()) r.add_term(k, c * v);
  return r;
}

int Form::level() const {
  int k = 0;
  for (const auto& [w, c] : terms_) {
    for (const auto& s : w)
      if (s.in_ideal()) k = std::max(k, s.index);
    k = std::max({k, c.u_order() + 1, c.ub_order() + 1});
  }
  return k;
}

Form wedge(const Form& a, const Form& b) {
  Form r(a.degree() + b.degree());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Wedge w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      int sign = sort_with_sign(w);
      if (sign == 0) continue;
      DiffPoly c = ca * cb;
      r.add_term(w, sign > 0 ? c : -c);
    }
  return r;
}

Form conjugate(const Form& w) {
  Form r(w.degree());
  for (const auto& [k, c] : w.terms()) {
    Wedge s;
    for (const auto& x : k) s.push_back(x.conj());
    r += Form::wedge_of(s, conjugate(c));
  }
  return r;
}

std::optional<int> weight_of(const Form& w) {
  std::optional<int> out;
  for (const auto& [k, c] : w.terms()) {
    auto cw = weight_of(c);
    if (!cw) return std::nullopt;
    int total = *cw;
    for (const auto& s : k) total += s.weight();
    if (out && *out != total) return std::nullopt;
    out = total;
  }
  return out;
}

Form d_function(const SystemParams& sp, const DiffPoly& p) {
  Form r(1);
  r += Form::symbol(CoframeSymbol::zeta(), e_minus1(sp, p));
  r += Form::symbol(CoframeSymbol::zetabar(), e_minus1bar(sp, p));
  r += Form::symbol(CoframeSymbol::eta(0), partial(p, Generator::exp_u()));
  for (int i = 0; i <= p.u_order(); ++i)
    r += Form::symbol(CoframeSymbol::eta(i + 1), partial(p, Generator::u(i)));
  for (int i = 0; i <= p.ub_order(); ++i)
    r += Form::symbol(CoframeSymbol::etabar(i + 1), partial(p, Generator::ub(i)));
  return r;
}

Form tau(const SystemParams& sp, int i) {
  Form r(1);
  for (int j = 0; j <= i; ++j)
    r += Form::symbol(CoframeSymbol::eta(i - j), Scalar(binomial(i, j)) * partial(sp.T(j), Generator::exp_u()));
  return r;
}

namespace {

Form d_symbol(const SystemParams& sp, CoframeSymbol s) {
  const auto Z = Form::symbol(CoframeSymbol::zeta());
  const auto Zb = Form::symbol(CoframeSymbol::zetabar());
  switch (s.kind) {
    case Coframe::Zeta:
    case Coframe::ZetaBar: return Form(2);
    case Coframe::Eta:
      if (s.index == 0)
        return wedge(Z, Form::symbol(CoframeSymbol::eta(1))) + wedge(Zb, Form::symbol(CoframeSymbol::etabar(1)));
      return wedge(Z, Form::symbol(CoframeSymbol::eta(s.index + 1))) + wedge(tau(sp, s.index - 1), Zb);
    case Coframe::EtaBar:
      return wedge(Zb, Form::symbol(CoframeSymbol::etabar(s.index + 1))) +
             wedge(conjugate(tau(sp, s.index - 1)), Z);
  }
  return Form(2);
}

}  // namespace

Form d_form(const SystemParams& sp, const Form& w) {
  Form r(w.degree() + 1);
  for (const auto& [k, c] : w.terms()) {
    r += wedge(d_function(sp, c), Form::wedge_of(k));
    for (std::size_t m = 0; m < k.size(); ++m) {
      Wedge left(k.begin(), k.begin() + m), right(k.begin() + m + 1, k.end());
      Form piece = wedge(wedge(Form::wedge_of(left, c), d_symbol(sp, k[m])), Form::wedge_of(right));
      r += (m % 2 == 0) ? piece : -piece;
    }
  }
  return r;
}

Form reduce_mod_ideal(const Form& w) {
  Form r(w.degree());
  for (const auto& [k, c] : w.terms())
    if (std::none_of(k.begin(), k.end(), [](const CoframeSymbol& s) { return s.in_ideal(); })) r.add_term(k, c);
  return r;
}

Form J_apply(const Form& w) {
  if (w.degree() != 1) throw std::invalid_argument("J_apply: degree-1 form required");
  Form r(1);
  const DiffPoly i(Scalar::i()), mi(-Scalar::i());
  for (const auto& [k, c] : w.terms()) {
    const CoframeSymbol s = k[0];
    if (s.kind == Coframe::Eta && s.index == 0) {
      r.add_term(k, c);
    } else if (s.kind == Coframe::Zeta || s.kind == Coframe::Eta) {
      r.add_term(k, i * c);
    } else {
      r.add_term(k, mi * c);
    }
  }
  return r;
}

Form OneFormModI::to_form() const {
  return Form::symbol(CoframeSymbol::zeta(), P) + Form::symbol(CoframeSymbol::zetabar(), Q);
}

OneFormModI OneFormModI::from_form(const Form& w) {
  if (w.degree() != 1 && !w.is_zero()) throw std::invalid_argument("OneFormModI: degree-1 form required");
  return {w.coefficient({CoframeSymbol::zeta()}), w.coefficient({CoframeSymbol::zetabar()})};
}

std::optional<int> weight_of(const OneFormModI& w) {
  return weight_of(w.to_form());
}

}  // namespace tzcl
