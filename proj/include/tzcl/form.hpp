#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tzcl/jet.hpp"

namespace tzcl {

enum class Coframe : std::uint8_t { Zeta, ZetaBar, Eta, EtaBar };

/// One of zeta, zetabar, eta_i (i >= 0), etabar_i (i >= 1).
/// Ordered zeta < zetabar < eta_0 < eta_1 < ... < etabar_1 < ...
struct CoframeSymbol {
  Coframe kind = Coframe::Zeta;
  int index = 0;

  static CoframeSymbol zeta() { return {Coframe::Zeta, 0}; }
  static CoframeSymbol zetabar() { return {Coframe::ZetaBar, 0}; }
  static CoframeSymbol eta(int i) { return {Coframe::Eta, i}; }
  static CoframeSymbol etabar(int i) { return {Coframe::EtaBar, i}; }

  int weight() const;
  bool in_ideal() const { return kind == Coframe::Eta || kind == Coframe::EtaBar; }
  CoframeSymbol conj() const;
  /// Text name: Z, Zb, h0, h1, ..., hb1, ...
  std::string name() const;
  static std::optional<CoframeSymbol> from_name(std::string_view s);

  friend auto operator<=>(const CoframeSymbol&, const CoframeSymbol&) = default;
};

/// Strictly increasing list of coframe symbols.
using Wedge = std::vector<CoframeSymbol>;

/// Exterior form with DiffPoly coefficients on the canonical wedge basis.
class Form {
 public:
  using Terms = std::map<Wedge, DiffPoly>;

  explicit Form(int degree = 0) : degree_(degree) {}
  static Form function(const DiffPoly& p);
  static Form symbol(CoframeSymbol s, const DiffPoly& coeff = DiffPoly(1));
  /// coeff * s[0] ^ s[1] ^ ...; the symbols may be in any order (sign is applied).
  static Form wedge_of(std::vector<CoframeSymbol> s, const DiffPoly& coeff = DiffPoly(1));

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  DiffPoly coefficient(const Wedge& w) const;
  void add_term(const Wedge& w, const DiffPoly& c);

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form operator-() const;
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const DiffPoly& c, const Form& w);
  friend bool operator==(const Form& a, const Form& b) = default;

  /// Highest jet index among eta/etabar symbols and coefficients.
  int level() const;

 private:
  int degree_;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
Form conjugate(const Form& w);
/// Common weight of all terms (coefficient weight plus symbol weights).
std::optional<int> weight_of(const Form& w);

/// dp = e_{-1}p zeta + e_{-1bar}p zetabar + p_u eta_0 + sum p_{u_{i-1}} eta_i + sum p_{ub_{i-1}} etabar_i.
Form d_function(const SystemParams& sp, const DiffPoly& p);
/// tau^i = sum_j C(i,j) T^j_u eta_{i-j}.
Form tau(const SystemParams& sp, int i);
/// Exterior derivative from the prolonged structure equations.
Form d_form(const SystemParams& sp, const Form& w);
/// Drops every term containing eta_i or etabar_i.
Form reduce_mod_ideal(const Form& w);
/// i on zeta, eta_i; -i on zetabar, etabar_i; identity on eta_0.
Form J_apply(const Form& w);

/// P zeta + Q zetabar, a one-form modulo the ideal.
struct OneFormModI {
  DiffPoly P, Q;

  Form to_form() const;
  /// Reduces mod the ideal and reads off the zeta, zetabar components.
  static OneFormModI from_form(const Form& w);
  bool is_zero() const { return P.is_zero() && Q.is_zero(); }

  friend OneFormModI operator+(const OneFormModI& a, const OneFormModI& b) { return {a.P + b.P, a.Q + b.Q}; }
  friend OneFormModI operator-(const OneFormModI& a, const OneFormModI& b) { return {a.P - b.P, a.Q - b.Q}; }
  friend OneFormModI operator*(const DiffPoly& c, const OneFormModI& a) { return {c * a.P, c * a.Q}; }
  friend bool operator==(const OneFormModI&, const OneFormModI&) = default;
};

std::optional<int> weight_of(const OneFormModI& w);

/// Text: "u1*Z - (E[1] - E[-2])*Zb + h1", wedges joined with '^'.
std::string format_form(const Form& w);
std::string format_form(const OneFormModI& w);
Form parse_form(std::string_view text);

}  // namespace tzcl
