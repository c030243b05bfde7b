// Text grammar for DiffPoly.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ['^' digits]
//   primary := digits ['/' digits] | 'i' | 's2' | 'z' | 'zb' | 'u'digits
//            | 'ub'digits | 'E[' ['-'] digits ['/' digits] ']' | '(' expr ')'

#include <cctype>

#include "tzcl/diffpoly.hpp"

namespace tzcl {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  DiffPoly parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    DiffPoly p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational rational_literal() {
    Rational q(digits());
    if (peek() == '/') {
      ++pos_;
      std::size_t at = pos_;
      Rational d(digits());
      if (sgn(d) == 0) throw ParseError("zero denominator", at);
      q /= d;
    }
    q.canonicalize();
    return q;
  }

  DiffPoly expr() {
    DiffPoly acc;
    bool negate = false;
    skip_ws();
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    DiffPoly t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  DiffPoly factor() {
    if (accept('-')) return -factor();
    DiffPoly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      std::string d = digits();
      if (d.size() > 4) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }

  DiffPoly primary() {
    skip_ws();
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      DiffPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return DiffPoly(Scalar(rational_literal()));
    if (c == 'E') {
      ++pos_;
      expect('[');
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip_ws();
      Rational q = rational_literal();
      if (neg) q = -q;
      expect(']');
      return DiffPoly::exp(QExp::from(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view word = s_.substr(start, pos_ - start);
      if (word == "i") return DiffPoly(Scalar::i());
      if (word == "s2") return DiffPoly(Scalar::sqrt2());
      auto g = Generator::from_name(word);
      if (!g || g->kind == GenKind::Exp)
        throw ParseError("unknown symbol '" + std::string(word) + "'", at);
      return DiffPoly::gen(*g);
    }
    if (at_end()) throw ParseError("unexpected end of input", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Splits a coefficient into a sign and the text of its magnitude.
std::pair<bool, std::string> signed_coefficient(const Scalar& c) {
  if (c.component_count() != 1) return {false, c.str()};
  const bool neg = sgn(c.re()) < 0 || sgn(c.im()) < 0 || sgn(c.s2()) < 0 || sgn(c.is2()) < 0;
  return {neg, (neg ? -c : c).str()};
}

}  // namespace

DiffPoly parse_poly(std::string_view text) {
  return Parser(text).parse();
}

std::string format_poly(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    auto [neg, mag] = signed_coefficient(c);
    std::string body;
    if (m.is_one()) {
      body = mag;
    } else if (mag == "1") {
      body = m.str();
    } else {
      body = mag + "*" + m.str();
    }
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace tzcl
