#include <cctype>

#include "tzcl/form.hpp"

namespace tzcl {

namespace {

std::string wedge_text(const Wedge& w) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += "^";
    out += s.name();
  }
  return out;
}

// Splits "text" into [sign, body] pieces at top-level '+'/'-'.
std::vector<std::pair<std::size_t, std::string_view>> split_terms(std::string_view s) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && (c == '+' || c == '-') && i > 0) {
      std::size_t k = i;
      while (k > 0 && std::isspace(static_cast<unsigned char>(s[k - 1]))) --k;
      const char prev = k > 0 ? s[k - 1] : '\0';
      if (prev == '*' || prev == '^' || prev == '(' || prev == '\0') continue;
      out.emplace_back(start, s.substr(start, i - start));
      start = i;
    }
  }
  out.emplace_back(start, s.substr(start));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Wedge> as_wedge(std::string_view factor) {
  Wedge w;
  std::size_t start = 0;
  for (;;) {
    std::size_t hat = factor.find('^', start);
    auto name = trim(factor.substr(start, hat == std::string_view::npos ? std::string_view::npos : hat - start));
    auto s = CoframeSymbol::from_name(name);
    if (!s) return std::nullopt;
    w.push_back(*s);
    if (hat == std::string_view::npos) return w;
    start = hat + 1;
  }
}

}  // namespace

std::string format_form(const Form& w) {
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : w.terms()) {
    std::string body = format_poly(c);
    bool neg = false;
    if (c.size() == 1 && body.front() == '-') {
      neg = true;
      body.erase(0, 1);
    }
    if (!k.empty()) {
      if (c.size() > 1) {
        body = "(" + body + ")*" + wedge_text(k);
      } else if (body == "1") {
        body = wedge_text(k);
      } else {
        body += "*" + wedge_text(k);
      }
    } else if (c.size() > 1) {
      body = "(" + body + ")";
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string format_form(const OneFormModI& w) {
  return format_form(w.to_form());
}

Form parse_form(std::string_view text) {
  if (trim(text).empty()) throw ParseError("empty form", 0);
  Form out;
  bool first = true;
  for (auto [offset, piece] : split_terms(text)) {
    std::string_view body = trim(piece);
    bool neg = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
      neg = body.front() == '-';
      body = trim(body.substr(1));
    }
    if (body.empty()) throw ParseError("missing term", offset);
    DiffPoly coeff(1);
    Wedge w;
    int depth = 0;
    std::size_t start = 0;
    auto take = [&](std::size_t end) {
      std::string_view factor = trim(body.substr(start, end - start));
      if (auto s = as_wedge(factor)) {
        w.insert(w.end(), s->begin(), s->end());
      } else {
        try {
          coeff = coeff * parse_poly(factor);
        } catch (const ParseError& e) {
          throw ParseError("bad factor '" + std::string(factor) + "'", offset + e.position());
        }
      }
    };
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(' || body[i] == '[') ++depth;
      if (body[i] == ')' || body[i] == ']') --depth;
      if (depth == 0 && body[i] == '*') {
        take(i);
        start = i + 1;
      }
    }
    take(body.size());
    Form term = Form::wedge_of(w, neg ? -coeff : coeff);
    if (first) {
      out = Form(static_cast<int>(w.size()));
      first = false;
    }
    if (static_cast<int>(w.size()) != out.degree()) throw ParseError("mixed form degrees", offset);
    out += term;
  }
  return out;
}

}  // namespace tzcl
