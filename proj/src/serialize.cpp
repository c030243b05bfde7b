#include "tzcl/serialize.hpp"

#include <stdexcept>

namespace tzcl {

nlohmann::json to_json(const DiffPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json powers = nlohmann::json::object();
    m.for_each_var([&](Generator g, unsigned e) { powers[g.name()] = e; });
    out.push_back({{"coeff", {to_string(c.re()), to_string(c.im()), to_string(c.s2()), to_string(c.is2())}},
                   {"exp_u", m.exp_u().str()},
                   {"powers", powers}});
  }
  return out;
}

DiffPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial record must be an array");
  DiffPoly out;
  for (const auto& t : j) {
    const auto& c = t.at("coeff");
    if (!c.is_array() || c.size() != 4) throw std::invalid_argument("coeff must have 4 entries");
    Scalar s(Rational(c[0].get<std::string>()), Rational(c[1].get<std::string>()),
             Rational(c[2].get<std::string>()), Rational(c[3].get<std::string>()));
    JetMonomial m = JetMonomial::exponential(QExp::from(Rational(t.at("exp_u").get<std::string>())));
    for (const auto& [name, e] : t.at("powers").items()) {
      auto g = Generator::from_name(name);
      if (!g || g->kind == GenKind::Exp) throw std::invalid_argument("unknown generator " + name);
      m = m * JetMonomial::var(*g, e.get<unsigned>());
    }
    out.add_term(m, s);
  }
  return out;
}

}  // namespace tzcl
