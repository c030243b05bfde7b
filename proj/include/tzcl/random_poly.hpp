#pragma once

#include <random>

#include "tzcl/diffpoly.hpp"

namespace tzcl {

/// Shape of a seeded random polynomial (property suites, the verify command).
struct PolyShape {
  int max_order = 2;
  int terms = 4;
  int max_degree = 3;
  bool conjugates = true;
  bool exponentials = true;
  bool coordinates = true;
};

inline Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  std::uniform_int_distribution<int> kind(0, 3);
  Rational a(num(rng), den(rng));
  a.canonicalize();
  if (sgn(a) == 0) a = 1;
  switch (kind(rng)) {
    case 0: return Scalar(a);
    case 1: return Scalar(a) * Scalar::i();
    case 2: return Scalar(a) + Scalar::sqrt2();
    default: return Scalar(a) * Scalar::sqrt_m2() + 1;
  }
}

inline DiffPoly random_poly(std::mt19937_64& rng, const PolyShape& s = {}) {
  std::uniform_int_distribution<int> order(0, s.max_order);
  std::uniform_int_distribution<int> deg(1, s.max_degree);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> expq(-4, 4);
  DiffPoly out;
  for (int t = 0; t < s.terms; ++t) {
    JetMonomial m;
    const int factors = deg(rng);
    for (int f = 0; f < factors; ++f) {
      const int c = coin(rng);
      Generator g = Generator::u(order(rng));
      if (c == 1 && s.conjugates) g = Generator::ub(order(rng));
      if (c == 2 && s.coordinates) g = (coin(rng) % 2) ? Generator::z() : Generator::zb();
      m = m * JetMonomial::var(g);
    }
    if (s.exponentials) m = m.with_exp(QExp(expq(rng), 2));
    out.add_term(m, random_scalar(rng));
  }
  return out;
}

}  // namespace tzcl
