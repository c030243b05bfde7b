#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tzcl/scalar.hpp"

namespace tzcl {

enum class GenKind : std::uint8_t { Z, Zb, U, Ub, Exp };

/// A polynomial generator: z, zb, u_j, ub_j, or the symbol u (only through e^{qu}).
struct Generator {
  GenKind kind = GenKind::U;
  int index = 0;

  static Generator z() { return {GenKind::Z, 0}; }
  static Generator zb() { return {GenKind::Zb, 0}; }
  static Generator u(int j) { return {GenKind::U, j}; }
  static Generator ub(int j) { return {GenKind::Ub, j}; }
  /// The undifferentiated field u; partial() with respect to it acts on e^{qu}.
  static Generator exp_u() { return {GenKind::Exp, 0}; }

  Generator conj() const;
  std::string name() const;
  /// Inverse of name(); also accepts "u" for exp_u().
  static std::optional<Generator> from_name(std::string_view s);

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

struct CanonicalLess;

/// e^{q u} times a monomial in z, zb, u_j, ub_j.
class JetMonomial {
 public:
  JetMonomial() = default;
  static JetMonomial var(Generator g, unsigned power = 1);
  static JetMonomial exponential(QExp q);

  unsigned exponent(Generator g) const;
  const QExp& exp_u() const { return exp_; }
  /// -deg z + deg zb + sum (j+1) deg u_j - sum (j+1) deg ub_j.
  int weight() const { return weight_; }
  /// Total degree in the jet variables u_j, ub_j.
  unsigned jet_degree() const;
  /// Highest j with u_j present, -1 if none.
  int u_order() const { return static_cast<int>(u_.size()) - 1; }
  int ub_order() const { return static_cast<int>(ub_.size()) - 1; }
  unsigned z_degree() const { return z_; }
  unsigned zb_degree() const { return zb_; }
  bool is_one() const;
  bool is_pure_u() const { return z_ == 0 && zb_ == 0 && ub_.empty(); }
  bool is_pure_ub() const { return z_ == 0 && zb_ == 0 && u_.empty(); }

  JetMonomial with_exponent(Generator g, unsigned e) const;
  JetMonomial with_exp(QExp q) const;
  JetMonomial conj() const;

  /// Calls fn(Generator, exponent) for every variable with nonzero exponent,
  /// in descending print order.
  template <class Fn>
  void for_each_var(Fn&& fn) const {
    for (int j = ub_order(); j >= 0; --j)
      if (ub_[j]) fn(Generator::ub(j), ub_[j]);
    for (int j = u_order(); j >= 0; --j)
      if (u_[j]) fn(Generator::u(j), u_[j]);
    if (zb_) fn(Generator::zb(), zb_);
    if (z_) fn(Generator::z(), z_);
  }

  friend JetMonomial operator*(const JetMonomial& a, const JetMonomial& b);
  friend bool operator==(const JetMonomial& a, const JetMonomial& b);

  std::string str() const;

 private:
  friend struct CanonicalLess;
  void trim();
  void recompute_weight();

  unsigned z_ = 0;
  unsigned zb_ = 0;
  std::vector<std::uint32_t> u_;
  std::vector<std::uint32_t> ub_;
  QExp exp_;
  int weight_ = 0;
};

/// Canonical term order: weight descending, then lexicographic from the
/// highest variable (ub_k > ... > ub0 > u_k > ... > u0 > zb > z), larger
/// exponent first, then e^{qu} exponent descending.
struct CanonicalLess {
  bool operator()(const JetMonomial& a, const JetMonomial& b) const;
};

/// Exponential-differential polynomial: finite sum of Scalar * JetMonomial.
class DiffPoly {
 public:
  using Terms = std::map<JetMonomial, Scalar, CanonicalLess>;

  DiffPoly() = default;
  DiffPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(long c) : DiffPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static DiffPoly monomial(const JetMonomial& m, const Scalar& c = Scalar(1));
  static DiffPoly gen(Generator g, unsigned power = 1);
  static DiffPoly u(int j) { return gen(Generator::u(j)); }
  static DiffPoly ub(int j) { return gen(Generator::ub(j)); }
  static DiffPoly z() { return gen(Generator::z()); }
  static DiffPoly zb() { return gen(Generator::zb()); }
  /// c * e^{q u}.
  static DiffPoly exp(QExp q, const Scalar& c = Scalar(1));

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const JetMonomial& m) const;

  /// Adds c*m, dropping the entry if it cancels.
  void add_term(const JetMonomial& m, const Scalar& c);

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const Scalar& c);
  DiffPoly operator-() const;

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(DiffPoly a, const Scalar& c) { return a *= c; }
  friend DiffPoly operator*(const Scalar& c, DiffPoly a) { return a *= c; }
  friend DiffPoly operator*(DiffPoly a, long c) { return a *= Scalar(c); }
  friend DiffPoly operator*(long c, DiffPoly a) { return a *= Scalar(c); }
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  DiffPoly mul_monomial(const JetMonomial& m, const Scalar& c = Scalar(1)) const;
  DiffPoly pow(unsigned n) const;

  int u_order() const;
  int ub_order() const;
  unsigned max_jet_degree() const;
  unsigned z_degree() const;
  unsigned zb_degree() const;
  bool is_pure_u_polynomial() const;
  bool has_exponentials() const;

  std::string str() const;

 private:
  Terms terms_;
};

DiffPoly conjugate(const DiffPoly& p);

/// Common weight of all monomials; nullopt if inhomogeneous or zero.
std::optional<int> weight_of(const DiffPoly& p);

/// Formal partial derivative; g == Generator::exp_u() differentiates e^{qu}.
DiffPoly partial(const DiffPoly& p, Generator g);

class MissingAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<Generator, std::complex<double>>;

/// Floating evaluation; throws MissingAssignment if a generator is unassigned.
std::complex<double> eval_numeric(const DiffPoly& p, const Assignment& values, double u);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the algebra text grammar, e.g. "u4 + 5*u2*u1 - E[1/2]*ub0^2".
DiffPoly parse_poly(std::string_view text);
/// Canonical text; parse_poly(format_poly(p)) == p.
std::string format_poly(const DiffPoly& p);

std::ostream& operator<<(std::ostream& os, const DiffPoly& p);

}  // namespace tzcl
