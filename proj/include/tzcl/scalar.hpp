#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace tzcl {

using Rational = mpq_class;

/// Canonical text of a rational, "p" or "p/q".
std::string to_string(const Rational& q);

/// Exact element of Q(i, sqrt2), stored as re + im*i + s2*sqrt2 + is2*i*sqrt2.
///
/// The ring is a field; inverse() is exact. sqrt(-2) is taken to be i*sqrt2.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im, Rational s2, Rational is2);

  static Scalar i() { return {0, 1, 0, 0}; }
  static Scalar sqrt2() { return {0, 0, 1, 0}; }
  /// i*sqrt2, the square root of -2 used throughout.
  static Scalar sqrt_m2() { return {0, 0, 0, 1}; }
  static Scalar frac(long num, long den) { return Scalar(Rational(num, den)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  const Rational& s2() const { return s2_; }
  const Rational& is2() const { return is2_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when only the rational component is nonzero.
  bool is_rational() const;
  /// Number of nonzero components.
  int component_count() const;

  Scalar conj() const;
  Scalar inverse() const;
  std::complex<double> to_complex() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Text in the algebra grammar: "3/2", "-i*s2", "(1 + i)".
  std::string str() const;

 private:
  Rational re_, im_, s2_, is2_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Small exact rational for exponents of e^{q u}; always normalized, den > 0.
struct QExp {
  std::int64_t num = 0;
  std::int64_t den = 1;

  QExp() = default;
  QExp(std::int64_t n, std::int64_t d = 1);  // NOLINT(google-explicit-constructor)
  static QExp from(const Rational& q);

  Rational rational() const { return Rational(num, den); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  std::string str() const;

  friend QExp operator+(const QExp& a, const QExp& b);
  friend QExp operator-(const QExp& a, const QExp& b);
  friend QExp operator*(const QExp& a, const QExp& b);
  QExp operator-() const { return {-num, den}; }
  friend bool operator==(const QExp& a, const QExp& b) = default;
  friend auto operator<=>(const QExp& a, const QExp& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

}  // namespace tzcl
