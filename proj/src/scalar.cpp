#include "tzcl/scalar.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace tzcl {

std::string to_string(const Rational& q) {
  return q.get_str();
}

Scalar::Scalar(Rational re, Rational im, Rational s2, Rational is2)
    : re_(std::move(re)), im_(std::move(im)), s2_(std::move(s2)), is2_(std::move(is2)) {
  re_.canonicalize();
  im_.canonicalize();
  s2_.canonicalize();
  is2_.canonicalize();
}

bool Scalar::is_zero() const {
  return sgn(re_) == 0 && sgn(im_) == 0 && sgn(s2_) == 0 && sgn(is2_) == 0;
}

bool Scalar::is_one() const {
  return re_ == 1 && sgn(im_) == 0 && sgn(s2_) == 0 && sgn(is2_) == 0;
}

bool Scalar::is_rational() const {
  return sgn(im_) == 0 && sgn(s2_) == 0 && sgn(is2_) == 0;
}

int Scalar::component_count() const {
  return (sgn(re_) != 0) + (sgn(im_) != 0) + (sgn(s2_) != 0) + (sgn(is2_) != 0);
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  r.im_ = -r.im_;
  r.is2_ = -r.is2_;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.re_ = -re_;
  r.im_ = -im_;
  r.s2_ = -s2_;
  r.is2_ = -is2_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  s2_ += o.s2_;
  is2_ += o.is2_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  s2_ -= o.s2_;
  is2_ -= o.is2_;
  return *this;
}

// Write x = A + B*sqrt2 with A = re + im*i, B = s2 + is2*i in Q(i).
Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.is_rational()) {
    re_ *= o.re_;
    im_ *= o.re_;
    s2_ *= o.re_;
    is2_ *= o.re_;
    return *this;
  }
  // A1A2 + 2 B1B2
  Rational ar = re_ * o.re_ - im_ * o.im_ + 2 * (s2_ * o.s2_ - is2_ * o.is2_);
  Rational ai = re_ * o.im_ + im_ * o.re_ + 2 * (s2_ * o.is2_ + is2_ * o.s2_);
  // A1B2 + B1A2
  Rational br = re_ * o.s2_ - im_ * o.is2_ + s2_ * o.re_ - is2_ * o.im_;
  Rational bi = re_ * o.is2_ + im_ * o.s2_ + s2_ * o.im_ + is2_ * o.re_;
  re_ = std::move(ar);
  im_ = std::move(ai);
  s2_ = std::move(br);
  is2_ = std::move(bi);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
  if (is_rational()) return Scalar(Rational(1) / re_);
  // 1/(A + B sqrt2) = (A - B sqrt2) / (A^2 - 2B^2), with N = A^2 - 2B^2 in Q(i).
  Rational nr = re_ * re_ - im_ * im_ - 2 * (s2_ * s2_ - is2_ * is2_);
  Rational ni = 2 * re_ * im_ - 4 * s2_ * is2_;
  Rational norm = nr * nr + ni * ni;
  // 1/N = conj(N)/|N|^2
  Scalar inv_n(nr / norm, -ni / norm, 0, 0);
  Scalar conj2(re_, im_, -s2_, -is2_);
  return conj2 * inv_n;
}

std::complex<double> Scalar::to_complex() const {
  const double r2 = std::sqrt(2.0);
  return {re_.get_d() + r2 * s2_.get_d(), im_.get_d() + r2 * is2_.get_d()};
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.re_ == b.re_ && a.im_ == b.im_ && a.s2_ == b.s2_ && a.is2_ == b.is2_;
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  struct Part {
    const Rational* c;
    const char* unit;
  };
  const Part parts[4] = {{&re_, ""}, {&im_, "i"}, {&s2_, "s2"}, {&is2_, "i*s2"}};
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (sgn(*p.c) == 0) continue;
    Rational mag = abs(*p.c);
    std::string body;
    if (*p.unit == '\0') {
      body = to_string(mag);
    } else if (mag == 1) {
      body = p.unit;
    } else {
      body = to_string(mag) + "*" + p.unit;
    }
    if (first) {
      out += (sgn(*p.c) < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (sgn(*p.c) < 0 ? " - " : " + ") + body;
    }
  }
  if (component_count() > 1) out = "(" + out + ")";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

QExp::QExp(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::domain_error("QExp: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

QExp QExp::from(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p())
    throw std::overflow_error("exponent out of range: " + to_string(q));
  return {c.get_num().get_si(), c.get_den().get_si()};
}

std::string QExp::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

QExp operator+(const QExp& a, const QExp& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

QExp operator-(const QExp& a, const QExp& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

QExp operator*(const QExp& a, const QExp& b) {
  return {a.num * b.num, a.den * b.den};
}

}  // namespace tzcl
