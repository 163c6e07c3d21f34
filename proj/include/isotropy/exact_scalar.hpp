#pragma once

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "isotropy/errors.hpp"

namespace isotropy {

/// Arbitrary-precision rational. GMP keeps results of arithmetic canonical
/// (positive denominator, coprime parts); values built from a numerator and
/// denominator go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {

// Gaussian rational re + im*i.
struct Gaussian {
  Rational re, im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  friend Gaussian operator+(const Gaussian& x, const Gaussian& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend Gaussian operator-(const Gaussian& x, const Gaussian& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend Gaussian operator*(const Gaussian& x, const Gaussian& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (sgn(x.im) == 0 && sgn(y.im) == 0) return {x.re * y.re, Rational(0)};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const Gaussian& x, const Gaussian& y) {
    return x.re == y.re && x.im == y.im;
  }
  Gaussian operator-() const { return {-re, -im}; }
  Gaussian conj() const { return {re, -im}; }
  Gaussian scaled(const Rational& q) const { return {re * q, im * q}; }

  Gaussian inverse() const {
    if (is_zero()) throw DivisionByZero();
    Rational norm = re * re + im * im;
    return {re / norm, -im / norm};
  }
};

}  // namespace detail

/// Element (a + b i) + (c + d i) sqrt(2) of the field Q(i)[sqrt 2].
///
/// Stored as u + v sqrt(2) with u, v Gaussian rationals. The field has
/// degree 4 over Q; u^2 - 2 v^2 vanishes only at zero because sqrt(2) is not
/// in Q(i), which makes inversion total on nonzero values.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : u_{Rational(v), Rational(0)} {}  // NOLINT: implicit by design of literals
  ExactScalar(const Rational& a) : u_{a, Rational(0)} {}  // NOLINT
  ExactScalar(Rational a, Rational b, Rational c = 0, Rational d = 0)
      : u_{std::move(a), std::move(b)}, v_{std::move(c), std::move(d)} {}

  static ExactScalar i() { return {Rational(0), Rational(1)}; }
  static ExactScalar sqrt2() { return {Rational(0), Rational(0), Rational(1), Rational(0)}; }
  static ExactScalar inv_sqrt2() {
    return {Rational(0), Rational(0), make_rational(1, 2), Rational(0)};
  }

  const Rational& a() const { return u_.re; }
  const Rational& b() const { return u_.im; }
  const Rational& c() const { return v_.re; }
  const Rational& d() const { return v_.im; }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool is_one() const { return u_.re == 1 && sgn(u_.im) == 0 && v_.is_zero(); }
  /// True when the sqrt(2) part vanishes, i.e. the value lies in Q(i).
  bool is_gaussian() const { return v_.is_zero(); }
  bool is_rational() const { return v_.is_zero() && sgn(u_.im) == 0; }

  /// Complex conjugation (b -> -b, d -> -d).
  ExactScalar conj() const { return from(u_.conj(), v_.conj()); }
  /// Galois conjugation sqrt(2) -> -sqrt(2).
  ExactScalar sqrt2_conj() const { return from(u_, -v_); }

  ExactScalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (v_.is_zero()) return from(u_.inverse(), {});
    // 1/(u + v r2) = (u - v r2) / (u^2 - 2 v^2)
    detail::Gaussian norm = u_ * u_ - (v_ * v_).scaled(Rational(2));
    detail::Gaussian inv = norm.inverse();
    return from(u_ * inv, -(v_ * inv));
  }

  ExactScalar operator-() const { return from(-u_, -v_); }

  ExactScalar& operator+=(const ExactScalar& y) {
    u_.re += y.u_.re;
    u_.im += y.u_.im;
    v_.re += y.v_.re;
    v_.im += y.v_.im;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& y) {
    u_.re -= y.u_.re;
    u_.im -= y.u_.im;
    v_.re -= y.v_.re;
    v_.im -= y.v_.im;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }
  ExactScalar& operator/=(const ExactScalar& y) { return *this = *this / y; }

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }

  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    if (x.v_.is_zero() && y.v_.is_zero()) return from(x.u_ * y.u_, {});
    // (u1 + v1 r2)(u2 + v2 r2) = (u1 u2 + 2 v1 v2) + (u1 v2 + v1 u2) r2
    return from(x.u_ * y.u_ + (x.v_ * y.v_).scaled(Rational(2)),
                x.u_ * y.v_ + x.v_ * y.u_);
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    return x * y.inverse();
  }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.u_ == y.u_ && x.v_ == y.v_;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

 private:
  static ExactScalar from(detail::Gaussian u, detail::Gaussian v) {
    ExactScalar s;
    s.u_ = std::move(u);
    s.v_ = std::move(v);
    return s;
  }

  detail::Gaussian u_{Rational(0), Rational(0)};
  detail::Gaussian v_{Rational(0), Rational(0)};
};

// ---------------------------------------------------------------------------
// Text format
//
//   SCALAR := TERM (("+"|"-") TERM)*
//   TERM   := RAT | RAT "i" | "(" RAT ("+"|"-") RAT "i" ")" "r2" | RAT "r2"
//   RAT    := INT ("/" POSINT)?
//
// Whitespace is insignificant. The parser also accepts a leading sign, bare
// "i" / "r2", "RAT i r2" and any parenthesised scalar before "r2" (so
// "(1/2) r2" parses). format() always emits the strict grammar.
// ---------------------------------------------------------------------------

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  ExactScalar parse() {
    ExactScalar value = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return value;
  }

 private:
  ExactScalar parse_sum() {
    skip_ws();
    ExactScalar total;
    bool negative = false;
    if (peek('+') || peek('-')) negative = text_[pos_++] == '-';
    ExactScalar term = parse_term();
    total += negative ? -term : term;
    for (;;) {
      skip_ws();
      if (!(peek('+') || peek('-'))) break;
      negative = text_[pos_++] == '-';
      skip_ws();
      term = parse_term();
      total += negative ? -term : term;
    }
    return total;
  }

  ExactScalar parse_term() {
    skip_ws();
    ExactScalar value(1);
    bool any = false;
    if (peek('(')) {
      ++pos_;
      value = parse_sum();
      skip_ws();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      any = true;
    } else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = ExactScalar(parse_rational());
      any = true;
    }
    skip_ws();
    if (peek('i')) {
      ++pos_;
      value = value * ExactScalar::i();
      any = true;
      skip_ws();
    }
    if (peek('r')) {
      ++pos_;
      if (!peek('2')) throw ParseError("expected '2' after 'r'", pos_);
      ++pos_;
      value = value * ExactScalar::sqrt2();
      any = true;
    }
    if (!any) throw ParseError("expected a term", pos_);
    return value;
  }

  Rational parse_rational() {
    mpz_class num = parse_digits();
    skip_ws();
    if (!peek('/')) return Rational(num);
    ++pos_;
    skip_ws();
    std::size_t at = pos_;
    mpz_class den = parse_digits();
    if (den == 0) throw ParseError("zero denominator", at);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  mpz_class parse_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExactScalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }

inline std::string format_scalar(const ExactScalar& x) {
  if (x.is_zero()) return "0";
  std::string out;
  auto append = [&out](const Rational& coeff, const std::string& suffix) {
    bool negative = sgn(coeff) < 0;
    Rational magnitude = abs(coeff);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += magnitude.get_str() + suffix;
  };
  if (sgn(x.a()) != 0) append(x.a(), "");
  if (sgn(x.b()) != 0) append(x.b(), " i");
  if (sgn(x.d()) != 0) {
    out += out.empty() ? "" : " + ";
    out += "(" + x.c().get_str() + (sgn(x.d()) < 0 ? " - " : " + ") + Rational(abs(x.d())).get_str() + " i) r2";
  } else if (sgn(x.c()) != 0) {
    append(x.c(), " r2");
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << format_scalar(x); }

}  // namespace isotropy
