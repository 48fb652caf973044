#pragma once

// Exact scalars: GMP rationals and Gaussian rationals a + b i.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dtnheat {

using Rational = mpq_class;

/// Parse "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational& r);

/// Exact rational that stays in machine words while numerator and denominator
/// fit in int64 and moves to GMP otherwise. Always canonical: a value that fits
/// is never held in the GMP form, so structural equality is value equality.
class Fraction {
 public:
  Fraction() = default;
  Fraction(long v);  // NOLINT(google-explicit-constructor)
  Fraction(const Rational& r);  // NOLINT(google-explicit-constructor)
  Fraction(const Fraction& o);
  Fraction(Fraction&&) noexcept = default;
  Fraction& operator=(const Fraction& o);
  Fraction& operator=(Fraction&&) noexcept = default;
  ~Fraction() = default;

  Rational to_rational() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const;

  Fraction& operator+=(const Fraction& o);
  Fraction& operator-=(const Fraction& o);
  Fraction& operator*=(const Fraction& o);
  Fraction& operator/=(const Fraction& o);
  Fraction operator-() const;
  /// this += sign * a * b with sign = +1 or -1.
  void add_product(const Fraction& a, const Fraction& b, int sign = 1);

  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }
  friend bool operator==(const Fraction& a, const Fraction& b);

 private:
  void assign(const Rational& r);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<Rational> big_;
};

/// Exact complex number with rational real and imaginary parts.
class Complex {
 public:
  Complex() = default;
  Complex(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Complex(const Rational& re) : re_(re) {}  // NOLINT
  Complex(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Complex i() { return Complex(Parts{}, Fraction(0), Fraction(1)); }

  Rational real() const { return re_.to_rational(); }
  Rational imag() const { return im_.to_rational(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Complex conj() const { return Complex(Parts{}, re_, -im_); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Rational& r) {
    const Fraction f(r);
    re_ *= f;
    im_ *= f;
    return *this;
  }
  Complex& operator/=(const Complex& o);

  /// this += a * b.
  void add_product(const Complex& a, const Complex& b);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Rational& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(Parts{}, -a.re_, -a.im_); }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

 private:
  struct Parts {};
  Complex(Parts, Fraction re, Fraction im) : re_(std::move(re)), im_(std::move(im)) {}

  Fraction re_;
  Fraction im_;
};

/// "a", "bi", "a+bi", "a-bi" with a, b in "p/q" form.
std::string to_string(const Complex& z);
Complex parse_complex(std::string_view text);

/// (-i)^k.
Complex minus_i_power(int k);

Rational factorial(int k);

}  // namespace dtnheat
