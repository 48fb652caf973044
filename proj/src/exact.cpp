#include "dtnheat/exact.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace dtnheat {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') pos = 1;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  std::string d(den[0] == '+' ? den.substr(1) : den);
  mpz_class zn(n, 10);
  mpz_class zd(d, 10);
  if (zd == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::uint64_t abs64(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

bool fits(i128 v) { return v > kMin && v <= kMax; }

bool fits_long(const mpz_class& z) { return z.fits_slong_p() && z != mpz_class(kMin); }

}  // namespace

Fraction::Fraction(long v) {
  if (v == kMin) {
    big_ = std::make_unique<Rational>(v);
  } else {
    num_ = v;
  }
}

Fraction::Fraction(const Rational& r) { assign(r); }

Fraction::Fraction(const Fraction& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<Rational>(*o.big_);
}

Fraction& Fraction::operator=(const Fraction& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = std::make_unique<Rational>(*o.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Fraction::assign(const Rational& r) {
  if (fits_long(r.get_num()) && fits_long(r.get_den())) {
    num_ = r.get_num().get_si();
    den_ = r.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<Rational>(r);
  }
}

Rational Fraction::to_rational() const {
  if (big_) return *big_;
  return Rational(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

int Fraction::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool operator==(const Fraction& a, const Fraction& b) {
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

Fraction Fraction::operator-() const {
  Fraction out;
  if (big_) {
    out.assign(-*big_);
  } else {
    out.num_ = -num_;
    out.den_ = den_;
  }
  return out;
}

// a/b + c/d with g = gcd(b, d): t = a(d/g) + c(b/g), g2 = gcd(t, g),
// result t/g2 over (b/g)(d/g2).
Fraction& Fraction::operator+=(const Fraction& o) {
  if (o.is_zero()) return *this;
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      const i128 t = static_cast<i128>(num_) + o.num_;
      if (fits(t)) {
        num_ = static_cast<std::int64_t>(t);
        return *this;
      }
    } else {
      const std::int64_t g = static_cast<std::int64_t>(gcd64(den_, o.den_));
      const i128 t = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
      if (t == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      const u128 at = t < 0 ? static_cast<u128>(0) - static_cast<u128>(t) : static_cast<u128>(t);
      const std::int64_t g2 = static_cast<std::int64_t>(gcd64(static_cast<std::uint64_t>(at % static_cast<u128>(g)), g));
      const i128 num = t / g2;
      const i128 den = static_cast<i128>(den_ / g) * (o.den_ / g2);
      if (fits(num) && fits(den)) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        return *this;
      }
    }
  }
  assign(to_rational() + o.to_rational());
  return *this;
}

Fraction& Fraction::operator-=(const Fraction& o) { return *this += -o; }

// (a/b)(c/d) with cross-cancellation keeps the result canonical.
Fraction& Fraction::operator*=(const Fraction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    *this = Fraction();
    return *this;
  }
  if (!big_ && !o.big_) {
    const std::int64_t g1 = static_cast<std::int64_t>(gcd64(abs64(num_), o.den_));
    const std::int64_t g2 = static_cast<std::int64_t>(gcd64(abs64(o.num_), den_));
    const i128 num = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    const i128 den = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      return *this;
    }
  }
  assign(to_rational() * o.to_rational());
  return *this;
}

Fraction& Fraction::operator/=(const Fraction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!o.big_) {
    Fraction inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = abs64(o.num_);
    return *this *= inv;
  }
  assign(to_rational() / o.to_rational());
  return *this;
}

void Fraction::add_product(const Fraction& a, const Fraction& b, int sign) {
  if (a.is_zero() || b.is_zero()) return;
  if (!a.big_ && !b.big_ && !big_ && a.den_ == 1 && b.den_ == 1 && den_ == 1) {
    i128 t = static_cast<i128>(a.num_) * b.num_;
    t = sign > 0 ? num_ + t : num_ - t;
    if (fits(t)) {
      num_ = static_cast<std::int64_t>(t);
      return;
    }
  }
  Fraction p = a;
  p *= b;
  if (sign > 0) {
    *this += p;
  } else {
    *this -= p;
  }
}

Complex& Complex::operator*=(const Complex& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Fraction re;
  re.add_product(re_, o.re_);
  re.add_product(im_, o.im_, -1);
  Fraction im;
  im.add_product(re_, o.im_);
  im.add_product(im_, o.re_);
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Fraction den;
  den.add_product(o.re_, o.re_);
  den.add_product(o.im_, o.im_);
  Fraction re;
  re.add_product(re_, o.re_);
  re.add_product(im_, o.im_);
  Fraction im;
  im.add_product(im_, o.re_);
  im.add_product(re_, o.im_, -1);
  re_ = std::move(re /= den);
  im_ = std::move(im /= den);
  return *this;
}

void Complex::add_product(const Complex& a, const Complex& b) {
  re_.add_product(a.re_, b.re_);
  if (a.im_.is_zero() && b.im_.is_zero()) return;
  re_.add_product(a.im_, b.im_, -1);
  im_.add_product(a.re_, b.im_);
  im_.add_product(a.im_, b.re_);
}

std::string to_string(const Complex& z) {
  const Rational re = z.real();
  const Rational imag = z.imag();
  const bool has_re = sgn(re) != 0;
  const bool has_im = sgn(imag) != 0;
  if (!has_im) return to_string(re);
  std::string im = to_string(imag) + "i";
  if (!has_re) return im;
  if (sgn(imag) > 0) im = "+" + im;
  return to_string(re) + im;
}

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return Complex(parse_rational(text));
  std::string_view body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return Complex(Rational(0), parse_rational(body));
  return Complex(parse_rational(body.substr(0, split)), parse_rational(body.substr(split)));
}

Complex minus_i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return Complex(1);
    case 1:
      return Complex(0, -1);
    case 2:
      return Complex(-1);
    default:
      return Complex(0, 1);
  }
}

Rational factorial(int k) {
  mpz_class f = 1;
  for (int j = 2; j <= k; ++j) f *= j;
  return Rational(f);
}

}  // namespace dtnheat
