#pragma once

// Arbitrary-precision rationals on top of boost cpp_int.  Always reduced,
// denominator > 0.  These carry the exact data of the whole library: class
// parameters, symplectic matrices, and the rational parts of phases.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nilseq/dd.hpp"

namespace nilseq {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    reduce();
  }
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // floor(num/den) as an integer (rounds toward -infinity).
  BigInt floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
  }

  // this - floor(this), in [0, 1).
  Rational frac() const { return *this - Rational(floor()); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  dd to_dd() const;

  // Parses "p", "p/q", or a decimal-free signed integer string.
  static Rational parse(const std::string& s);
  std::string str() const;

  // Height = max(|num|, den); used by the bounded witness search.
  BigInt height() const {
    BigInt a = num_ < 0 ? BigInt(-num_) : num_;
    return a > den_ ? a : den_;
  }

 private:
  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

// Exact-as-possible conversion of a big integer to double-double.
inline dd bigint_to_dd(const BigInt& x) {
  double hi = static_cast<double>(x);
  BigInt rem = x - BigInt(hi);
  double lo = static_cast<double>(rem);
  return dd_add(dd(hi), dd(lo));
}

inline dd Rational::to_dd() const {
  return dd_div(bigint_to_dd(num_), bigint_to_dd(den_));
}

inline Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

inline std::string Rational::str() const {
  std::string out = num_.str();
  if (den_ != 1) out += "/" + den_.str();
  return out;
}

// frac(K * y) for a big integer K and a double-double y, by Horner reduction
// in base 2^32.  Each step multiplies the running fraction by 2^32, so the
// achievable accuracy decays by ~32 bits per extra chunk; exact enough for
// the |K| <= ~2^60 range the evaluators use (documented cap).
inline dd frac_bigint_times_dd(const BigInt& k, dd y) {
  bool neg = k < 0;
  BigInt a = neg ? BigInt(-k) : k;
  // Collect base-2^32 digits, most significant first.
  std::uint32_t digits[40];
  int n = 0;
  while (a != 0 && n < 40) {
    digits[n++] = static_cast<std::uint32_t>(a & 0xffffffffu);
    a >>= 32;
  }
  if (a != 0) throw std::domain_error("frac_bigint_times_dd: multiplier too large");
  dd r(0.0);
  for (int i = n - 1; i >= 0; --i) {
    r = dd_mul(r, 4294967296.0);
    r = dd_add(r, dd_mul(y, static_cast<double>(digits[i])));
    r = dd_frac(r);
  }
  if (neg) r = dd_frac(dd_neg(r));
  return r;
}

}  // namespace nilseq
