#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2, giving roughly 106 bits of significand.  Used wherever
// a phase n*x or n(n-1)/2*x must be reduced mod 1 without losing the budget
// to cancellation.  Only the handful of operations the library needs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace nilseq {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

// s = fl(a+b), err = exact remainder (Knuth).
inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b| or a == 0.
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

// p = fl(a*b), err = exact remainder via fused multiply-add.
inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd dd_add(dd a, dd b) {
  dd s = detail::two_sum(a.hi, b.hi);
  dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(dd a, dd b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  dd p = detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return dd_add(q, dd(q3));
}

inline double to_double(dd a) { return a.hi + a.lo; }

// floor(hi + lo).  When hi is not an integer the low word cannot move the
// result across an integer (|lo| <= ulp(hi)/2 < gap).
inline dd dd_floor(dd a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return {f, 0.0};
  return detail::quick_two_sum(f, std::floor(a.lo));
}

inline dd dd_round_nearest(dd a) { return dd_floor(dd_add(a, dd(0.5))); }

// Fractional part in [0, 1).
inline dd dd_frac(dd a) {
  dd f = dd_sub(a, dd_floor(a));
  if (f.hi >= 1.0) f = dd_sub(f, dd(1.0));
  if (f.hi < 0.0) f = dd_add(f, dd(1.0));
  return f;
}

// Center a fractional value into [-1/2, 1/2).
inline dd dd_center(dd a) {
  dd f = dd_frac(a);
  if (to_double(f) >= 0.5) f = dd_sub(f, dd(1.0));
  return f;
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(f) = exp(2*pi*i*f) for a fractional phase f; f is recentered so the
// trig argument stays small.
inline std::complex<double> cis_frac(dd f) {
  double t = kTwoPi * to_double(dd_center(f));
  return {std::cos(t), std::sin(t)};
}

}  // namespace nilseq
