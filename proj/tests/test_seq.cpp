#include "doctest.h"

#include <cmath>
#include <complex>

#include "nilseq/rng.hpp"
#include "nilseq/seq.hpp"
#include "nilseq/theta.hpp"

using namespace nilseq;
using cd = std::complex<double>;

namespace {

BasisPtr basis() {
  static BasisPtr b = standard_basis();
  return b;
}

QAffineReal xi(std::size_t i, Rational c = Rational(1)) {
  return QAffineReal::symbol(basis(), i, c);
}

QAffineReal rat(long long p, long long q = 1) { return QAffineReal(Rational(p, q)); }

cd e_of(double t) { return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)}; }

}  // namespace

TEST_CASE("eval examples") {
  // q_4(1/8) = e(6/8) = -i
  CHECK(std::abs(eval(make_quad(rat(1, 8)), 4) - cd(0.0, -1.0)) < 1e-15);
  // e(n/2) = (-1)^n
  ExprPtr half = make_exp(rat(1, 2));
  for (std::int64_t n = -5; n <= 5; ++n)
    CHECK(std::abs(eval(half, n) - cd(n % 2 ? -1.0 : 1.0, 0.0)) < 1e-15);
  // omega at n = 1 is kappa(alpha, beta)
  ExprPtr om = make_omega(xi(0), xi(1));
  CHECK(std::abs(eval(om, 1) - kappa(to_float(xi(0)), to_float(xi(1)))) < 1e-12);
}

TEST_CASE("product of quad and exp is the affine orbit") {
  ExprPtr prod = make_product({make_quad(xi(0)), make_exp(xi(1))});
  AffineSkewSystem sys{xi(0), xi(1)};
  for (std::int64_t n : {0, 1, 2, 17, -23, 999, -1000})
    CHECK(std::abs(eval(prod, n) - affine_orbit_value(sys, n)) < 1e-11);
}

TEST_CASE("m_sequence") {
  // d = 0, s = t = 0: the constant sequence 1
  ExprPtr one = m_sequence({rat(0), rat(0), {}});
  for (std::int64_t n : {0, 5, -3}) CHECK(std::abs(eval(one, n) - cd(1.0, 0.0)) < 1e-15);

  // d = 0, t = xi1: the quadratic sequence
  ExprPtr q = m_sequence({rat(0), xi(0), {}});
  ExprPtr quad = make_quad(xi(0));
  for (std::int64_t n : {0, 7, -9, 100}) CHECK(std::abs(eval(q, n) - eval(quad, n)) < 1e-15);

  // dependent pair is rejected with a named relation
  CHECK_THROWS_WITH_AS(m_sequence({rat(0), rat(0), {{xi(0), xi(0, Rational(2))}}}),
                       doctest::Contains("dependent"), std::invalid_argument);

  // rational nonzero t is rejected
  CHECK_THROWS_AS(m_sequence({rat(0), rat(1, 3), {}}), std::invalid_argument);
}

TEST_CASE("shift identities") {
  // shift(Exp(s), k) = e(ks) e(ns)
  ExprPtr es = make_exp(xi(1));
  ExprPtr shifted = shift(es, 5);
  for (std::int64_t n : {0, 3, -8})
    CHECK(std::abs(eval(shifted, n) - eval(es, 5) * eval(es, n)) < 1e-13);

  // shift(Quad(t), k) at n equals q_k(t) e(nkt) q_n(t)
  ExprPtr qt = make_quad(xi(0));
  ExprPtr qshift = shift(qt, 3);
  QAffineReal three_t = qa_scale(Rational(3), xi(0));
  ExprPtr ent = make_exp(three_t);
  for (std::int64_t n : {0, 2, -7, 50})
    CHECK(std::abs(eval(qshift, n) - eval(qt, 3) * eval(ent, n) * eval(qt, n)) < 1e-12);

  // additive composition
  ExprPtr s23 = shift(shift(qt, 2), 3);
  ExprPtr s5 = shift(qt, 5);
  CHECK(std::get<ShiftNode>(s23->node()).k == 5);
  for (std::int64_t n = -1000; n <= 1000; n += 97)
    CHECK(std::abs(eval(s23, n) - eval(s5, n)) < 1e-15);
}

TEST_CASE("floor_linear_value examples") {
  QAffineReal beta = xi(1, Rational(1, 3));
  CHECK(std::abs(floor_linear_value(xi(0), beta, 0) - cd(1.0, 0.0)) < 1e-15);
  // floor(sqrt 2) = 1, floor(2 sqrt 2) = 2
  CHECK(std::abs(floor_linear_value(xi(0), beta, 1) - e_of(to_float(beta))) < 1e-13);
  CHECK(std::abs(floor_linear_value(xi(0), beta, 2) -
                 e_of(std::fmod(2 * to_float(beta), 1.0))) < 1e-13);
}

TEST_CASE("floor_quad_value examples") {
  QAffineReal beta = xi(1);
  CHECK(std::abs(floor_quad_value(xi(0), beta, 0) - cd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(floor_quad_value(xi(0), beta, 1) - e_of(to_float(beta))) < 1e-13);
  // rational alpha = 1/2: floor(3/2) = 1, value e(1 * 3 beta)
  CHECK(std::abs(floor_quad_value(rat(1, 2), beta, 3) -
                 e_of(std::fmod(3 * to_float(beta), 1.0))) < 1e-12);
}

TEST_CASE("floor at exact integer boundary uses the exact value") {
  // n * alpha = 3 exactly; float wobble must not shift the floor
  CHECK(std::abs(floor_linear_value(rat(3, 7), rat(1, 2), 7) - cd(-1.0, 0.0)) < 1e-15);
  CHECK(qa_floor_times_int(7, rat(3, 7)) == BigInt(3));
  CHECK(qa_floor_times_int(-7, rat(3, 7)) == BigInt(-3));
}

TEST_CASE("floor of negative multiples rounds toward minus infinity") {
  CHECK(qa_floor_times_int(-1, xi(0)) == BigInt(-2));     // floor(-sqrt2)
  CHECK(qa_floor_times_int(-2, xi(0)) == BigInt(-3));     // floor(-2 sqrt2)
  CHECK(qa_floor_times_int(-3, rat(-1, 2)) == BigInt(1)); // floor(3/2)
  CHECK(qa_floor_times_int(3, rat(-1, 2)) == BigInt(-2)); // floor(-3/2)
}

TEST_CASE("unimodularity of exp/quad/floor products") {
  ExprPtr prod = make_product({make_exp(xi(1)), make_quad(xi(0)),
                               make_floor_linear(xi(0), xi(2))});
  CounterRng rng(7, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t n = rng.range(-100000, 100000);
    CHECK(std::abs(std::abs(eval(prod, n)) - 1.0) < 1e-14);
  }
}

TEST_CASE("conjugation") {
  ExprPtr om = make_omega(xi(0), xi(1));
  ExprPtr cj = make_conj(om);
  for (std::int64_t n : {0, 1, -9, 313})
    CHECK(std::abs(eval(cj, n) - std::conj(eval(om, n))) < 1e-15);
}

TEST_CASE("shift homomorphism on a window") {
  ExprPtr e = make_product({make_quad(xi(0)), make_exp(xi(1))});
  ExprPtr a = shift(e, 7 + 4);
  ExprPtr b = shift(shift(e, 7), 4);
  for (std::int64_t n = -1000; n <= 1000; n += 13)
    CHECK(std::abs(eval(a, n) - eval(b, n)) < 1e-15);
}

TEST_CASE("quadratic phase is exact for rational t up to n = 1e6") {
  // independent route: n(n-1)/2 mod q in plain 64-bit arithmetic
  ExprPtr q7 = make_quad(rat(3, 7));
  for (std::int64_t n : {999999LL, 999983LL, 123456LL, 2LL}) {
    std::int64_t tn = n * (n - 1) / 2;  // < 5e11, exact in int64
    double frac = 3.0 * static_cast<double>(tn % 7) / 7.0;
    frac -= std::floor(frac);
    CHECK(std::abs(eval(q7, n) - e_of(frac)) < 1e-9);
  }
}

TEST_CASE("cross-module bridge: product of omegas equals the Heisenberg orbit") {
  // d = 1
  HeisenbergSystem s1;
  s1.d = 1;
  s1.alpha = {xi(0)};
  s1.beta = {xi(1)};
  s1.gamma = xi(3, Rational(1, 2));
  ExprPtr closed1 = make_product({make_exp(s1.gamma), make_omega(xi(0), xi(1))});
  for (std::int64_t n = -2000; n <= 2000; n += 41)
    CHECK(std::abs(eval(closed1, n) - heisenberg_orbit_value(s1, n)) < 1e-10);

  // d = 2
  HeisenbergSystem s2;
  s2.d = 2;
  s2.alpha = {xi(0), xi(2)};
  s2.beta = {xi(1), xi(3)};
  s2.gamma = QAffineReal(Rational(1, 5));
  ExprPtr closed2 = make_product(
      {make_exp(s2.gamma), make_omega(xi(0), xi(1)), make_omega(xi(2), xi(3))});
  for (std::int64_t n = -2000; n <= 2000; n += 173)
    CHECK(std::abs(eval(closed2, n) - heisenberg_orbit_value(s2, n)) < 1e-10);
}

TEST_CASE("orbit nodes evaluate through the systems") {
  HeisenbergSystem s;
  s.d = 1;
  s.alpha = {xi(0)};
  s.beta = {xi(1)};
  s.gamma = QAffineReal(Rational(0));
  ExprPtr orbit = make_orbit(s);
  for (std::int64_t n : {0, 3, -12})
    CHECK(std::abs(eval(orbit, n) - heisenberg_orbit_value(s, n)) < 1e-15);

  ExprPtr affine = make_orbit(AffineSkewSystem{xi(0), rat(1, 4)});
  CHECK(std::abs(eval(affine, 2) - affine_orbit_value({xi(0), rat(1, 4)}, 2)) < 1e-15);
}

TEST_CASE("eval rejects out-of-range n") {
  ExprPtr q = make_quad(rat(1, 3));
  CHECK_THROWS_AS(eval(q, (std::int64_t(1) << 52) + 1), std::domain_error);
}

TEST_CASE("sum nodes combine with complex coefficients") {
  ExprPtr s = make_sum({{cd(0.5, 0.0), make_exp(rat(1, 2))},
                        {cd(0.0, 1.0), make_quad(rat(1, 4))}});
  for (std::int64_t n : {0, 1, 2, 3}) {
    cd expect = 0.5 * eval(make_exp(rat(1, 2)), n) + cd(0, 1) * eval(make_quad(rat(1, 4)), n);
    CHECK(std::abs(eval(s, n) - expect) < 1e-15);
  }
}
