#include "doctest.h"

#include <cmath>

#include "nilseq/qaffine.hpp"
#include "nilseq/rng.hpp"

using namespace nilseq;

namespace {

BasisPtr basis() {
  static BasisPtr b = standard_basis();
  return b;
}

QAffineReal xi(std::size_t i, Rational c = Rational(1)) {
  return QAffineReal::symbol(basis(), i, c);
}

QAffineReal rat(long long p, long long q = 1) { return QAffineReal(Rational(p, q)); }

// Exhaustive small-integer relation search: is there a nonzero integer
// vector with |n_i| <= bound making the combination rational?  Independent
// of the rank-based decision path.
bool brute_force_dependent(const std::vector<QAffineReal>& xs, int bound) {
  std::vector<int> n(xs.size(), -bound);
  for (;;) {
    bool all_zero = true;
    for (int v : n)
      if (v != 0) all_zero = false;
    if (!all_zero) {
      QAffineReal acc{Rational(0)};
      for (std::size_t i = 0; i < xs.size(); ++i)
        acc = qa_add(acc, qa_scale(Rational(n[i]), xs[i]));
      if (acc.is_rational()) return true;
    }
    std::size_t i = 0;
    while (i < n.size() && n[i] == bound) n[i++] = -bound;
    if (i == n.size()) return false;
    ++n[i];
  }
}

}  // namespace

TEST_CASE("qa_add examples") {
  CHECK(qa_add(rat(1, 2), rat(1, 3)) == rat(5, 6));
  CHECK(qa_add(xi(0), qa_scale(Rational(-1), xi(0))) == rat(0));
  QAffineReal sum = qa_add(qa_add(rat(1, 2), xi(0)), qa_add(rat(1, 2), xi(1)));
  CHECK(sum == qa_add(qa_add(rat(1), xi(0)), xi(1)));
}

TEST_CASE("qa_add basis mismatch") {
  BasisPtr other = make_basis("other", {{"eta", 0.5772156649, "euler-mascheroni"}});
  CHECK_THROWS_AS(qa_add(xi(0), QAffineReal::symbol(other, 0)), std::invalid_argument);
}

TEST_CASE("qa_scale examples") {
  CHECK(qa_scale(Rational(2), xi(0, Rational(1, 2))) == xi(0));
  CHECK(qa_scale(Rational(0), qa_add(rat(3), xi(1))) == rat(0));
  CHECK(qa_scale(Rational(1, 3), rat(3, 5)) == rat(1, 5));
}

TEST_CASE("qa_mod1 examples and properties") {
  CHECK(qa_mod1(rat(7, 3)) == rat(1, 3));
  CHECK(qa_mod1(qa_add(rat(-1, 4), xi(0))) == qa_add(rat(3, 4), xi(0)));
  CHECK(qa_mod1(xi(0)) == xi(0));

  CounterRng rng(7, 1);
  for (int trial = 0; trial < 50; ++trial) {
    QAffineReal a = qa_add(rat(rng.range(-30, 30), rng.range(1, 7)),
                           xi(rng.below(4), Rational(rng.range(-3, 3))));
    QAffineReal m = qa_mod1(a);
    CHECK(qa_mod1(m) == m);
    CHECK(is_integer(qa_sub(m, a)));
  }
}

TEST_CASE("is_integer examples") {
  CHECK(is_integer(rat(4, 2)));
  CHECK_FALSE(is_integer(rat(1, 2)));
  CHECK(is_integer(qa_add(qa_sub(xi(0), xi(0)), rat(3))));
}

TEST_CASE("independent_mod1 examples") {
  CHECK(independent_mod1({xi(0), xi(1)}));
  CHECK_FALSE(independent_mod1({xi(0), xi(0, Rational(2))}));
  CHECK_FALSE(independent_mod1({qa_add(rat(1, 2), xi(0)), xi(0)}));
}

TEST_CASE("independent_mod1 invariances") {
  std::vector<QAffineReal> xs = {qa_add(xi(0), xi(1, Rational(1, 2))), xi(2),
                                 qa_add(rat(2, 7), xi(3))};
  CHECK(independent_mod1(xs));
  std::vector<QAffineReal> permuted = {xs[2], xs[0], xs[1]};
  CHECK(independent_mod1(permuted));
  std::vector<QAffineReal> offset = xs;
  offset[1] = qa_add(offset[1], rat(-5, 3));
  CHECK(independent_mod1(offset) == independent_mod1(xs));
}

TEST_CASE("independent_mod1 vs brute-force relation search") {
  CounterRng rng(42, 2);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<QAffineReal> xs;
    std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i) {
      QAffineReal v = rat(rng.range(-2, 2), rng.range(1, 3));
      // at most two symbols with tiny coefficients, so brute force can see
      // every relation the rank test can
      for (int s = 0; s < 2; ++s)
        if (rng.below(2))
          v = qa_add(v, xi(rng.below(2), Rational(rng.range(-2, 2))));
      xs.push_back(v);
    }
    bool indep = independent_mod1(xs);
    CHECK(indep == !brute_force_dependent(xs, 20));
    if (!indep) CHECK(find_rational_relation(xs).has_value());
  }
}

TEST_CASE("rational-only lists are always dependent") {
  CHECK_FALSE(independent_mod1({rat(1, 2)}));
  CHECK_FALSE(independent_mod1({rat(0)}));
  CHECK_FALSE(independent_mod1({xi(0), rat(3, 4)}));
}

TEST_CASE("to_float examples") {
  CHECK(to_float(rat(1, 2)) == 0.5);
  CHECK(to_float(xi(0)) == 1.4142135623730951);
  CHECK(to_float(qa_add(rat(1, 4), xi(0))) == doctest::Approx(1.6642135623730951).epsilon(1e-15));
}

TEST_CASE("to_float additivity within 4 ulp") {
  CounterRng rng(3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    QAffineReal a = qa_add(rat(rng.range(-20, 20), rng.range(1, 9)),
                           xi(rng.below(4), Rational(rng.range(-5, 5), rng.range(1, 4))));
    QAffineReal b = qa_add(rat(rng.range(-20, 20), rng.range(1, 9)),
                           xi(rng.below(4), Rational(rng.range(-5, 5), rng.range(1, 4))));
    double direct = to_float(a) + to_float(b);
    double exact = to_float(qa_add(a, b));
    double ulp = std::ldexp(1.0, std::ilogb(std::max(1.0, std::abs(direct))) - 52);
    CHECK(std::abs(direct - exact) <= 4 * ulp);
  }
}

TEST_CASE("canonical form drops zero coefficients") {
  QAffineReal z = qa_add(xi(1), xi(1, Rational(-1)));
  CHECK(z.coeffs().empty());
  CHECK(z.is_zero());
  CHECK(z == rat(0));
}
