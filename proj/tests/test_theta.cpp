#include "doctest.h"

#include <cmath>
#include <complex>

#include "nilseq/theta.hpp"

using namespace nilseq;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Direct-summation oracle: fixed radius, no recentering, long-double
// accumulation.  Only valid for |t| <= ~2 with radius 8.
std::complex<double> kappa_oracle(double s, double t, int radius = 8) {
  long double re = 0.0L, im = 0.0L;
  for (int k = -radius; k <= radius; ++k) {
    long double g = std::exp(-static_cast<long double>(kPi) * (t + k) * (t + k));
    long double arg = 2.0L * static_cast<long double>(kPi) * k * s;
    re += g * std::cos(arg);
    im += g * std::sin(arg);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

TEST_CASE("kappa at the derived anchor points") {
  // Frozen from the direct-summation oracle (radius 6 already below 1e-15).
  std::complex<double> k00 = kappa(0.0, 0.0);
  CHECK(k00.real() == doctest::Approx(1.0864348112133080).epsilon(1e-14));
  CHECK(std::abs(k00.imag()) < 1e-14);
  CHECK(std::abs(k00 - kappa_oracle(0.0, 0.0, 6)) < 1e-15);

  std::complex<double> kh = kappa(0.5, 0.0);
  CHECK(kh.real() == doctest::Approx(0.9135791381561168).epsilon(1e-14));
  CHECK(std::abs(kh - kappa_oracle(0.5, 0.0, 6)) < 1e-15);
}

TEST_CASE("kappa agrees with the oracle on a grid") {
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      double s = i / 16.0;
      double t = j / 16.0 - 0.5;
      CHECK(std::abs(kappa(s, t) - kappa_oracle(s, t)) < 1e-14);
    }
}

TEST_CASE("kappa index-shift identity and invariants") {
  auto e = [](double x) {
    return std::complex<double>(std::cos(kTwoPi * x), std::sin(kTwoPi * x));
  };
  for (int i = 0; i < 24; ++i) {
    double s = 0.31 * i - std::floor(0.31 * i);
    double t = 1.7 * i - 12.0;
    // quasi-periodicity kappa(s, t+1) = e(-s) kappa(s, t)
    CHECK(std::abs(kappa(s, t + 1.0) - e(-s) * kappa(s, t)) < 1e-12);
    // exact periodicity in s
    CHECK(std::abs(kappa(s + 1.0, t) - kappa(s, t)) < 1e-13);
    // conjugation symmetry
    CHECK(std::abs(kappa(-s, t) - std::conj(kappa(s, t))) < 1e-13);
  }
  // reality and positivity at s = 0
  for (int j = 0; j <= 32; ++j) {
    std::complex<double> v = kappa(0.0, j / 32.0);
    CHECK(std::abs(v.imag()) < 1e-13);
    CHECK(v.real() > 0.0);
  }
  // vanishing point of the Gaussian section
  CHECK(std::abs(kappa(0.5, 0.5)) < 1e-12);
}

TEST_CASE("kappa rejects bad input") {
  CHECK_THROWS_AS(kappa(std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(kappa(0.0, 0.0, KappaAccuracy{0.5}), std::invalid_argument);
  CHECK_THROWS_AS(kappa(0.0, 0.0, KappaAccuracy{0.0}), std::invalid_argument);
}

TEST_CASE("theta3_at_i anchor values and identity") {
  CHECK(theta3_at_i({0.0, 0.0}).real() == doctest::Approx(1.0864348112133080).epsilon(1e-14));
  CHECK(theta3_at_i({0.5, 0.0}).real() == doctest::Approx(0.9135791381561168).epsilon(1e-14));
  // kappa(s,t) = exp(-pi t^2) theta(s + it, i) on sampled points
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      double s = i / 12.0;
      double t = j / 12.0;
      std::complex<double> lhs = kappa(s, t);
      std::complex<double> rhs = std::exp(-kPi * t * t) * theta3_at_i({s, t});
      CHECK(std::abs(lhs - rhs) < 1e-13);
    }
  CHECK_THROWS_AS(theta3_at_i({0.0, 4.5}), std::domain_error);
}

TEST_CASE("kappa_abs_sq_mean and its two routes") {
  double v = kappa_abs_sq_mean();
  CHECK(v == doctest::Approx(0.7071067811865476).epsilon(1e-9));
  // grid refinement: 256^2 vs 512^2
  double a = kappa_abs_sq_quadrature(256);
  double b = kappa_abs_sq_quadrature(512);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("Parseval partial sum k in -3..3") {
  // int_0^1 sum_{|k|<=3} exp(-2 pi (t+k)^2) dt = int_{-3}^{4} exp(-2 pi u^2) du
  // = (1/(2 sqrt 2)) (erf(sqrt(2 pi) 4) + erf(sqrt(2 pi) 3)), within 1e-12 of
  // 2^{-1/2}.
  double c = std::sqrt(2.0 * kPi);
  double integral = (std::erf(c * 4.0) + std::erf(c * 3.0)) / (2.0 * std::sqrt(2.0));
  CHECK(std::abs(integral - 1.0 / std::sqrt(2.0)) < 1e-12);
}
