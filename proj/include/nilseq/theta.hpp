#pragma once

// The Gaussian periodization kernel
//     kappa(s, t) = sum_k exp(-pi (t+k)^2) e(k s)
// and its link to the classical theta function
//     kappa(s, t) = exp(-pi t^2) theta(s + i t, i).
// kappa is 1-periodic in s but only quasi-periodic in t:
//     kappa(s, t+1) = e(-s) kappa(s, t),
// so it is exposed on t in R and recentered internally.

#include <complex>

#include "nilseq/dd.hpp"

namespace nilseq {

struct KappaAccuracy {
  double tol = 1e-15;  // absolute truncation bound, 0 < tol <= 1e-3
};

// Truncated kernel; the summation is recentered around round(-t) and the
// discarded Gaussian tail is below acc.tol.
std::complex<double> kappa(double s, double t, KappaAccuracy acc = {});

// Variant taking double-double arguments: the quasi-periodic phase e(-j s)
// for the integer recentering j is reduced in double-double, which is what
// the orbit evaluators need when s, t carry many accurate digits.
std::complex<double> kappa_dd(dd s, dd t, KappaAccuracy acc = {});

// theta(u, i) = sum_n exp(-pi n^2 + 2 pi i n u), |Im u| <= 4, tail < 1e-14.
std::complex<double> theta3_at_i(std::complex<double> u);

// Midpoint-rule quadrature of |kappa|^2 over the unit square (the integrand
// is smooth and doubly 1-periodic, so the rule converges spectrally).
double kappa_abs_sq_quadrature(int grid_n);

// int_0^1 int_0^1 |kappa|^2 ds dt, computed two independent ways (2D
// quadrature, and the Parseval route int_R exp(-2 pi u^2) du = 2^{-1/2});
// throws if the routes disagree beyond 1e-8.
double kappa_abs_sq_mean();

}  // namespace nilseq
