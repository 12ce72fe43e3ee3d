#include "nilseq/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace nilseq {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void check_accuracy(const KappaAccuracy& acc) {
  if (!(acc.tol > 0.0) || acc.tol > 1e-3)
    throw std::invalid_argument("KappaAccuracy: tol must be in (0, 1e-3]");
}

// Smallest K with  sum_{|k|>=K} exp(-pi (t0+k)^2) < tol  for t0 in [-1/2,1/2).
int truncation_radius(double tol) {
  for (int k = 1;; ++k) {
    double head = std::exp(-kPi * (k - 0.5) * (k - 0.5));
    double bound = 2.0 * head / (1.0 - std::exp(-2.0 * kPi * (k - 0.5)));
    if (bound < tol) return k;
  }
}

// Kernel for recentered arguments: s is a plain real (only used mod 1),
// t0 in [-1/2, 1/2).
std::complex<double> kappa_centered(double s, double t0, double tol) {
  int radius = truncation_radius(tol);
  std::complex<double> sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    double g = std::exp(-kPi * (t0 + k) * (t0 + k));
    double arg = kTwoPi * k * s;
    sum += g * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return sum;
}

}  // namespace

std::complex<double> kappa(double s, double t, KappaAccuracy acc) {
  if (!std::isfinite(s) || !std::isfinite(t))
    throw std::invalid_argument("kappa: non-finite input");
  return kappa_dd(dd(s), dd(t), acc);
}

std::complex<double> kappa_dd(dd s, dd t, KappaAccuracy acc) {
  check_accuracy(acc);
  if (!std::isfinite(s.hi) || !std::isfinite(t.hi))
    throw std::invalid_argument("kappa: non-finite input");
  // t = t0 + j with t0 in [-1/2, 1/2):  kappa(s,t) = e(-j s) kappa(s,t0).
  dd j = dd_round_nearest(t);
  dd t0 = dd_sub(t, j);
  dd sfrac = dd_frac(s);
  std::complex<double> phase = cis_frac(dd_frac(dd_neg(dd_mul(j, sfrac))));
  return phase * kappa_centered(to_double(sfrac), to_double(t0), acc.tol);
}

std::complex<double> theta3_at_i(std::complex<double> u) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw std::invalid_argument("theta3_at_i: non-finite input");
  if (std::abs(u.imag()) > 4.0)
    throw std::domain_error("theta3_at_i: |Im u| must be <= 4");
  int radius = 12 + static_cast<int>(2.0 * std::abs(u.imag()));
  std::complex<double> sum = 0.0;
  for (int n = -radius; n <= radius; ++n) {
    // exp(-pi n^2 + 2 pi i n u)
    std::complex<double> ex(-kPi * n * n - kTwoPi * n * u.imag(), kTwoPi * n * u.real());
    sum += std::exp(ex);
  }
  return sum;
}

double kappa_abs_sq_quadrature(int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("kappa_abs_sq_quadrature: grid too small");
  double sum = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    double s = (i + 0.5) / grid_n;
    for (int j = 0; j < grid_n; ++j) {
      double t = (j + 0.5) / grid_n;
      sum += std::norm(kappa(s, t));
    }
  }
  return sum / (static_cast<double>(grid_n) * grid_n);
}

double kappa_abs_sq_mean() {
  double quad = kappa_abs_sq_quadrature(256);
  // Parseval in s gives int_0^1 sum_k exp(-2 pi (t+k)^2) dt = int_R
  // exp(-2 pi u^2) du = 2^{-1/2}; integrate the k-sum directly as the
  // second route.
  const int grid = 4096;
  double parseval = 0.0;
  for (int j = 0; j < grid; ++j) {
    double t = (j + 0.5) / grid;
    double row = 0.0;
    for (int k = -6; k <= 6; ++k) row += std::exp(-2.0 * kPi * (t + k) * (t + k));
    parseval += row;
  }
  parseval /= grid;
  if (std::abs(quad - parseval) > 1e-8)
    throw std::runtime_error("kappa_abs_sq_mean: quadrature and Parseval routes disagree");
  return parseval;
}

}  // namespace nilseq
