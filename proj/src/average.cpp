#include "nilseq/average.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nilseq {

namespace {

constexpr std::int64_t kBlock = 64;

// Neumaier-compensated sum of one block.
std::complex<double> block_sum(const SeqFn& fn, std::int64_t begin, std::int64_t end) {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  for (std::int64_t n = begin; n < end; ++n) {
    std::complex<double> v = fn(n);
    double t = sr + v.real();
    cr += (std::abs(sr) >= std::abs(v.real())) ? (sr - t) + v.real() : (v.real() - t) + sr;
    sr = t;
    t = si + v.imag();
    ci += (std::abs(si) >= std::abs(v.imag())) ? (si - t) + v.imag() : (v.imag() - t) + si;
    si = t;
  }
  return {sr + cr, si + ci};
}

// Fixed-partition parallel map over blocks; the output layout does not
// depend on the worker count.
std::vector<std::complex<double>> block_sums(const SeqFn& fn, std::int64_t start,
                                             std::int64_t n, int workers) {
  std::int64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::complex<double>> sums(static_cast<std::size_t>(blocks));
  auto run = [&](std::int64_t b0, std::int64_t b1) {
    for (std::int64_t b = b0; b < b1; ++b) {
      std::int64_t lo = start + b * kBlock;
      std::int64_t hi = std::min(start + n, lo + kBlock);
      sums[static_cast<std::size_t>(b)] = block_sum(fn, lo, hi);
    }
  };
  if (workers <= 1 || blocks < 2) {
    run(0, blocks);
  } else {
    int w = std::min<std::int64_t>(workers, blocks);
    std::vector<std::thread> pool;
    for (int i = 1; i < w; ++i)
      pool.emplace_back(run, blocks * i / w, blocks * (i + 1) / w);
    run(0, blocks / w);
    for (auto& t : pool) t.join();
  }
  return sums;
}

// Pairwise tree reduction in a fixed order.
std::complex<double> pairwise_reduce(std::vector<std::complex<double>> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::size_t half = (v.size() + 1) / 2;
    for (std::size_t i = 0; 2 * i + 1 < v.size(); ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (v.size() % 2) v[half - 1] = v.back();
    v.resize(half);
  }
  return v[0];
}

std::complex<double> window_mean(const SeqFn& fn, std::int64_t start, std::int64_t n,
                                 int workers) {
  return pairwise_reduce(block_sums(fn, start, n, workers)) / static_cast<double>(n);
}

int next_pow2(std::int64_t n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 FFT, forward sign convention X[j] = sum x[n] e(-2pi i nj/N).
void fft_inplace(std::vector<std::complex<double>>& a) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = -kTwoPi / static_cast<double>(len);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w = 1.0;
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

struct WindowPair {
  std::vector<std::complex<double>> base;     // a_{n+k1}, n in [0, window)
  std::vector<std::complex<double>> shifted;  // a_{n+k2}
};

WindowPair cache_windows(const SeqFn& fn, std::int64_t k1, std::int64_t k2,
                         std::int64_t window) {
  WindowPair wp;
  wp.base.resize(static_cast<std::size_t>(window));
  wp.shifted.resize(static_cast<std::size_t>(window));
  for (std::int64_t n = 0; n < window; ++n) {
    wp.base[static_cast<std::size_t>(n)] = fn(n + k1);
    wp.shifted[static_cast<std::size_t>(n)] = fn(n + k2);
  }
  return wp;
}

// State for one (t, window) evaluation: v_n = e(nt) shifted_n against base_n.
struct TwistState {
  std::vector<std::complex<double>> u;  // conj(v_n) * base_n
  std::vector<double> m;                // |v_n|^2 + |base_n|^2
  std::complex<double> rho;             // mean of u
  double mean_sq = 0.0;                 // mean of m
};

TwistState twist_state(const WindowPair& wp, double t) {
  std::size_t w = wp.base.size();
  TwistState st;
  st.u.resize(w);
  st.m.resize(w);
  std::complex<double> rotor = 1.0;
  std::complex<double> step(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
  std::complex<double> acc = 0.0;
  double macc = 0.0;
  for (std::size_t n = 0; n < w; ++n) {
    if (n && n % 1024 == 0) {
      // periodic renormalization; recompute the rotor to stop drift
      double ang = kTwoPi * t * static_cast<double>(n);
      rotor = {std::cos(ang), std::sin(ang)};
    }
    std::complex<double> v = rotor * wp.shifted[n];
    st.u[n] = std::conj(v) * wp.base[n];
    st.m[n] = std::norm(v) + std::norm(wp.base[n]);
    acc += st.u[n];
    macc += st.m[n];
    rotor *= step;
  }
  st.rho = acc / static_cast<double>(w);
  st.mean_sq = macc / static_cast<double>(w);
  return st;
}

// max_n |c v_n - base_n| for unimodular c = e^{i phi} c0.
double sup_distance_at(const TwistState& st, std::complex<double> c) {
  double worst = 0.0;
  for (std::size_t n = 0; n < st.u.size(); ++n) {
    double d = st.m[n] - 2.0 * (c.real() * st.u[n].real() + c.imag() * st.u[n].imag());
    worst = std::max(worst, d);
  }
  return std::sqrt(std::max(0.0, worst));
}

// d_inf at t, optimizing the unimodular constant: coarse scan of the phase
// then golden-section refinement.
double sup_distance(const TwistState& st, std::complex<double>* c_out = nullptr) {
  std::complex<double> c0 =
      std::abs(st.rho) > 0 ? st.rho / std::abs(st.rho) : std::complex<double>(1.0, 0.0);
  double best = std::numeric_limits<double>::infinity();
  double best_phi = 0.0;
  for (int i = 0; i < 64; ++i) {
    double phi = kTwoPi * i / 64.0;
    double d = sup_distance_at(st, c0 * std::complex<double>(std::cos(phi), std::sin(phi)));
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  double lo = best_phi - kTwoPi / 64.0, hi = best_phi + kTwoPi / 64.0;
  const double gr = 0.6180339887498949;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  auto at = [&](double phi) {
    return sup_distance_at(st, c0 * std::complex<double>(std::cos(phi), std::sin(phi)));
  };
  double f1 = at(x1), f2 = at(x2);
  for (int it = 0; it < 24; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = at(x2);
    }
  }
  double phi = (f1 < f2) ? x1 : x2;
  double d = std::min({best, f1, f2});
  if (c_out) *c_out = c0 * std::complex<double>(std::cos(phi), std::sin(phi));
  return d;
}

double l2_distance(const TwistState& st) {
  return std::sqrt(std::max(0.0, st.mean_sq - 2.0 * std::abs(st.rho)));
}

struct ProbeFit {
  double t = 0.0;
  double d_inf = 0.0;
  double d_2 = 0.0;
};

ProbeFit fit_twist(const WindowPair& wp, int t_grid) {
  std::size_t w = wp.base.size();
  // Coarse pass: |rho(t)| on a uniform grid via FFT of w_n = base conj(shifted).
  int len = next_pow2(std::max<std::int64_t>({t_grid, static_cast<std::int64_t>(w), 64}));
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(len), 0.0);
  for (std::size_t n = 0; n < w; ++n) buf[n] = wp.base[n] * std::conj(wp.shifted[n]);
  fft_inplace(buf);

  // Rank candidate bins by correlation magnitude, then judge the few best by
  // the true sup objective.
  std::vector<int> order(static_cast<std::size_t>(len));
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + std::min(8, len), order.end(),
                    [&](int a, int b) {
                      double ma = std::norm(buf[static_cast<std::size_t>(a)]);
                      double mb = std::norm(buf[static_cast<std::size_t>(b)]);
                      if (ma != mb) return ma > mb;
                      return a < b;
                    });
  double best_t = 0.0, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < std::min(8, len); ++i) {
    double t = static_cast<double>(order[static_cast<std::size_t>(i)]) / len;
    double d = sup_distance(twist_state(wp, t));
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }

  // Golden-section refinement of t around the winning cell.
  const double gr = 0.6180339887498949;
  double lo = best_t - 1.0 / len, hi = best_t + 1.0 / len;
  auto at = [&](double t) { return sup_distance(twist_state(wp, t)); };
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = at(x1), f2 = at(x2);
  for (int it = 0; it < 30; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = at(x2);
    }
  }
  ProbeFit fit;
  double fm = std::min(f1, f2);
  if (fm < best_d) {
    fit.t = (f1 < f2) ? x1 : x2;
    fit.d_inf = fm;
  } else {
    fit.t = best_t;
    fit.d_inf = best_d;
  }
  fit.t -= std::floor(fit.t);
  fit.d_2 = l2_distance(twist_state(wp, fit.t));
  return fit;
}

}  // namespace

AvResult cesaro_av_window(const SeqFn& fn, std::int64_t start, std::int64_t n,
                          int workers) {
  if (n < 2) throw std::invalid_argument("cesaro_av: N must be >= 2");
  AvResult r;
  r.value = window_mean(fn, start, n, workers);
  r.n_used = n;
  r.error_estimate = std::abs(r.value - window_mean(fn, start, n / 2, workers));
  return r;
}

AvResult cesaro_av(const SeqFn& fn, std::int64_t n, int workers) {
  return cesaro_av_window(fn, 0, n, workers);
}

AvResult inner_product(const SeqFn& a, const SeqFn& b, std::int64_t n, int workers) {
  SeqFn prod = [&a, &b](std::int64_t i) { return a(i) * std::conj(b(i)); };
  return cesaro_av(prod, n, workers);
}

double quad_norm(const SeqFn& a, std::int64_t n, int workers) {
  SeqFn sq = [&a](std::int64_t i) {
    return std::complex<double>(std::norm(a(i)), 0.0);
  };
  AvResult r = cesaro_av(sq, n, workers);
  return std::sqrt(std::max(0.0, r.value.real()));
}

OrthoVerdict orthogonality_test(const SeqFn& a, const SeqFn& b, std::int64_t n,
                                double threshold, int workers) {
  if (!(threshold > 0)) throw std::invalid_argument("orthogonality_test: threshold <= 0");
  AvResult ip = inner_product(a, b, n, workers);
  OrthoVerdict v;
  v.statistic = std::abs(ip.value);
  v.threshold = threshold;
  v.error_estimate = ip.error_estimate;
  if (v.statistic > threshold + ip.error_estimate)
    v.kind = OrthoKind::correlated;
  else if (v.statistic + ip.error_estimate < threshold)
    v.kind = OrthoKind::consistent_orthogonal;
  else
    v.kind = OrthoKind::inconclusive;
  return v;
}

std::vector<ProbeRow> shift_compactness_probe(const SeqFn& fn,
                                              const std::vector<std::int64_t>& shifts,
                                              std::int64_t window, int t_grid) {
  if (window < 1000)
    throw std::invalid_argument("shift_compactness_probe: window must be >= 1e3");
  if (t_grid < 2) throw std::invalid_argument("shift_compactness_probe: t_grid too small");
  std::vector<ProbeRow> rows;
  rows.reserve(shifts.size());
  for (std::int64_t k : shifts) {
    WindowPair wp = cache_windows(fn, 0, k, window);
    ProbeFit fit = fit_twist(wp, t_grid);
    rows.push_back({k, fit.t, fit.d_inf, fit.d_2});
  }
  return rows;
}

double twisted_l2_distance(const SeqFn& fn, std::int64_t k1, std::int64_t k2,
                           std::int64_t window, int t_grid) {
  WindowPair wp = cache_windows(fn, k1, k2, window);
  // Minimize d_2 directly: the best constant has closed form, so the best
  // grid t is the correlation argmax; refine around it.
  int len = next_pow2(std::max<std::int64_t>({t_grid, static_cast<std::int64_t>(window), 64}));
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(len), 0.0);
  for (std::size_t n = 0; n < wp.base.size(); ++n) buf[n] = wp.base[n] * std::conj(wp.shifted[n]);
  fft_inplace(buf);
  int best = 0;
  for (int j = 1; j < len; ++j)
    if (std::norm(buf[static_cast<std::size_t>(j)]) > std::norm(buf[static_cast<std::size_t>(best)]))
      best = j;
  const double gr = 0.6180339887498949;
  double lo = static_cast<double>(best) / len - 1.0 / len;
  double hi = static_cast<double>(best) / len + 1.0 / len;
  auto at = [&](double t) { return l2_distance(twist_state(wp, t)); };
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = at(x1), f2 = at(x2);
  for (int it = 0; it < 30; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = at(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace nilseq
