#pragma once

// Cesaro averaging: Av, the inner product and quadratic norm, orthogonality
// verdicts, and the shift-compactness probe used on the non-examples.
// Summation is deterministic regardless of worker count: fixed 64-element
// blocks with compensated accumulation, then a fixed pairwise reduction.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nilseq/seq.hpp"

namespace nilseq {

using SeqFn = std::function<std::complex<double>(std::int64_t)>;

inline SeqFn make_evaluator(ExprPtr e) {
  return [e = std::move(e)](std::int64_t n) { return eval(*e, n); };
}

struct AvResult {
  std::complex<double> value;
  std::int64_t n_used = 0;
  double error_estimate = 0.0;  // |Av_N - Av_{N/2}|
};

AvResult cesaro_av(const SeqFn& fn, std::int64_t n, int workers = 1);
inline AvResult cesaro_av(const ExprPtr& e, std::int64_t n, int workers = 1) {
  return cesaro_av(make_evaluator(e), n, workers);
}

// Average over the window [start, start + n).
AvResult cesaro_av_window(const SeqFn& fn, std::int64_t start, std::int64_t n,
                          int workers = 1);

// <a|b> = Av(a conj(b)).
AvResult inner_product(const SeqFn& a, const SeqFn& b, std::int64_t n, int workers = 1);
inline AvResult inner_product(const ExprPtr& a, const ExprPtr& b, std::int64_t n,
                              int workers = 1) {
  return inner_product(make_evaluator(a), make_evaluator(b), n, workers);
}

// ((1/N) sum |a_n|^2)^{1/2}.
double quad_norm(const SeqFn& a, std::int64_t n, int workers = 1);
inline double quad_norm(const ExprPtr& a, std::int64_t n, int workers = 1) {
  return quad_norm(make_evaluator(a), n, workers);
}

enum class OrthoKind { consistent_orthogonal, correlated, inconclusive };

struct OrthoVerdict {
  OrthoKind kind = OrthoKind::inconclusive;
  double statistic = 0.0;  // |<a|b>_N|
  double threshold = 0.0;
  double error_estimate = 0.0;
};

OrthoVerdict orthogonality_test(const SeqFn& a, const SeqFn& b, std::int64_t n,
                                double threshold, int workers = 1);
inline OrthoVerdict orthogonality_test(const ExprPtr& a, const ExprPtr& b, std::int64_t n,
                                       double threshold, int workers = 1) {
  return orthogonality_test(make_evaluator(a), make_evaluator(b), n, threshold, workers);
}

// One probe row: over the window, the sup and quadratic distances between
// e(nt) a_{n+k} and a_n, minimized over t (coarse grid of size >= t_grid,
// then golden-section refinement) and over a unimodular constant.  d_inf is
// the max over sampled n at the reported (t, c) -- an honest upper bound for
// the searched minimum; d_2 is taken at the same t with its own optimal
// constant.
struct ProbeRow {
  std::int64_t k = 0;
  double best_t = 0.0;
  double d_inf = 0.0;
  double d_2 = 0.0;
};

std::vector<ProbeRow> shift_compactness_probe(const SeqFn& fn,
                                              const std::vector<std::int64_t>& shifts,
                                              std::int64_t window, int t_grid);
inline std::vector<ProbeRow> shift_compactness_probe(
    const ExprPtr& e, const std::vector<std::int64_t>& shifts, std::int64_t window,
    int t_grid) {
  return shift_compactness_probe(make_evaluator(e), shifts, window, t_grid);
}

// Quadratic distance min over t (and a unimodular constant) between the
// windows a_{n+k1} and a_{n+k2}; the triangle-inequality test uses this.
double twisted_l2_distance(const SeqFn& fn, std::int64_t k1, std::int64_t k2,
                           std::int64_t window, int t_grid);

}  // namespace nilseq
