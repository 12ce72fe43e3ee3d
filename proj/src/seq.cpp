#include "nilseq/seq.hpp"

#include <cmath>
#include <stdexcept>

namespace nilseq {

namespace {

constexpr std::int64_t kMaxN = std::int64_t(1) << 52;

void check_n(std::int64_t n) {
  if (n > kMaxN || n < -kMaxN)
    throw std::domain_error("eval: |n| exceeds the exact-phase range (2^52)");
}

// omega_n(alpha, beta) = kappa(n alpha, n beta) e(n(n-1)/2 alpha beta),
// evaluated through the recentering identity so every phase is reduced in
// double-double:  kappa(s, t) = e(-J s) kappa(s, t0) with J = round(t).
std::complex<double> omega_value(const OmegaNode& node, std::int64_t n) {
  BigInt nn(n);
  BigInt tn = nn * (nn - 1) / 2;

  dd s_frac = qa_phase_frac(nn, node.alpha);  // n alpha mod 1
  dd t_full = dd_mul(qa_to_dd(node.beta), static_cast<double>(n));
  dd j = dd_round_nearest(t_full);
  dd t0 = dd_sub(t_full, j);

  dd cross = dd_mul(qa_to_dd(node.alpha), qa_to_dd(node.beta));
  dd phase = frac_bigint_times_dd(tn, cross);
  phase = dd_add(phase, dd_frac(dd_neg(dd_mul(j, s_frac))));

  std::complex<double> kap = kappa_dd(s_frac, t0);
  return cis_frac(dd_frac(phase)) * kap;
}

}  // namespace

ExprPtr make_exp(QAffineReal s) { return std::make_shared<NilseqExpr>(ExpNode{std::move(s)}); }
ExprPtr make_quad(QAffineReal t) { return std::make_shared<NilseqExpr>(QuadNode{std::move(t)}); }

ExprPtr make_omega(QAffineReal alpha, QAffineReal beta) {
  require_same_basis(alpha, beta);
  return std::make_shared<NilseqExpr>(OmegaNode{std::move(alpha), std::move(beta)});
}

ExprPtr make_product(std::vector<ExprPtr> children) {
  std::vector<ExprPtr> flat;
  for (auto& c : children) {
    if (!c) throw std::invalid_argument("make_product: null child");
    if (const auto* p = std::get_if<ProductNode>(&c->node()))
      flat.insert(flat.end(), p->children.begin(), p->children.end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.size() == 1) return flat.front();
  return std::make_shared<NilseqExpr>(ProductNode{std::move(flat)});
}

ExprPtr make_sum(std::vector<std::pair<std::complex<double>, ExprPtr>> terms) {
  return std::make_shared<NilseqExpr>(SumNode{std::move(terms)});
}

ExprPtr make_conj(ExprPtr child) {
  return std::make_shared<NilseqExpr>(ConjNode{std::move(child)});
}

ExprPtr make_orbit(HeisenbergSystem sys) {
  return std::make_shared<NilseqExpr>(OrbitNode{std::move(sys)});
}
ExprPtr make_orbit(AffineSkewSystem sys) {
  return std::make_shared<NilseqExpr>(OrbitNode{std::move(sys)});
}

ExprPtr make_floor_linear(QAffineReal alpha, QAffineReal beta) {
  return std::make_shared<NilseqExpr>(FloorLinearNode{std::move(alpha), std::move(beta)});
}
ExprPtr make_floor_quad(QAffineReal alpha, QAffineReal beta) {
  return std::make_shared<NilseqExpr>(FloorQuadNode{std::move(alpha), std::move(beta)});
}

ExprPtr shift(ExprPtr e, std::int64_t k) {
  if (!e) throw std::invalid_argument("shift: null expression");
  if (k > kMaxN || k < -kMaxN)
    throw std::domain_error("shift: |k| exceeds the exact-phase range (2^52)");
  if (const auto* s = std::get_if<ShiftNode>(&e->node()))
    return std::make_shared<NilseqExpr>(ShiftNode{s->k + k, s->child});
  return std::make_shared<NilseqExpr>(ShiftNode{k, std::move(e)});
}

std::complex<double> floor_linear_value(const QAffineReal& alpha, const QAffineReal& beta,
                                        std::int64_t n) {
  check_n(n);
  BigInt m = qa_floor_times_int(n, alpha);
  return cis_frac(qa_phase_frac(m, beta));
}

std::complex<double> floor_quad_value(const QAffineReal& alpha, const QAffineReal& beta,
                                      std::int64_t n) {
  check_n(n);
  BigInt m = qa_floor_times_int(n, alpha);
  return cis_frac(qa_phase_frac(m * n, beta));
}

std::complex<double> eval(const NilseqExpr& e, std::int64_t n) {
  check_n(n);
  return std::visit(
      [n](const auto& node) -> std::complex<double> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExpNode>) {
          return cis_frac(qa_phase_frac(BigInt(n), node.s));
        } else if constexpr (std::is_same_v<T, QuadNode>) {
          BigInt nn(n);
          return cis_frac(qa_phase_frac(nn * (nn - 1) / 2, node.t));
        } else if constexpr (std::is_same_v<T, OmegaNode>) {
          return omega_value(node, n);
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          std::complex<double> v = 1.0;
          for (const auto& c : node.children) v *= eval(*c, n);
          return v;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::complex<double> v = 0.0;
          for (const auto& [coef, term] : node.terms) v += coef * eval(*term, n);
          return v;
        } else if constexpr (std::is_same_v<T, ConjNode>) {
          return std::conj(eval(*node.child, n));
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return eval(*node.child, n + node.k);
        } else if constexpr (std::is_same_v<T, OrbitNode>) {
          if (const auto* h = std::get_if<HeisenbergSystem>(&node.system))
            return heisenberg_orbit_value(*h, n);
          return affine_orbit_closed_form(std::get<AffineSkewSystem>(node.system), n);
        } else if constexpr (std::is_same_v<T, FloorLinearNode>) {
          return floor_linear_value(node.alpha, node.beta, n);
        } else {
          static_assert(std::is_same_v<T, FloorQuadNode>);
          return floor_quad_value(node.alpha, node.beta, n);
        }
      },
      e.node());
}

ExprPtr m_sequence(const MFamilyParams& p) {
  std::vector<QAffineReal> params;
  for (const auto& [a, b] : p.pairs) {
    params.push_back(a);
    params.push_back(b);
  }
  if (auto relation = find_rational_relation(params))
    throw std::invalid_argument("m_sequence: dependent parameters: " + *relation +
                                " (ordered a1, b1, a2, b2, ...)");
  if (!p.t.is_zero() && p.t.is_rational())
    throw std::invalid_argument("m_sequence: t must be 0 or carry an irrational part");

  std::vector<ExprPtr> factors;
  if (!p.s.is_zero()) factors.push_back(make_exp(p.s));
  if (!p.t.is_zero()) factors.push_back(make_quad(p.t));
  for (const auto& [a, b] : p.pairs) factors.push_back(make_omega(a, b));
  return make_product(std::move(factors));
}

}  // namespace nilseq
