#pragma once

// The nilsequence expression language: e(s), q(t), omega(alpha, beta), the
// family M, products / sums / conjugates / shifts, orbit nodes, and the
// floor-sequence probes of the non-examples.  Expressions are immutable
// trees; eval is pure.

#include <complex>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "nilseq/nilsys.hpp"
#include "nilseq/qaffine.hpp"

namespace nilseq {

class NilseqExpr;
using ExprPtr = std::shared_ptr<const NilseqExpr>;

struct ExpNode {
  QAffineReal s;
};
struct QuadNode {
  QAffineReal t;
};
struct OmegaNode {
  QAffineReal alpha;
  QAffineReal beta;
};
struct ProductNode {
  std::vector<ExprPtr> children;  // kept flattened
};
struct SumNode {
  std::vector<std::pair<std::complex<double>, ExprPtr>> terms;
};
struct ConjNode {
  ExprPtr child;
};
struct ShiftNode {
  std::int64_t k = 0;  // composes additively
  ExprPtr child;
};
struct OrbitNode {
  std::variant<HeisenbergSystem, AffineSkewSystem> system;
};
struct FloorLinearNode {
  QAffineReal alpha;
  QAffineReal beta;
};
struct FloorQuadNode {
  QAffineReal alpha;
  QAffineReal beta;
};

class NilseqExpr {
 public:
  using Node = std::variant<ExpNode, QuadNode, OmegaNode, ProductNode, SumNode, ConjNode,
                            ShiftNode, OrbitNode, FloorLinearNode, FloorQuadNode>;

  explicit NilseqExpr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

ExprPtr make_exp(QAffineReal s);
ExprPtr make_quad(QAffineReal t);
ExprPtr make_omega(QAffineReal alpha, QAffineReal beta);
ExprPtr make_product(std::vector<ExprPtr> children);  // flattens nested products
ExprPtr make_sum(std::vector<std::pair<std::complex<double>, ExprPtr>> terms);
ExprPtr make_conj(ExprPtr child);
ExprPtr make_orbit(HeisenbergSystem sys);
ExprPtr make_orbit(AffineSkewSystem sys);
ExprPtr make_floor_linear(QAffineReal alpha, QAffineReal beta);
ExprPtr make_floor_quad(QAffineReal alpha, QAffineReal beta);

// eval(shift(e, k), n) == eval(e, n + k); shift-of-shift folds into one node.
ExprPtr shift(ExprPtr e, std::int64_t k);

// Pointwise value a_n.  Phases split an exact big-integer mod-1 reduction of
// the rational part from a double-double reduction of the irrational part;
// |n| is capped at 2^52 so the float path stays meaningful.
std::complex<double> eval(const NilseqExpr& e, std::int64_t n);
inline std::complex<double> eval(const ExprPtr& e, std::int64_t n) { return eval(*e, n); }

// e(floor(n alpha) beta) and e(floor(n alpha) n beta), the floor-phase
// probes used on the non-examples.
std::complex<double> floor_linear_value(const QAffineReal& alpha, const QAffineReal& beta,
                                        std::int64_t n);
std::complex<double> floor_quad_value(const QAffineReal& alpha, const QAffineReal& beta,
                                      std::int64_t n);

// Canonical-family parameters e(s) q(t) omega(a_1,b_1)...omega(a_d,b_d).
// Invariants: the alphas and betas are jointly independent mod 1, and t is
// either exactly 0 or carries an irrational part.
struct MFamilyParams {
  QAffineReal s;
  QAffineReal t;
  std::vector<std::pair<QAffineReal, QAffineReal>> pairs;
};

// Builds the product expression for the family member; d = 0 gives the empty
// product (the constant sequence 1).  Throws naming a violated relation when
// the parameters are dependent.
ExprPtr m_sequence(const MFamilyParams& p);

}  // namespace nilseq
