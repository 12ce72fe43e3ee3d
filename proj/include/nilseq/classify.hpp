#pragma once

// Exact classification calculus: Sp_2d(Q) membership, the skew normal form
// Phi^t J Phi = B, verification and bounded search of class-equivalence
// witnesses (Q, m, k, l), and the reduction of a polarized connected system
// to a Heisenberg one.  Everything here is exact rational arithmetic; a
// failed bounded search means "no witness within bounds", never
// "inequivalent".

#include <optional>
#include <vector>

#include "nilseq/nilsys.hpp"
#include "nilseq/qaffine.hpp"
#include "nilseq/ratmatrix.hpp"

namespace nilseq {

// J_2d = [[0, I_d], [-I_d, 0]].
RatMatrix j_matrix(std::size_t d);

// M^t J M = J, cross-validated against the block criterion (A^t C and D^t B
// symmetric, D^t A - B^t C = I); throws logic_error if the two criteria ever
// disagree and invalid_argument on an odd dimension.
bool is_symplectic(const RatMatrix& m);

// For skew-symmetric nonsingular B, an exact rational Phi with
// Phi^t J Phi = B, by symplectic Gram-Schmidt over Q.
RatMatrix skew_normal_form(const RatMatrix& b);

// Canonical class data: the sequence q(t) omega(a_1,b_1)...omega(a_d,b_d).
// t is reduced mod 1 and must be 0 or carry an irrational part; the 2d
// parameters must be independent mod 1.
class ClassParams {
 public:
  ClassParams(QAffineReal t, std::vector<std::pair<QAffineReal, QAffineReal>> pairs);

  std::size_t d() const { return pairs_.size(); }
  const QAffineReal& t() const { return t_; }
  const std::vector<std::pair<QAffineReal, QAffineReal>>& pairs() const { return pairs_; }

  // (a_1..a_d, b_1..b_d) as a column vector.
  std::vector<QAffineReal> parameter_vector() const;

 private:
  QAffineReal t_;
  std::vector<std::pair<QAffineReal, QAffineReal>> pairs_;
};

// Witness data (Q, m, k, l) with m >= 1; Q symplectic, verified on
// construction.
class ClassWitness {
 public:
  ClassWitness(RatMatrix q, long long m, std::vector<long long> k,
               std::vector<long long> l);

  std::size_t d() const { return k_.size(); }
  const RatMatrix& q() const { return q_; }
  long long m() const { return m_; }
  const std::vector<long long>& k() const { return k_; }
  const std::vector<long long>& l() const { return l_; }

  static ClassWitness identity(std::size_t d);

 private:
  RatMatrix q_;
  long long m_;
  std::vector<long long> k_, l_;
};

// True iff Q (a_i + k_i/m, b_i + l_i/m)^t = (a'_i, b'_i)^t exactly and
// m(t - t') - sum_i (k_i b_i - l_i a_i) is an integer.
bool verify_witness(const ClassParams& p, const ClassParams& pprime,
                    const ClassWitness& w);

// The equivalent parameters reached through w; t'_choice must satisfy the
// mod-1 condition (checked).  verify_witness(p, result, w) holds by
// construction.
ClassParams apply_witness(const ClassParams& p, const ClassWitness& w,
                          const QAffineReal& tprime_choice);

// A t' satisfying the mod-1 condition for (p, w): t - (1/m) sum(k b - l a),
// reduced mod 1.
QAffineReal witness_tprime(const ClassParams& p, const ClassWitness& w);

struct SearchBounds {
  long long m_max = 6;
  long long shift_max = 4;
  long long height_max = 5;
};

struct SearchResult {
  std::optional<ClassWitness> witness;
  bool searched = false;  // false when d >= 2 (verification-only regime)
};

// Exhaustive for d in {0, 1}: m <= m_max, |k|,|l| <= shift_max, Q in SL_2(Q)
// with entry heights <= height_max.  Since the class parameters are
// independent mod 1, the coefficient part of the matching condition pins Q
// uniquely, so the SL_2 enumeration collapses to an exact solve; the (m,k,l)
// grid is scanned in lexicographic order and the first verified witness is
// returned.  Absence means "no witness within bounds".
SearchResult search_witness(const ClassParams& p, const ClassParams& pprime,
                            const SearchBounds& bounds);

// Inverse and composed witnesses, built by exact solve; both are verified
// against the given parameter triples before being returned.
ClassWitness invert_witness(const ClassParams& p, const ClassParams& pprime,
                            const ClassWitness& w);
ClassWitness compose_witness(const ClassParams& p, const ClassParams& pmid,
                             const ClassParams& pprime, const ClassWitness& w1,
                             const ClassWitness& w2);

struct PolarizedReduction {
  RatMatrix phi;            // Phi^t J Phi = A^t - A, exact
  HeisenbergSystem system;  // translation (Phi delta, 1)
  bool minimal = false;
};

// Reduction of a polarized connected system to a Heisenberg one;
// minimality is preserved in both directions and is re-checked on the output.
PolarizedReduction polarized_to_heisenberg(const PolarizedSystem& sys);

}  // namespace nilseq
