#pragma once

// Exact reals of the form  const + sum_j c_j * xi_j  where const and the c_j
// are rationals and the xi_j are declared irrationals carried symbolically
// with a float approximation.  Rational relations between such values are
// decidable by exact linear algebra on the coefficients, which is what makes
// the classification conditions checkable; products of two irrationals are
// never formed exactly and fall back to floats.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilseq/dd.hpp"
#include "nilseq/rational.hpp"

namespace nilseq {

class IrrationalBasis {
 public:
  struct Entry {
    std::string label;
    double approx = 0.0;
    std::string definition;
  };

  IrrationalBasis(std::string name, std::vector<Entry> entries)
      : name_(std::move(name)), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!std::isfinite(entries_[i].approx))
        throw std::invalid_argument("IrrationalBasis: non-finite approx for " +
                                    entries_[i].label);
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[j].label == entries_[i].label)
          throw std::invalid_argument("IrrationalBasis: duplicate label " +
                                      entries_[i].label);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].label == label) return i;
    return std::nullopt;
  }

 private:
  std::string name_;
  std::vector<Entry> entries_;
};

using BasisPtr = std::shared_ptr<const IrrationalBasis>;

// The assertion of pairwise rational independence of {1} u basis is the
// caller's; we record the basis and never attempt a proof.
inline BasisPtr make_basis(std::string name,
                           std::vector<IrrationalBasis::Entry> entries) {
  return std::make_shared<const IrrationalBasis>(std::move(name), std::move(entries));
}

// The basis used by the CLI defaults and the acceptance suite.
inline BasisPtr standard_basis() {
  return make_basis("standard",
                    {{"xi1", 1.4142135623730951, "sqrt(2)"},
                     {"xi2", 1.7320508075688772, "sqrt(3)"},
                     {"xi3", 2.2360679774997896, "sqrt(5)"},
                     {"xi4", 0.14159265358979312, "pi - 3"}});
}

class QAffineReal {
 public:
  QAffineReal() = default;
  QAffineReal(Rational c) : const_term_(std::move(c)) {}
  QAffineReal(long long c) : const_term_(c) {}
  QAffineReal(Rational c, std::map<std::size_t, Rational> coeffs, BasisPtr basis)
      : const_term_(std::move(c)), coeffs_(std::move(coeffs)), basis_(std::move(basis)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (!basis_ || it->first >= basis_->size())
        throw std::invalid_argument("QAffineReal: coefficient index out of basis range");
      it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
    }
    if (coeffs_.empty()) basis_.reset();
  }

  // xi_i as a value.
  static QAffineReal symbol(const BasisPtr& basis, std::size_t index,
                            Rational coeff = Rational(1)) {
    return QAffineReal(Rational(0), {{index, std::move(coeff)}}, basis);
  }

  const Rational& const_term() const { return const_term_; }
  const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }
  const BasisPtr& basis() const { return basis_; }

  bool is_rational() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && const_term_.is_zero(); }

  friend bool operator==(const QAffineReal& a, const QAffineReal& b) {
    if (!compatible(a, b)) return false;
    return a.const_term_ == b.const_term_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const QAffineReal& a, const QAffineReal& b) { return !(a == b); }

  // Pure rationals are basis-agnostic; otherwise both sides must reference
  // the same basis object.
  static bool compatible(const QAffineReal& a, const QAffineReal& b) {
    return !a.basis_ || !b.basis_ || a.basis_ == b.basis_;
  }

 private:
  Rational const_term_;
  std::map<std::size_t, Rational> coeffs_;  // index -> nonzero coefficient
  BasisPtr basis_;
};

inline void require_same_basis(const QAffineReal& a, const QAffineReal& b) {
  if (!QAffineReal::compatible(a, b))
    throw std::invalid_argument("QAffineReal: basis mismatch");
}

inline QAffineReal qa_add(const QAffineReal& a, const QAffineReal& b) {
  require_same_basis(a, b);
  std::map<std::size_t, Rational> coeffs = a.coeffs();
  for (const auto& [i, c] : b.coeffs()) {
    auto it = coeffs.find(i);
    if (it == coeffs.end())
      coeffs.emplace(i, c);
    else
      it->second += c;
  }
  BasisPtr basis = a.basis() ? a.basis() : b.basis();
  return QAffineReal(a.const_term() + b.const_term(), std::move(coeffs), basis);
}

inline QAffineReal qa_scale(const Rational& c, const QAffineReal& a) {
  if (c.is_zero()) return QAffineReal(Rational(0));
  std::map<std::size_t, Rational> coeffs;
  for (const auto& [i, v] : a.coeffs()) coeffs.emplace(i, c * v);
  return QAffineReal(c * a.const_term(), std::move(coeffs), a.basis());
}

inline QAffineReal qa_neg(const QAffineReal& a) { return qa_scale(Rational(-1), a); }

inline QAffineReal qa_sub(const QAffineReal& a, const QAffineReal& b) {
  return qa_add(a, qa_neg(b));
}

// Reduce the constant term into [0, 1); the result is congruent to the
// input mod 1, exactly.
inline QAffineReal qa_mod1(const QAffineReal& a) {
  return QAffineReal(a.const_term().frac(), a.coeffs(), a.basis());
}

inline bool is_integer(const QAffineReal& a) {
  return a.coeffs().empty() && a.const_term().is_integer();
}

// Float image: const + sum coeff*approx, evaluated left-to-right in basis
// declaration order (deterministic).
inline double to_float(const QAffineReal& a) {
  double v = a.const_term().to_double();
  for (const auto& [i, c] : a.coeffs()) v += c.to_double() * a.basis()->entry(i).approx;
  return v;
}

// Same image in double-double, for phase reduction.
inline dd qa_to_dd(const QAffineReal& a) {
  dd v = a.const_term().to_dd();
  for (const auto& [i, c] : a.coeffs())
    v = dd_add(v, dd_mul(c.to_dd(), a.basis()->entry(i).approx));
  return v;
}

namespace detail {

// Gathers the coefficient rows of xs over their common basis; throws on a
// basis mismatch.  Rows are indexed [value][basis entry].
std::vector<std::vector<Rational>> coefficient_rows(std::span<const QAffineReal> xs);

}  // namespace detail

// True iff the only integer vector (n_1..n_k) with sum n_i x_i rational is
// zero; decided by the exact rank of the coefficient matrix (an integer
// relation exists iff a rational one does).
bool independent_mod1(std::span<const QAffineReal> xs);
inline bool independent_mod1(const std::vector<QAffineReal>& xs) {
  return independent_mod1(std::span<const QAffineReal>(xs));
}

// When dependent, names one violated relation, e.g. "2*xi1 - 1*xi2 is
// rational"; nullopt when independent.
std::optional<std::string> find_rational_relation(std::span<const QAffineReal> xs);

// frac(K * a) in [0,1) as a double-double: the rational part K*const is
// reduced exactly in big integers, each irrational term by chunked
// double-double reduction (accuracy capped as documented in rational.hpp).
dd qa_phase_frac(const BigInt& k, const QAffineReal& a);

// floor(n * a), honoring the exact rational part: when n*a is an exact
// rational the floor is computed in exact arithmetic with no float wobble.
BigInt qa_floor_times_int(std::int64_t n, const QAffineReal& a);

}  // namespace nilseq
