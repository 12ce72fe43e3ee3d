#include "nilseq/qaffine.hpp"

#include <algorithm>
#include <sstream>

namespace nilseq {

namespace detail {

std::vector<std::vector<Rational>> coefficient_rows(std::span<const QAffineReal> xs) {
  BasisPtr basis;
  for (const auto& x : xs)
    if (x.basis()) {
      if (basis && basis != x.basis())
        throw std::invalid_argument("QAffineReal: basis mismatch");
      basis = x.basis();
    }
  std::size_t width = basis ? basis->size() : 0;
  std::vector<std::vector<Rational>> rows;
  rows.reserve(xs.size());
  for (const auto& x : xs) {
    std::vector<Rational> row(width, Rational(0));
    for (const auto& [i, c] : x.coeffs()) row[i] = c;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Gaussian elimination over Q with row-operation tracking.  Returns the rank
// and, via `relation`, the combination that witnesses the first dependent row.
struct EliminationResult {
  std::size_t rank = 0;
  std::optional<std::vector<Rational>> relation;  // length = #rows
};

EliminationResult eliminate(std::vector<std::vector<Rational>> rows) {
  std::size_t k = rows.size();
  std::size_t width = k ? rows[0].size() : 0;
  // Augment with the identity to track row operations.
  std::vector<std::vector<Rational>> ops(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) ops[i][i] = Rational(1);

  EliminationResult res;
  std::size_t row = 0;
  for (std::size_t col = 0; col < width && row < k; ++col) {
    std::size_t pivot = row;
    while (pivot < k && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == k) continue;
    std::swap(rows[pivot], rows[row]);
    std::swap(ops[pivot], ops[row]);
    for (std::size_t r = row + 1; r < k; ++r) {
      if (rows[r][col].is_zero()) continue;
      Rational f = rows[r][col] / rows[row][col];
      for (std::size_t c = col; c < width; ++c) rows[r][c] -= f * rows[row][c];
      for (std::size_t c = 0; c < k; ++c) ops[r][c] -= f * ops[row][c];
    }
    ++row;
  }
  res.rank = row;
  if (row < k) res.relation = ops[row];
  return res;
}

}  // namespace detail

bool independent_mod1(std::span<const QAffineReal> xs) {
  if (xs.empty()) return true;
  auto rows = detail::coefficient_rows(xs);
  return detail::eliminate(std::move(rows)).rank == xs.size();
}

std::optional<std::string> find_rational_relation(std::span<const QAffineReal> xs) {
  if (xs.empty()) return std::nullopt;
  auto rows = detail::coefficient_rows(xs);
  auto res = detail::eliminate(std::move(rows));
  if (res.rank == xs.size()) return std::nullopt;

  // Clear denominators so the relation reads in integers.
  BigInt lcm = 1;
  for (const auto& c : *res.relation)
    lcm = boost::multiprecision::lcm(lcm, c.den());
  std::ostringstream msg;
  bool first = true;
  for (std::size_t i = 0; i < res.relation->size(); ++i) {
    Rational c = (*res.relation)[i] * Rational(lcm);
    if (c.is_zero()) continue;
    if (!first) msg << (c.sign() > 0 ? " + " : " - ");
    else if (c.sign() < 0) msg << "-";
    BigInt a = c.num() < 0 ? BigInt(-c.num()) : c.num();
    msg << a.str() << "*x" << (i + 1);
    first = false;
  }
  msg << " is rational";
  return msg.str();
}

dd qa_phase_frac(const BigInt& k, const QAffineReal& a) {
  // Exact path for the rational part: frac(k*p/q) = ((k*p mod q)+q mod q)/q.
  const Rational& r = a.const_term();
  BigInt num = k * r.num() % r.den();
  if (num < 0) num += r.den();
  dd acc = dd_div(bigint_to_dd(num), bigint_to_dd(r.den()));
  for (const auto& [i, c] : a.coeffs()) {
    dd y = dd_mul(c.to_dd(), a.basis()->entry(i).approx);
    acc = dd_add(acc, frac_bigint_times_dd(k, y));
  }
  return dd_frac(acc);
}

BigInt qa_floor_times_int(std::int64_t n, const QAffineReal& a) {
  Rational exact = Rational(BigInt(n)) * a.const_term();
  if (a.is_rational()) return exact.floor();

  BigInt f = exact.floor();
  dd rest = (exact - Rational(f)).to_dd();  // in [0,1)
  for (const auto& [i, c] : a.coeffs()) {
    dd y = dd_mul(c.to_dd(), a.basis()->entry(i).approx);
    rest = dd_add(rest, dd_mul(y, static_cast<double>(n)));
  }
  dd fl = dd_floor(rest);
  // The irrational part is bounded by |n|*|coeffs|, so the floor fits a
  // double exactly for the supported |n| <= 2^52 range.
  return f + BigInt(fl.hi) + BigInt(fl.lo);
}

}  // namespace nilseq
