#include "nilseq/classify.hpp"

#include <stdexcept>

namespace nilseq {

namespace {

// sum_i (k_i b_i - l_i a_i) as an exact value.
QAffineReal shift_pairing(const ClassParams& p, const std::vector<Rational>& kk,
                          const std::vector<Rational>& ll) {
  QAffineReal s{Rational(0)};
  for (std::size_t i = 0; i < p.d(); ++i) {
    s = qa_add(s, qa_scale(kk[i], p.pairs()[i].second));
    s = qa_sub(s, qa_scale(ll[i], p.pairs()[i].first));
  }
  return s;
}

std::vector<Rational> to_rational_vec(const std::vector<long long>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

// Coefficient matrix of the parameter vector over the full basis (2d x B).
RatMatrix coefficient_matrix(const ClassParams& p, std::size_t basis_size) {
  auto vec = p.parameter_vector();
  RatMatrix c(vec.size(), basis_size);
  for (std::size_t r = 0; r < vec.size(); ++r)
    for (const auto& [idx, coeff] : vec[r].coeffs()) c(r, idx) = coeff;
  return c;
}

std::size_t basis_size_of(const ClassParams& p, const ClassParams& q) {
  for (const auto& [a, b] : p.pairs()) {
    if (a.basis()) return a.basis()->size();
    if (b.basis()) return b.basis()->size();
  }
  for (const auto& [a, b] : q.pairs()) {
    if (a.basis()) return a.basis()->size();
    if (b.basis()) return b.basis()->size();
  }
  return 0;
}

bool within_height(const RatMatrix& q, long long height) {
  BigInt h(height);
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      if (q(r, c).height() > h) return false;
  return true;
}

}  // namespace

RatMatrix j_matrix(std::size_t d) {
  if (d < 1) throw std::invalid_argument("j_matrix: d must be >= 1");
  RatMatrix j(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    j(i, d + i) = Rational(1);
    j(d + i, i) = Rational(-1);
  }
  return j;
}

bool is_symplectic(const RatMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
    throw std::invalid_argument("is_symplectic: need a square matrix of even dimension");
  std::size_t d = m.rows() / 2;
  RatMatrix j = j_matrix(d);
  bool direct = (m.transpose() * j * m == j);

  // Block criterion: A^t C and D^t B symmetric, D^t A - B^t C = I.
  RatMatrix a(d, d), b(d, d), c(d, d), dm(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t col = 0; col < d; ++col) {
      a(r, col) = m(r, col);
      b(r, col) = m(r, col + d);
      c(r, col) = m(r + d, col);
      dm(r, col) = m(r + d, col + d);
    }
  RatMatrix atc = a.transpose() * c;
  RatMatrix dtb = dm.transpose() * b;
  bool blocks = (atc == atc.transpose()) && (dtb == dtb.transpose()) &&
                (dm.transpose() * a - b.transpose() * c == RatMatrix::identity(d));
  if (direct != blocks)
    throw std::logic_error("is_symplectic: definition and block criterion disagree");
  return direct;
}

RatMatrix skew_normal_form(const RatMatrix& b) {
  std::size_t n = b.rows();
  if (b.cols() != n || n == 0 || n % 2 != 0)
    throw std::invalid_argument("skew_normal_form: need even dimension");
  if (b.transpose() != RatMatrix(2 * (n / 2), 2 * (n / 2)) - b)
    throw std::invalid_argument("skew_normal_form: matrix is not skew-symmetric");

  auto form = [&b, n](const std::vector<Rational>& u, const std::vector<Rational>& v) {
    Rational s(0);
    for (std::size_t r = 0; r < n; ++r) {
      if (u[r].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!v[c].is_zero()) s += u[r] * b(r, c) * v[c];
    }
    return s;
  };

  // Symplectic Gram-Schmidt: peel off hyperbolic pairs (u, v) with
  // form(u, v) = 1 and B-orthogonalize the rest against each pair.
  std::vector<std::vector<Rational>> remaining;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = Rational(1);
    remaining.push_back(std::move(e));
  }
  std::vector<std::vector<Rational>> us, vs;
  while (!remaining.empty()) {
    std::vector<Rational> u = remaining.front();
    remaining.erase(remaining.begin());
    std::size_t partner = remaining.size();
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!form(u, remaining[i]).is_zero()) {
        partner = i;
        break;
      }
    if (partner == remaining.size())
      throw std::domain_error("skew_normal_form: singular form");
    std::vector<Rational> v = remaining[partner];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(partner));
    Rational scale = form(u, v);
    for (auto& x : v) x /= scale;
    for (auto& w : remaining) {
      Rational wu = form(w, u), wv = form(w, v);
      for (std::size_t i = 0; i < n; ++i) w[i] = w[i] - wv * u[i] + wu * v[i];
    }
    us.push_back(std::move(u));
    vs.push_back(std::move(v));
  }

  // Columns (u_1..u_d, v_1..v_d) give S with S^t B S = J, so Phi = S^{-1}.
  std::size_t d = us.size();
  RatMatrix s(n, n);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      s(r, c) = us[c][r];
      s(r, c + d) = vs[c][r];
    }
  RatMatrix phi = s.inverse();
  if (phi.transpose() * j_matrix(d) * phi != b)
    throw std::logic_error("skew_normal_form: defining equation not met");
  return phi;
}

ClassParams::ClassParams(QAffineReal t, std::vector<std::pair<QAffineReal, QAffineReal>> pairs)
    : t_(qa_mod1(t)), pairs_(std::move(pairs)) {
  if (!pairs_.empty()) {
    auto vec = parameter_vector();
    if (auto relation = find_rational_relation(vec))
      throw std::invalid_argument("ClassParams: dependent parameters: " + *relation +
                                  " (ordered a1..ad, b1..bd)");
  }
}

std::vector<QAffineReal> ClassParams::parameter_vector() const {
  std::vector<QAffineReal> v;
  v.reserve(2 * pairs_.size());
  for (const auto& [a, b] : pairs_) v.push_back(a);
  for (const auto& [a, b] : pairs_) v.push_back(b);
  return v;
}

ClassWitness::ClassWitness(RatMatrix q, long long m, std::vector<long long> k,
                           std::vector<long long> l)
    : q_(std::move(q)), m_(m), k_(std::move(k)), l_(std::move(l)) {
  if (m_ < 1) throw std::invalid_argument("ClassWitness: m must be >= 1");
  if (k_.size() != l_.size()) throw std::invalid_argument("ClassWitness: |k| != |l|");
  std::size_t d = k_.size();
  if (q_.rows() != 2 * d || q_.cols() != 2 * d)
    throw std::invalid_argument("ClassWitness: Q must be 2d x 2d");
  if (d > 0 && !is_symplectic(q_))
    throw std::invalid_argument("ClassWitness: Q is not symplectic");
}

ClassWitness ClassWitness::identity(std::size_t d) {
  return ClassWitness(RatMatrix::identity(2 * d), 1, std::vector<long long>(d, 0),
                      std::vector<long long>(d, 0));
}

namespace {

std::vector<QAffineReal> shifted_vector(const ClassParams& p, const ClassWitness& w) {
  std::vector<QAffineReal> u = p.parameter_vector();
  for (std::size_t i = 0; i < p.d(); ++i) {
    u[i] = qa_add(u[i], QAffineReal(Rational(w.k()[i], w.m())));
    u[p.d() + i] = qa_add(u[p.d() + i], QAffineReal(Rational(w.l()[i], w.m())));
  }
  return u;
}

bool mod1_condition(const ClassParams& p, const ClassParams& pprime,
                    const ClassWitness& w) {
  QAffineReal lhs = qa_scale(Rational(w.m()), qa_sub(p.t(), pprime.t()));
  QAffineReal rhs = shift_pairing(p, to_rational_vec(w.k()), to_rational_vec(w.l()));
  return is_integer(qa_sub(lhs, rhs));
}

}  // namespace

bool verify_witness(const ClassParams& p, const ClassParams& pprime,
                    const ClassWitness& w) {
  if (p.d() != pprime.d() || p.d() != w.d())
    throw std::invalid_argument("verify_witness: dimension mismatch");
  if (p.d() > 0) {
    std::vector<QAffineReal> v = w.q().apply(shifted_vector(p, w));
    std::vector<QAffineReal> target = pprime.parameter_vector();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != target[i]) return false;
  }
  return mod1_condition(p, pprime, w);
}

QAffineReal witness_tprime(const ClassParams& p, const ClassWitness& w) {
  QAffineReal pairing = shift_pairing(p, to_rational_vec(w.k()), to_rational_vec(w.l()));
  return qa_mod1(qa_sub(p.t(), qa_scale(Rational(1, w.m()), pairing)));
}

ClassParams apply_witness(const ClassParams& p, const ClassWitness& w,
                          const QAffineReal& tprime_choice) {
  if (p.d() != w.d()) throw std::invalid_argument("apply_witness: dimension mismatch");
  QAffineReal lhs = qa_scale(Rational(w.m()), qa_sub(p.t(), tprime_choice));
  QAffineReal rhs = shift_pairing(p, to_rational_vec(w.k()), to_rational_vec(w.l()));
  if (!is_integer(qa_sub(lhs, rhs)))
    throw std::invalid_argument("apply_witness: t' violates the mod-1 condition");
  std::vector<QAffineReal> v = w.q().apply(shifted_vector(p, w));
  std::vector<std::pair<QAffineReal, QAffineReal>> pairs;
  for (std::size_t i = 0; i < p.d(); ++i) pairs.emplace_back(v[i], v[p.d() + i]);
  return ClassParams(tprime_choice, std::move(pairs));
}

SearchResult search_witness(const ClassParams& p, const ClassParams& pprime,
                            const SearchBounds& bounds) {
  if (p.d() != pprime.d())
    throw std::invalid_argument("search_witness: dimension mismatch");
  SearchResult res;
  if (p.d() >= 2) return res;  // verification-only regime
  res.searched = true;

  if (p.d() == 0) {
    for (long long m = 1; m <= bounds.m_max; ++m) {
      ClassWitness w(RatMatrix(0, 0), m, {}, {});
      if (verify_witness(p, pprime, w)) {
        res.witness = w;
        return res;
      }
    }
    return res;
  }

  // d = 1.  The coefficient part of Q(a + k/m, b + l/m) = (a', b') does not
  // see the shifts, and the parameters are independent mod 1, so the
  // coefficient matrix has rank 2 and pins Q uniquely.
  std::size_t width = basis_size_of(p, pprime);
  RatMatrix c = coefficient_matrix(p, width);
  RatMatrix dmat = coefficient_matrix(pprime, width);
  std::size_t col1 = width, col2 = width;
  for (std::size_t j = 0; j < width && col2 == width; ++j) {
    if (c(0, j).is_zero() && c(1, j).is_zero()) continue;
    if (col1 == width) {
      col1 = j;
      continue;
    }
    if ((c(0, col1) * c(1, j) - c(1, col1) * c(0, j)).is_zero()) continue;
    col2 = j;
  }
  if (col2 == width) return res;  // rank < 2 cannot happen for valid params
  RatMatrix cc(2, 2), dd2(2, 2);
  for (int r = 0; r < 2; ++r) {
    cc(r, 0) = c(r, col1);
    cc(r, 1) = c(r, col2);
    dd2(r, 0) = dmat(r, col1);
    dd2(r, 1) = dmat(r, col2);
  }
  RatMatrix q = dd2 * cc.inverse();
  if (q * c != dmat) return res;
  if (q.det() != Rational(1)) return res;  // Sp_2(Q) = SL_2(Q)
  if (!within_height(q, bounds.height_max)) return res;

  for (long long m = 1; m <= bounds.m_max; ++m)
    for (long long k = -bounds.shift_max; k <= bounds.shift_max; ++k)
      for (long long l = -bounds.shift_max; l <= bounds.shift_max; ++l) {
        ClassWitness w(q, m, {k}, {l});
        if (verify_witness(p, pprime, w)) {
          res.witness = w;
          return res;
        }
      }
  return res;
}

ClassWitness invert_witness(const ClassParams& p, const ClassParams& pprime,
                            const ClassWitness& w) {
  if (!verify_witness(p, pprime, w))
    throw std::invalid_argument("invert_witness: witness does not verify");
  std::size_t d = w.d();
  RatMatrix qinv = d > 0 ? w.q().inverse() : RatMatrix(0, 0);
  // s' = -Q s; pick m' as a common multiple of the new denominators and m so
  // the mod-1 condition transfers.
  std::vector<Rational> s(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    s[i] = Rational(w.k()[i], w.m());
    s[d + i] = Rational(w.l()[i], w.m());
  }
  std::vector<Rational> sprime(2 * d, Rational(0));
  for (std::size_t r = 0; r < 2 * d; ++r)
    for (std::size_t c = 0; c < 2 * d; ++c) sprime[r] -= w.q()(r, c) * s[c];
  BigInt mprime(w.m());
  for (const auto& x : sprime) mprime = boost::multiprecision::lcm(mprime, x.den());
  long long mp = static_cast<long long>(mprime);
  std::vector<long long> kp(d), lp(d);
  for (std::size_t i = 0; i < d; ++i) {
    kp[i] = static_cast<long long>((sprime[i] * Rational(mp)).num());
    lp[i] = static_cast<long long>((sprime[d + i] * Rational(mp)).num());
  }
  ClassWitness inv(qinv, mp, kp, lp);
  if (!verify_witness(pprime, p, inv))
    throw std::logic_error("invert_witness: constructed inverse fails verification");
  return inv;
}

ClassWitness compose_witness(const ClassParams& p, const ClassParams& pmid,
                             const ClassParams& pprime, const ClassWitness& w1,
                             const ClassWitness& w2) {
  if (!verify_witness(p, pmid, w1) || !verify_witness(pmid, pprime, w2))
    throw std::invalid_argument("compose_witness: inputs do not verify");
  std::size_t d = w1.d();
  RatMatrix q = d > 0 ? w2.q() * w1.q() : RatMatrix(0, 0);
  std::vector<Rational> s1(2 * d), s2(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    s1[i] = Rational(w1.k()[i], w1.m());
    s1[d + i] = Rational(w1.l()[i], w1.m());
    s2[i] = Rational(w2.k()[i], w2.m());
    s2[d + i] = Rational(w2.l()[i], w2.m());
  }
  // s = s1 + Q1^{-1} s2
  std::vector<Rational> s(2 * d, Rational(0));
  if (d > 0) {
    RatMatrix q1inv = w1.q().inverse();
    for (std::size_t r = 0; r < 2 * d; ++r) {
      s[r] = s1[r];
      for (std::size_t c = 0; c < 2 * d; ++c) s[r] += q1inv(r, c) * s2[c];
    }
  }
  // (t - t'') - omega(s, x) is rational; its denominator joins the lcm.
  QAffineReal residual = qa_sub(p.t(), pprime.t());
  std::vector<QAffineReal> x = p.parameter_vector();
  for (std::size_t i = 0; i < d; ++i) {
    residual = qa_sub(residual, qa_scale(s[i], x[d + i]));
    residual = qa_add(residual, qa_scale(s[d + i], x[i]));
  }
  if (!residual.is_rational())
    throw std::logic_error("compose_witness: residual is not rational");
  BigInt mm(1);
  for (const auto& v : s) mm = boost::multiprecision::lcm(mm, v.den());
  mm = boost::multiprecision::lcm(mm, residual.const_term().den());
  long long m = static_cast<long long>(mm);
  std::vector<long long> k(d), l(d);
  for (std::size_t i = 0; i < d; ++i) {
    k[i] = static_cast<long long>((s[i] * Rational(m)).num());
    l[i] = static_cast<long long>((s[d + i] * Rational(m)).num());
  }
  ClassWitness composed(q, m, k, l);
  if (!verify_witness(p, pprime, composed))
    throw std::logic_error("compose_witness: constructed witness fails verification");
  return composed;
}

PolarizedReduction polarized_to_heisenberg(const PolarizedSystem& sys) {
  RatMatrix b = sys.skew_form();
  PolarizedReduction out;
  out.phi = skew_normal_form(b);
  std::vector<QAffineReal> w = out.phi.apply(sys.delta());
  HeisenbergSystem h;
  h.d = sys.d();
  h.alpha.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(sys.d()));
  h.beta.assign(w.begin() + static_cast<std::ptrdiff_t>(sys.d()), w.end());
  h.gamma = QAffineReal(Rational(0));
  out.system = std::move(h);
  out.minimal = minimality_check(out.system);
  if (out.minimal != minimality_check(sys))
    throw std::logic_error(
        "polarized_to_heisenberg: minimality not preserved by a rational isomorphism");
  return out;
}

}  // namespace nilseq
