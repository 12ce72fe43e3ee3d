#include "nilseq/nilsys.hpp"

#include <cmath>
#include <stdexcept>

namespace nilseq {

namespace {

void require_same_dim(const HeisenbergElement& g, const HeisenbergElement& h) {
  if (g.dim() != h.dim() || g.y.size() != g.dim() || h.y.size() != h.dim())
    throw std::invalid_argument("Heisenberg: dimension mismatch");
}

std::complex<double> renormalize(std::complex<double> z) {
  double m = std::abs(z);
  if (m == 0.0) throw std::domain_error("Heisenberg: zero central coordinate");
  return z / m;
}

dd inner_dd(const std::vector<dd>& a, const std::vector<dd>& b) {
  dd s(0.0);
  for (std::size_t j = 0; j < a.size(); ++j) s = dd_add(s, dd_mul(a[j], b[j]));
  return s;
}

// Snap coordinates within 1e-12 of the upper lattice wall back to 0 so the
// reduction breaks boundary ties deterministically.
constexpr double kSnap = 1e-12;

}  // namespace

HeisenbergElement make_heisenberg_element(const std::vector<double>& x,
                                          const std::vector<double>& y,
                                          std::complex<double> z) {
  if (x.empty() || x.size() != y.size())
    throw std::invalid_argument("Heisenberg: need d >= 1 and matching x, y sizes");
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::invalid_argument("Heisenberg: central coordinate must be unimodular");
  HeisenbergElement g;
  g.x.assign(x.begin(), x.end());
  g.y.assign(y.begin(), y.end());
  g.z = renormalize(z);
  return g;
}

HeisenbergPoint make_heisenberg_point(HeisenbergElement g) {
  for (std::size_t j = 0; j < g.dim(); ++j) {
    double x = to_double(g.x[j]);
    double y = to_double(g.y[j]);
    if (x < 0.0 || x >= 1.0 || y < 0.0 || y >= 1.0)
      throw std::invalid_argument("HeisenbergPoint: coordinates must lie in [0,1)");
  }
  return HeisenbergPoint{std::move(g)};
}

HeisenbergElement h_identity(std::size_t d) {
  HeisenbergElement g;
  g.x.assign(d, dd(0.0));
  g.y.assign(d, dd(0.0));
  g.z = {1.0, 0.0};
  return g;
}

HeisenbergElement h_mul(const HeisenbergElement& g, const HeisenbergElement& h) {
  require_same_dim(g, h);
  HeisenbergElement out;
  out.x.resize(g.dim());
  out.y.resize(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    out.x[j] = dd_add(g.x[j], h.x[j]);
    out.y[j] = dd_add(g.y[j], h.y[j]);
  }
  out.z = renormalize(g.z * h.z * cis_frac(dd_frac(inner_dd(g.x, h.y))));
  return out;
}

HeisenbergElement h_inv(const HeisenbergElement& g) {
  HeisenbergElement out;
  out.x.resize(g.dim());
  out.y.resize(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    out.x[j] = dd_neg(g.x[j]);
    out.y[j] = dd_neg(g.y[j]);
  }
  out.z = renormalize(std::conj(g.z) * cis_frac(dd_frac(inner_dd(g.x, g.y))));
  return out;
}

HeisenbergElement h_commutator(const HeisenbergElement& g, const HeisenbergElement& h) {
  require_same_dim(g, h);
  HeisenbergElement out = h_identity(g.dim());
  dd pairing = dd_sub(inner_dd(g.x, h.y), inner_dd(h.x, g.y));
  out.z = cis_frac(dd_frac(pairing));
  return out;
}

ReducedHeisenberg reduce_to_fundamental(const HeisenbergElement& g) {
  ReducedHeisenberg out;
  out.point.g.x.resize(g.dim());
  out.point.g.y.resize(g.dim());
  out.k.resize(g.dim());
  out.l.resize(g.dim());

  auto reduce_coord = [](dd v, dd& frac_out) -> std::int64_t {
    dd f = dd_floor(v);
    dd r = dd_sub(v, f);
    if (to_double(r) > 1.0 - kSnap) {
      f = dd_add(f, dd(1.0));
      r = dd(0.0);
    }
    frac_out = r;
    return static_cast<std::int64_t>(to_double(f));
  };

  std::vector<dd> l_dd(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    out.k[j] = reduce_coord(g.x[j], out.point.g.x[j]);
    out.l[j] = reduce_coord(g.y[j], out.point.g.y[j]);
    l_dd[j] = dd(static_cast<double>(out.l[j]));
  }
  // point = g * (k,l,1)^{-1} = (x-k, y-l, z e(-<x|l>))
  out.point.g.z = renormalize(g.z * cis_frac(dd_frac(dd_neg(inner_dd(g.x, l_dd)))));
  return out;
}

HeisenbergElement tau_pow(const HeisenbergSystem& sys, std::int64_t n) {
  if (sys.alpha.size() != sys.d || sys.beta.size() != sys.d || sys.d == 0)
    throw std::invalid_argument("HeisenbergSystem: bad dimensions");
  HeisenbergElement g;
  g.x.resize(sys.d);
  g.y.resize(sys.d);
  dd cross(0.0);
  for (std::size_t j = 0; j < sys.d; ++j) {
    dd a = qa_to_dd(sys.alpha[j]);
    dd b = qa_to_dd(sys.beta[j]);
    g.x[j] = dd_mul(a, static_cast<double>(n));
    g.y[j] = dd_mul(b, static_cast<double>(n));
    cross = dd_add(cross, dd_mul(a, b));
  }
  BigInt nn(n);
  BigInt tn = nn * (nn - 1) / 2;  // n(n-1)/2, exact
  dd phase = dd_add(qa_phase_frac(nn, sys.gamma), frac_bigint_times_dd(tn, cross));
  g.z = cis_frac(dd_frac(phase));
  return g;
}

std::complex<double> c1_gaussian(const HeisenbergElement& g) {
  std::complex<double> v = g.z;
  for (std::size_t j = 0; j < g.dim(); ++j) v *= kappa_dd(g.x[j], g.y[j]);
  return v;
}

std::complex<double> heisenberg_orbit_value(const HeisenbergSystem& sys, std::int64_t n) {
  return c1_gaussian(reduce_to_fundamental(tau_pow(sys, n)).point);
}

AffineOrbit::AffineOrbit(const AffineSkewSystem& sys)
    : alpha_(qa_to_dd(sys.alpha)), beta_(qa_to_dd(sys.beta)), x_(0.0), y_(0.0) {}

void AffineOrbit::step() {
  // (x, y) -> (x + alpha, y + x + beta); coordinates kept reduced mod 1.
  y_ = dd_frac(dd_add(y_, dd_add(x_, beta_)));
  x_ = dd_frac(dd_add(x_, alpha_));
  ++n_;
}

std::complex<double> affine_orbit_closed_form(const AffineSkewSystem& sys, std::int64_t n) {
  BigInt nn(n);
  BigInt tn = nn * (nn - 1) / 2;
  dd phase = dd_add(qa_phase_frac(tn, sys.alpha), qa_phase_frac(nn, sys.beta));
  return cis_frac(dd_frac(phase));
}

std::complex<double> affine_orbit_value(const AffineSkewSystem& sys, std::int64_t n) {
  std::complex<double> closed = affine_orbit_closed_form(sys, n);

  if (n >= 0 && n <= 100000) {
    AffineOrbit orbit(sys);
    while (orbit.n() < n) orbit.step();
    if (std::abs(orbit.value() - closed) > 1e-9)
      throw std::runtime_error("affine_orbit_value: iterated map and closed form disagree");
  } else if (n < 0 && n >= -100000) {
    // Inverse map: (x, y) -> (x - alpha, y - x + alpha - beta).
    dd alpha = qa_to_dd(sys.alpha), beta = qa_to_dd(sys.beta);
    dd x(0.0), y(0.0);
    for (std::int64_t i = 0; i > n; --i) {
      x = dd_frac(dd_sub(x, alpha));
      y = dd_frac(dd_sub(dd_sub(y, x), beta));
    }
    if (std::abs(cis_frac(y) - closed) > 1e-9)
      throw std::runtime_error("affine_orbit_value: iterated map and closed form disagree");
  }
  return closed;
}

bool minimality_check(const HeisenbergSystem& sys) {
  std::vector<QAffineReal> params = sys.alpha;
  params.insert(params.end(), sys.beta.begin(), sys.beta.end());
  return independent_mod1(params);
}

bool minimality_check(const AffineSkewSystem& sys) { return !sys.alpha.is_rational(); }

bool minimality_check(const PolarizedSystem& sys) { return independent_mod1(sys.delta()); }

PolarizedSystem::PolarizedSystem(std::size_t d, std::vector<std::vector<long long>> a,
                                 std::vector<QAffineReal> delta, QAffineReal gamma0)
    : d_(d), a_(std::move(a)), delta_(std::move(delta)), gamma0_(std::move(gamma0)) {
  std::size_t n = 2 * d_;
  if (d_ == 0 || a_.size() != n || delta_.size() != n)
    throw std::invalid_argument("PolarizedSystem: bad dimensions");
  for (const auto& row : a_)
    if (row.size() != n) throw std::invalid_argument("PolarizedSystem: bad dimensions");
  if (skew_form().is_singular())
    throw std::invalid_argument("PolarizedSystem: A^t - A must be nonsingular");
}

RatMatrix PolarizedSystem::skew_form() const {
  std::size_t n = 2 * d_;
  RatMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      b(r, c) = Rational(a_[c][r]) - Rational(a_[r][c]);  // A^t - A
  return b;
}

PolarizedElement polarized_identity(const PolarizedSystem& sys) {
  PolarizedElement e;
  e.x.assign(2 * sys.d(), dd(0.0));
  e.z = {1.0, 0.0};
  return e;
}

PolarizedElement polarized_mul(const PolarizedSystem& sys, const PolarizedElement& u,
                               const PolarizedElement& v) {
  std::size_t n = 2 * sys.d();
  if (u.x.size() != n || v.x.size() != n)
    throw std::invalid_argument("polarized_mul: dimension mismatch");
  PolarizedElement out;
  out.x.resize(n);
  dd pairing(0.0);  // <A u.x | v.x>
  const auto& a = sys.a_matrix();
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = dd_add(u.x[i], v.x[i]);
    dd axi(0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != 0) axi = dd_add(axi, dd_mul(u.x[j], static_cast<double>(a[i][j])));
    pairing = dd_add(pairing, dd_mul(axi, v.x[i]));
  }
  out.z = renormalize(u.z * v.z * cis_frac(dd_frac(pairing)));
  return out;
}

PolarizedElement polarized_inv(const PolarizedSystem& sys, const PolarizedElement& u) {
  std::size_t n = 2 * sys.d();
  PolarizedElement out;
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = dd_neg(u.x[i]);
  dd pairing(0.0);  // <A x | x>
  const auto& a = sys.a_matrix();
  for (std::size_t i = 0; i < n; ++i) {
    dd axi(0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != 0) axi = dd_add(axi, dd_mul(u.x[j], static_cast<double>(a[i][j])));
    pairing = dd_add(pairing, dd_mul(axi, u.x[i]));
  }
  out.z = renormalize(std::conj(u.z) * cis_frac(dd_frac(pairing)));
  return out;
}

std::complex<double> fiber_fourier(
    const std::function<std::complex<double>(const HeisenbergPoint&)>& fn,
    const HeisenbergPoint& point, int chi, int quad_points) {
  if (quad_points < 2 * std::abs(chi) + 2)
    throw std::invalid_argument("fiber_fourier: quad_points must be >= 2|chi| + 2");
  std::complex<double> sum = 0.0;
  HeisenbergPoint rotated = point;
  for (int m = 0; m < quad_points; ++m) {
    dd phase = dd_frac(dd(static_cast<double>(m) / quad_points));
    rotated.g.z = point.g.z * cis_frac(phase);
    dd conj_phase = dd_frac(dd(-static_cast<double>(chi) * m / quad_points));
    sum += fn(rotated) * cis_frac(conj_phase);
  }
  return sum / static_cast<double>(quad_points);
}

}  // namespace nilseq
