#pragma once

// The three concrete systems the library works with: the Heisenberg
// nilmanifold N_d = H_d / Lambda_d with group law
//     (x,y,z)(x',y',z') = (x+x', y+y', z z' e(<x|y'>)),
// the affine skew product (x,y) -> (x+alpha, y+x+beta) on T^2, and the
// polarized connected presentation (x,z)(x',z') = (x+x', z z' e(<Ax|x'>)).
// Coordinates are kept in double-double so group identities hold to ~1e-13
// over the orbit lengths the tests exercise.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "nilseq/dd.hpp"
#include "nilseq/qaffine.hpp"
#include "nilseq/ratmatrix.hpp"
#include "nilseq/theta.hpp"

namespace nilseq {

struct HeisenbergElement {
  std::vector<dd> x;
  std::vector<dd> y;
  std::complex<double> z{1.0, 0.0};

  std::size_t dim() const { return x.size(); }
};

HeisenbergElement make_heisenberg_element(const std::vector<double>& x,
                                          const std::vector<double>& y,
                                          std::complex<double> z);

// A Heisenberg element with x, y in [0,1)^d, representing a point of N_d.
struct HeisenbergPoint {
  HeisenbergElement g;
};

// Validates the fundamental-domain invariant.
HeisenbergPoint make_heisenberg_point(HeisenbergElement g);

// Lattice bookkeeping of a fundamental-domain reduction: the returned point
// equals g * (k,l,1)^{-1}, so right-multiplying it by (k,l,1) recovers g's
// coset.
struct ReducedHeisenberg {
  HeisenbergPoint point;
  std::vector<std::int64_t> k;
  std::vector<std::int64_t> l;
};

struct HeisenbergSystem {
  std::size_t d = 1;
  std::vector<QAffineReal> alpha;
  std::vector<QAffineReal> beta;
  QAffineReal gamma;
};

struct AffineSkewSystem {
  QAffineReal alpha;
  QAffineReal beta;
};

struct PolarizedElement {
  std::vector<dd> x;
  std::complex<double> z{1.0, 0.0};
};

// Polarized presentation of a connected group; the commutator pairing is
// e(<Bx|x'>) with B = A^t - A, checked nonsingular on construction.
class PolarizedSystem {
 public:
  PolarizedSystem(std::size_t d, std::vector<std::vector<long long>> a,
                  std::vector<QAffineReal> delta, QAffineReal gamma0);

  std::size_t d() const { return d_; }
  const std::vector<std::vector<long long>>& a_matrix() const { return a_; }
  const std::vector<QAffineReal>& delta() const { return delta_; }
  const QAffineReal& gamma0() const { return gamma0_; }

  RatMatrix skew_form() const;  // B = A^t - A as an exact matrix

 private:
  std::size_t d_;
  std::vector<std::vector<long long>> a_;
  std::vector<QAffineReal> delta_;
  QAffineReal gamma0_;
};

HeisenbergElement h_mul(const HeisenbergElement& g, const HeisenbergElement& h);
HeisenbergElement h_inv(const HeisenbergElement& g);
HeisenbergElement h_identity(std::size_t d);

// (0, 0, e(<x|y'> - <x'|y>)); always central.
HeisenbergElement h_commutator(const HeisenbergElement& g, const HeisenbergElement& h);

ReducedHeisenberg reduce_to_fundamental(const HeisenbergElement& g);

// Closed-form power tau^n = (n a, n b, e(n c) e(n(n-1)/2 <a|b>)).
HeisenbergElement tau_pow(const HeisenbergSystem& sys, std::int64_t n);

// The Gaussian section f~(x,y,z) = z * prod_j kappa(x_j, y_j); invariant
// under right translation by Lambda_d, hence a function on N_d.
std::complex<double> c1_gaussian(const HeisenbergElement& g);
inline std::complex<double> c1_gaussian(const HeisenbergPoint& p) {
  return c1_gaussian(p.g);
}

// f(T^n x0) with x0 the image of the identity: reduce tau^n to the
// fundamental domain and evaluate the Gaussian section there.
std::complex<double> heisenberg_orbit_value(const HeisenbergSystem& sys, std::int64_t n);

// Closed form q_n(alpha) e_n(beta) of f(T^n (0,0)) with f(x,y) = e(y); this
// is what range evaluation uses.
std::complex<double> affine_orbit_closed_form(const AffineSkewSystem& sys, std::int64_t n);

// Same value, but for |n| <= 1e5 also walks the iterated map and throws if
// the two routes disagree beyond 1e-9.
std::complex<double> affine_orbit_value(const AffineSkewSystem& sys, std::int64_t n);

// Forward walker for the skew map, for range evaluation and the dual-route
// acceptance check.
class AffineOrbit {
 public:
  explicit AffineOrbit(const AffineSkewSystem& sys);
  std::int64_t n() const { return n_; }
  std::complex<double> value() const { return cis_frac(y_); }
  void step();

 private:
  dd alpha_, beta_, x_, y_;
  std::int64_t n_ = 0;
};

bool minimality_check(const HeisenbergSystem& sys);
bool minimality_check(const AffineSkewSystem& sys);
bool minimality_check(const PolarizedSystem& sys);

PolarizedElement polarized_mul(const PolarizedSystem& sys, const PolarizedElement& u,
                               const PolarizedElement& v);
PolarizedElement polarized_identity(const PolarizedSystem& sys);
PolarizedElement polarized_inv(const PolarizedSystem& sys, const PolarizedElement& u);

// Fiber Fourier coefficient f_chi(x) = int_{G_2} f(u.x) conj(chi(u)) du by an
// M-point cyclic quadrature; exact for fiber-band-limited f when
// M >= 2|chi| + 2.
std::complex<double> fiber_fourier(
    const std::function<std::complex<double>(const HeisenbergPoint&)>& fn,
    const HeisenbergPoint& point, int chi, int quad_points);

}  // namespace nilseq
