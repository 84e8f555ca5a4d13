#pragma once

#include <map>
#include <string>

#include "tva/kaehler.hpp"
#include "tva/lie.hpp"
#include "tva/report.hpp"

namespace tva {

/// Element of the centrally extended loop algebra
///   ghat_R = g (x) R  (+)  Omega^1_R / dR,
/// stored as a sparse map from Lie basis index to ring coefficient plus a
/// central class in canonical normal form.
class ToroidalElement {
 public:
  ToroidalElement(LieAlgebraPtr lie, RingSpecPtr spec);
  static ToroidalElement zero(LieAlgebraPtr lie, RingSpecPtr spec);
  static ToroidalElement loop(LieAlgebraPtr lie, int basis_index, RingElement r);
  static ToroidalElement loop(const LieElement& x, const RingElement& r);
  static ToroidalElement central(LieAlgebraPtr lie, CentralClass c);

  const LieAlgebraPtr& lie() const { return lie_; }
  const RingSpecPtr& spec() const { return spec_; }
  const std::map<int, RingElement>& loop_part() const { return loop_; }
  const CentralClass& central_part() const { return central_; }
  bool is_zero() const { return loop_.empty() && central_.is_zero(); }
  bool is_central() const { return loop_.empty(); }

  ToroidalElement operator-() const;
  ToroidalElement operator+(const ToroidalElement& o) const;
  ToroidalElement operator-(const ToroidalElement& o) const;
  ToroidalElement operator*(const Rational& c) const;
  bool operator==(const ToroidalElement& o) const;

  void add_loop(int basis_index, const RingElement& r);
  void add_central(const CentralClass& c);

  std::string to_string() const;

 private:
  LieAlgebraPtr lie_;
  RingSpecPtr spec_;
  std::map<int, RingElement> loop_;
  CentralClass central_;
};

/// Bracket of the universal central extension:
///   [J (x) r, J' (x) s] = [J,J'] (x) rs + class( (1/2) <J,J'> (r ds - s dr) ).
/// Central inputs are central and contribute nothing.
ToroidalElement bracket_hat(const ToroidalElement& a, const ToroidalElement& b);

/// Element of the three-term complex K_R = Ker(d)[2] -> R[1] -> Omega^1_R.
struct KComplexElement {
  Rational deg_m2;        // Ker(d) = constants, cohomological degree -2
  RingElement deg_m1;     // R, degree -1
  KaehlerElement deg_0;   // Omega^1_R, degree 0

  explicit KComplexElement(RingSpecPtr spec)
      : deg_m2(0), deg_m1(RingElement::zero(spec)), deg_0(KaehlerElement::zero(spec)) {}

  bool is_zero() const { return tva::is_zero(deg_m2) && deg_m1.is_zero() && deg_0.is_zero(); }
  bool operator==(const KComplexElement& o) const {
    return deg_m2 == o.deg_m2 && deg_m1 == o.deg_m1 && deg_0 == o.deg_0;
  }
  std::string to_string() const;
};

/// Differential of K_R: constants include into R, then the universal derivation.
KComplexElement k_differential(const KComplexElement& x);

/// Element of the L-infinity model gtilde_R = g_R (+) K_R.
struct LInftyElement {
  ToroidalElement loop;  // central part of this field is unused; loop part = g_R
  KComplexElement central;

  LInftyElement(LieAlgebraPtr lie, RingSpecPtr spec)
      : loop(ToroidalElement::zero(lie, std::move(spec))), central(loop.spec()) {}
};

/// The cocycle components (raw, before passing to the quotient):
///   phi1(J (x) r, J' (x) s) = (1/2) <J,J'> (r ds - s dr)      in Omega^1_R
///   phi0(J (x) r, J' (x) s, J'' (x) t) = (1/2) <[J,J'],J''> rst   in R
KaehlerElement phi1(const ToroidalElement& a, const ToroidalElement& b);
RingElement phi0(const ToroidalElement& a, const ToroidalElement& b,
                 const ToroidalElement& c);

/// L-infinity operations: l1 = d_K, l2 = bracket + phi1, l3 = phi0.
LInftyElement ell1(const LInftyElement& a);
LInftyElement ell2(const LInftyElement& a, const LInftyElement& b);
LInftyElement ell3(const LInftyElement& a, const LInftyElement& b,
                   const LInftyElement& c);

/// Homogeneous loop generators J^i (x) x^m with every |m_j| <= bound
/// (polynomial variables range over [0, bound]).
std::vector<ToroidalElement> generator_box(const LieAlgebraPtr& lie,
                                           const RingSpecPtr& spec, int bound);

/// Exhaustive Jacobi check for bracket_hat over the generator box.
Report jacobi_suite(const LieAlgebraPtr& lie, const RingSpecPtr& spec, int bound);

/// Verifies the cocycle identities of phi = phi0 + phi1 on generator tuples:
///  (i)   d phi1 = 0 into the next slot of K_R (vacuous: Omega^1 is the top slot),
///  (ii)  d_CE phi0 = 0 as a 4-cochain,
///  (iii) d_CE phi1 = d phi0 as 3-cochains valued in Omega^1_R
/// with (d_CE psi)(a1..an) = sum_{i<j} (-1)^{i+j} psi([ai,aj], .. ^ai .. ^aj ..)
/// and the Koszul sign (-1)^p on the inner differential of a p-argument cochain.
/// `flip_sign` checks (iii) with the opposite relative sign (mutation guard).
Report cocycle_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec, int bound,
                     bool flip_sign = false);

/// Agreement of the H^0 bracket with bracket_hat on generator pairs: the class
/// of phi1(a,b) must match the central part of bracket_hat(a,b), and must also
/// equal the class of the one-sided cocycle <J,J'> r ds.
Report h0_iso_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec, int bound);

}  // namespace tva
