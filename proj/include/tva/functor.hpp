#pragma once

#include <map>

#include "tva/vacuum.hpp"

namespace tva {

/// The vertex algebra map V(ghat_{A[t,t~]}) -> V(ghat_{B[t,t~]}) induced by a
/// fiber algebra hom psi: A -> B extended over t by t -> t:
///   psibar(J u t^n + w) = J psi(u) t^n + psi_* w.
class InducedHom {
 public:
  /// base must pass validate_hom and send t to exactly t.
  static InducedHom make(RingHom base, LieAlgebraPtr lie);

  const RingHom& base() const { return base_; }
  const LieAlgebraPtr& lie() const { return lie_; }

  ToroidalElement apply(const ToroidalElement& x) const;
  CentralClass apply(const CentralClass& c) const;
  VacuumState apply(const VacuumState& v) const;

 private:
  InducedHom(RingHom base, LieAlgebraPtr lie)
      : base_(std::move(base)), lie_(std::move(lie)) {}
  RingHom base_;
  LieAlgebraPtr lie_;
};

InducedHom compose(const InducedHom& outer, const InducedHom& inner);

/// Central character on the weight-0 central space {class of u t^-1 dt}:
/// a rational value per fiber monomial u (zero where unspecified).  The level
/// is chi(1).
struct LevelSpecialization {
  std::map<Exponent, Rational> chi;  // fiber exponents (t entry zero)

  Rational value(const Exponent& fiber_mono) const;
  Rational level(const RingSpec& spec) const;

  /// Text form "chi: 1 -> 1; x -> 0".
  static LevelSpecialization parse(std::string_view text, const RingSpecPtr& spec);
};

/// Replaces every weight-0 central PBW factor (class of u t^-1 dt) by the
/// scalar chi(u); the result carries no weight-0 central factors.
VacuumState specialize_level(const LevelSpecialization& chi, const VacuumState& v);

/// psi-tilde intertwines the module actions: psitilde(x . v) = psibar(x) . psitilde(v)
/// over generator modes in the window and basis states of weight <= weight_bound.
Report hom_intertwines_check(const InducedHom& h, int weight_bound, int gen_t_bound,
                             int gen_a_bound, const StateEnumeration& opt);

/// Functor composition law on states: induced(psi . phi) = induced(psi) . induced(phi).
Report functoriality_check(const InducedHom& outer, const InducedHom& inner,
                           const StateEnumeration& opt);

/// The map induced by the structure hom Q -> A is injective on every graded
/// piece up to max_weight (checked by exact rank over the image monomials).
Report embedding_check(const InducedHom& h, int max_weight, int weight0_cap = 2);

struct SugawaraReport {
  Report report;
  Rational central_charge = 0;  // derived from [L_2, L_-2] |0> when max_weight >= 2
  bool central_charge_known = false;
};

/// Segal-Sugawara operators at level K != -h_vee in the affine case A = Q:
///   L_m = 1/(2(K+h_vee)) sum_i sum_j :J^i_{(j)} J_i_{(m-j)}:
/// with {J_i} the form-dual basis.  Checks (a) L_{-1} = T, (b) L_0 = weight,
/// (c) [L_1, L_{-1}] = 2 L_0 on states of weight <= max_weight.
SugawaraReport sugawara_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                              const Rational& level, int max_weight);

}  // namespace tva
