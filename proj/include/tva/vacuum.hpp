#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tva/report.hpp"
#include "tva/toroidal.hpp"

namespace tva {

/// One PBW generator of the vacuum module V(ghat_R) for R = A[t,t~]:
/// either a loop generator J^i (x) x^mono with t-exponent <= -1, or a
/// canonical minus-side central basis form x^mono d(x_var).
///
/// Weight bookkeeping follows the mode expansions of the generating fields:
/// a loop generator of t-exponent n has weight -n; a form u t^j dt has weight
/// -j-1 (so the level classes u t^-1 dt sit in weight 0) and a form t^j w,
/// w in Omega^1_A, has weight -j.
struct NegGenerator {
  enum class Kind : unsigned char { Central = 0, Loop = 1 };
  Kind kind = Kind::Loop;
  int index = 0;  // Loop: Lie basis index; Central: differential variable
  int weight = 0;
  Exponent mono;

  static NegGenerator loop_gen(const RingSpec& spec, int lie_index, Exponent mono);
  static NegGenerator central_gen(const RingSpec& spec, const FormKey& key);

  FormKey form_key() const { return {mono, index}; }

  bool operator==(const NegGenerator& o) const {
    return kind == o.kind && index == o.index && mono == o.mono;
  }
  /// Total PBW order: central generators precede loop generators; within a
  /// kind, weight ascending, then monomial graded-lex, then basis index.
  std::strong_ordering operator<=>(const NegGenerator& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (weight != o.weight) return weight <=> o.weight;
    if (auto c = mono <=> o.mono; c != 0) return c;
    return index <=> o.index;
  }
};

/// Ordered product of generators, kept non-increasing; empty = |0>.
using PBWMonomial = std::vector<NegGenerator>;

int monomial_weight(const PBWMonomial& mon);
int monomial_a_degree(const PBWMonomial& mon, const RingSpec& spec);

/// Finite linear combination of ordered PBW monomials applied to the vacuum.
class VacuumState {
 public:
  VacuumState(LieAlgebraPtr lie, RingSpecPtr spec);
  static VacuumState vacuum(LieAlgebraPtr lie, RingSpecPtr spec);
  static VacuumState basis_state(LieAlgebraPtr lie, RingSpecPtr spec, PBWMonomial mon);

  const LieAlgebraPtr& lie() const { return lie_; }
  const RingSpecPtr& spec() const { return spec_; }
  const std::map<PBWMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  VacuumState operator-() const;
  VacuumState operator+(const VacuumState& o) const;
  VacuumState operator-(const VacuumState& o) const;
  VacuumState operator*(const Rational& c) const;
  bool operator==(const VacuumState& o) const;

  void add_term(const PBWMonomial& mon, const Rational& c);

  std::string to_string() const;
  std::string to_json(int indent = 2) const;

 private:
  LieAlgebraPtr lie_;
  RingSpecPtr spec_;
  std::map<PBWMonomial, Rational> terms_;
};

/// PBW straightening engine.  Pure; the instance only memoizes brackets of
/// atomic generators, so reusing one across a suite is a speedup, not a
/// semantic difference.
class Straightener {
 public:
  Straightener(LieAlgebraPtr lie, RingSpecPtr spec);

  /// Left action of an element of ghat_R.  Loop generators with t-exponent
  /// >= 0 and plus-side central classes annihilate the vacuum; minus-side
  /// central classes multiply; everything else straightens recursively.
  VacuumState act(const ToroidalElement& x, const VacuumState& v);

  /// Translation operator, the derivation with T|0> = 0,
  /// [T, J (x) f t^n] = -n J (x) f t^{n-1}, [T, f t^n dt] = -n f t^{n-1} dt,
  /// [T, t^n w] = -n t^{n-1} w.
  VacuumState apply_T(const VacuumState& v);

  const LieAlgebraPtr& lie() const { return lie_; }
  const RingSpecPtr& spec() const { return spec_; }

 private:
  struct AtomicBracket {
    std::vector<std::tuple<int, Exponent, Rational>> loop_terms;
    std::vector<std::pair<NegGenerator, Rational>> central_terms;  // minus side only
  };
  using Acc = std::map<PBWMonomial, Rational>;

  const AtomicBracket& bracket(int i, const Exponent& mi, int j, const Exponent& mj);
  void act_gen(int lie_index, const Exponent& mono, const Rational& c,
               std::span<const NegGenerator> mon, Acc& acc);
  void add_central_class(const CentralClass& cls, const Rational& c,
                         std::span<const NegGenerator> mon, Acc& acc);

  LieAlgebraPtr lie_;
  RingSpecPtr spec_;
  int t_;
  std::map<std::tuple<int, Exponent, int, Exponent>, AtomicBracket> cache_;
};

VacuumState act_mode(const ToroidalElement& x, const VacuumState& v);
VacuumState apply_T(const VacuumState& v);

/// A generating field of the vertex algebra V(ghat_R):
///   J family:    Y(J (x) u t^-1 |0>, z) = sum (J (x) u t^n) z^{-n-1}
///   Kdt family:  Y(u t^-1 dt |0>, z)    = sum (u t^{n-1} dt) z^{-n}
///   Kom family:  Y(t^-1 w |0>, z)       = sum (t^n w) z^{-n-1}
/// with u in A and w in Omega^1_A.
struct FieldSpec {
  enum class Family { J, Kdt, Kom };
  Family family;
  LieAlgebraPtr lie;
  RingSpecPtr spec;
  LieElement coefficient;  // J family
  RingElement u;           // J and Kdt families
  KaehlerElement omega;    // Kom family

  static FieldSpec make_J(LieElement j, RingElement u);
  static FieldSpec make_Kdt(LieAlgebraPtr lie, RingElement u);
  static FieldSpec make_Kom(LieAlgebraPtr lie, KaehlerElement omega);

  /// The state the field is Y(-, z) of.
  VacuumState label_state() const;
  std::string to_string() const;
};

/// Coefficient of the field at its displayed mode index (see FieldSpec).
ToroidalElement field_mode(const FieldSpec& f, int n);

/// Coefficient of z^{-n-1} regardless of family (Kdt is shifted by one).
ToroidalElement field_mode_std(const FieldSpec& f, int n);

struct StateEnumeration {
  int max_weight = 3;
  int a_degree_bound = 2;   // per-generator window for fiber exponents
  int weight0_central_cap = 0;  // max count of weight-0 central factors
};

/// All PBW basis monomials of weight <= max_weight whose generators have
/// fiber exponents within the window.  Central generators are the canonical
/// (normal-form-fixed) minus-side forms.
std::vector<PBWMonomial> enumerate_states(const LieAlgebraPtr& lie,
                                          const RingSpecPtr& spec,
                                          const StateEnumeration& opt);

/// Two-path module axiom: acting by bracket_hat(x,y) equals the commutator of
/// the actions, over all loop generator pairs in the window and all basis
/// states of weight <= opt.max_weight.
Report module_axiom_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                          int gen_t_bound, int gen_a_bound,
                          const StateEnumeration& opt);

/// Mode-level commutation relations of the generating fields against the
/// prediction derived from the bracket of ghat_R:
///   [J1_u(z), J2_v(w)] = ([J1,J2]_{uv}(w) - <J1,J2> K_{t^-1 v du}(w)) delta(z-w)
///                         - <J1,J2> K_{uv dt/t}(w) d_w delta(z-w)
/// and zero whenever a K family field is involved.  `drop_ddelta` omits the
/// d_w delta term from the prediction (mutation guard).
Report commutator_check(const FieldSpec& f, const FieldSpec& g, int weight_bound,
                        int mode_bound, const StateEnumeration& opt,
                        bool drop_ddelta = false);

/// (z-w)^2 [f(z), g(w)] = 0 as operators on bounded states.
Report locality_check(const FieldSpec& f, const FieldSpec& g, int weight_bound,
                      int mode_bound, const StateEnumeration& opt);

/// Vacuum axiom: annihilation modes kill |0>, the creation coefficient
/// reproduces the labeling state, and the field assignment is well defined:
/// nf(d(t^n u)) = 0 for all fiber monomials u in the degree box.
Report vacuum_axiom_check(const FieldSpec& f, int mode_bound, int degree_bound);

/// [T, f_n] = -n f_{n-1} for the J and Kom families; for the Kdt family the
/// z^{-n} expansion shifts the law to [T, f_n] = -(n-1) f_{n-1}.
Report translation_axiom_check(const FieldSpec& f, int weight_bound, int mode_bound,
                               const StateEnumeration& opt);

/// Rank of each weight piece of V(ghat) as a free module over Q[k], for the
/// affine case A = Q; ranks are counted from the module's own generator
/// enumeration.
std::vector<long> character(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                            int max_weight);

}  // namespace tva
