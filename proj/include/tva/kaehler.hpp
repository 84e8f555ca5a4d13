#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tva/ring.hpp"

namespace tva {

/// Basis symbol x^mono d(x_var) of the module of Kaehler differentials.
struct FormKey {
  Exponent mono;
  int var = 0;

  /// Homogeneous degree: mono + e_var (preserved by the universal derivation).
  Exponent degree() const { return mono + Exponent::unit(mono.size(), var); }

  bool operator==(const FormKey& o) const { return var == o.var && mono == o.mono; }
  std::strong_ordering operator<=>(const FormKey& o) const {
    if (auto c = mono <=> o.mono; c != 0) return c;
    return var <=> o.var;
  }
};

/// Sparse element of Omega^1_R.
class KaehlerElement {
 public:
  explicit KaehlerElement(RingSpecPtr spec) : spec_(std::move(spec)) {}
  static KaehlerElement zero(RingSpecPtr spec) { return KaehlerElement(std::move(spec)); }
  static KaehlerElement form(RingSpecPtr spec, const Exponent& mono, int var,
                             const Rational& c = 1);

  const RingSpecPtr& spec() const { return spec_; }
  const std::map<FormKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  KaehlerElement operator-() const;
  KaehlerElement operator+(const KaehlerElement& o) const;
  KaehlerElement operator-(const KaehlerElement& o) const;
  KaehlerElement operator*(const Rational& c) const;
  bool operator==(const KaehlerElement& o) const;

  void add_term(const FormKey& k, const Rational& c);

  /// Left module structure: r * w.
  friend KaehlerElement operator*(const RingElement& r, const KaehlerElement& w);

  std::string to_string() const;

 private:
  RingSpecPtr spec_;
  std::map<FormKey, Rational> terms_;
};

/// The universal derivation d: R -> Omega^1_R,  d(x^m) = sum_i m_i x^{m-e_i} dx_i.
KaehlerElement universal_d(const RingElement& r);

/// A class in Omega^1_R / dR held by its canonical representative: within each
/// homogeneous degree m != 0 the single relation d(x^m) = 0 is used to
/// eliminate the pivot coordinate (largest variable index with m_i != 0).
class CentralClass {
 public:
  explicit CentralClass(RingSpecPtr spec) : rep_(std::move(spec)) {}
  static CentralClass zero(RingSpecPtr spec) { return CentralClass(std::move(spec)); }

  const KaehlerElement& representative() const { return rep_; }
  const RingSpecPtr& spec() const { return rep_.spec(); }
  bool is_zero() const { return rep_.is_zero(); }

  CentralClass operator-() const;
  CentralClass operator+(const CentralClass& o) const;
  CentralClass operator-(const CentralClass& o) const;
  CentralClass operator*(const Rational& c) const;
  bool operator==(const CentralClass& o) const;

  std::string to_string() const { return rep_.to_string(); }

  friend CentralClass normal_form(const KaehlerElement& w);

 private:
  explicit CentralClass(KaehlerElement rep) : rep_(std::move(rep)) {}
  KaehlerElement rep_;
};

CentralClass normal_form(const KaehlerElement& w);

/// Degree split of Omega^1_R / dR for R = A[t,t~] along S = S+ plus S-:
/// a term x^a dx_i lies on the plus side iff a_t >= 0.  Homogeneous relations
/// never mix the two sides, so (plus, minus) refine the full normal form.
std::pair<CentralClass, CentralClass> split_nf(const KaehlerElement& w);

/// True if every term of the canonical representative has a_t <= -1.
bool is_minus_side(const RingSpec& spec, const FormKey& key);

struct DegreeBox {
  Exponent lo;
  Exponent hi;
  std::vector<Exponent> points() const;
};

/// Dimension of each homogeneous degree piece of Omega^1_R / dR over the box,
/// computed as the rank of the normal-form images of the degree basis.
std::map<Exponent, int> graded_dimension(const RingSpecPtr& spec, const DegreeBox& box);

/// Pushforward psi_*(r dr') = psi(r) d psi(r') along a ring hom.
KaehlerElement apply_hom_form(const RingHom& h, const KaehlerElement& w);

}  // namespace tva
