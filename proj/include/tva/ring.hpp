#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tva/errors.hpp"
#include "tva/rational.hpp"

namespace tva {

struct Variable {
  std::string name;
  bool invertible = true;
};

class RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

/// A monomial commutative algebra over Q: a fixed ordered list of variables,
/// each either Laurent (invertible) or polynomial, with an optional
/// distinguished loop variable t (which must be invertible).
class RingSpec {
 public:
  static RingSpecPtr make(std::vector<Variable> vars,
                          std::optional<int> t_index = std::nullopt);

  /// Text form: "laurent:t0,t1", "poly:u", "laurent:t,x;poly:u;t=t".
  static RingSpecPtr parse(std::string_view text);

  int arity() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  std::optional<int> t_index() const { return t_index_; }

  /// Index of a variable name, or -1.
  int index_of(std::string_view name) const;

  bool same_as(const RingSpec& other) const;
  std::string to_string() const;

 private:
  RingSpec(std::vector<Variable> vars, std::optional<int> t_index);
  std::vector<Variable> vars_;
  std::optional<int> t_index_;
};

void require_same_spec(const RingSpecPtr& a, const RingSpecPtr& b);

/// Integer exponent vector of a monomial, one entry per spec variable.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> e) : e_(std::move(e)) {}
  static Exponent zero(int arity) { return Exponent(std::vector<int>(arity, 0)); }
  static Exponent unit(int arity, int i);

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[i]; }
  int& operator[](int i) { return e_[i]; }
  int total_degree() const;
  bool is_zero() const;

  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const;
  Exponent with(int i, int v) const;

  bool operator==(const Exponent& o) const { return e_ == o.e_; }
  /// Graded-lexicographic order with the variable order as declared.
  std::strong_ordering operator<=>(const Exponent& o) const;

  const std::vector<int>& entries() const { return e_; }

 private:
  std::vector<int> e_;
};

/// True if every non-invertible variable has a nonnegative exponent.
bool is_legal_monomial(const RingSpec& spec, const Exponent& e);

/// Sparse element of a monomial algebra: finitely many terms, no zero
/// coefficients stored, terms kept in graded-lex order.
class RingElement {
 public:
  explicit RingElement(RingSpecPtr spec) : spec_(std::move(spec)) {}
  static RingElement zero(RingSpecPtr spec) { return RingElement(std::move(spec)); }
  static RingElement one(RingSpecPtr spec);
  static RingElement monomial(RingSpecPtr spec, const Exponent& e,
                              const Rational& c = 1);
  static RingElement variable(RingSpecPtr spec, int i, int power = 1);

  const RingSpecPtr& spec() const { return spec_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  /// True if the element is a nonzero scalar times a single monomial all of
  /// whose support is invertible (exactly the units of the ring).
  bool is_unit() const;
  RingElement unit_inverse() const;

  /// All terms have exponent entry zero at position i.
  bool is_free_of(int var_index) const;

  RingElement operator-() const;
  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(const Rational& c) const;
  bool operator==(const RingElement& o) const;

  void add_term(const Exponent& e, const Rational& c);

  std::string to_string() const;

 private:
  RingSpecPtr spec_;
  std::map<Exponent, Rational> terms_;
};

inline RingElement operator*(const Rational& c, const RingElement& a) { return a * c; }

/// Homomorphism between monomial algebras, given by the images of the source
/// variables.  Invertible source variables must map to units; when both specs
/// carry a distinguished t, t must map to a unit times t.
class RingHom {
 public:
  /// Validating factory; throws InvalidHomError on violation.
  static RingHom make(RingSpecPtr source, RingSpecPtr target,
                      std::vector<RingElement> images);
  /// Non-validating factory (for building candidates to feed validate_hom).
  static RingHom make_unchecked(RingSpecPtr source, RingSpecPtr target,
                                std::vector<RingElement> images);
  static RingHom identity(RingSpecPtr spec);

  /// Text form "x -> y^2; t -> t" between two given specs.
  static RingHom parse(std::string_view text, RingSpecPtr source,
                       RingSpecPtr target);

  const RingSpecPtr& source() const { return source_; }
  const RingSpecPtr& target() const { return target_; }
  const RingElement& image(int i) const { return images_[i]; }

  std::string to_string() const;

 private:
  RingHom(RingSpecPtr source, RingSpecPtr target, std::vector<RingElement> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}
  RingSpecPtr source_;
  RingSpecPtr target_;
  std::vector<RingElement> images_;
};

struct HomValidation {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

HomValidation validate_hom(const RingHom& h);

RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement apply_hom(const RingHom& h, const RingElement& a);
RingHom compose_hom(const RingHom& outer, const RingHom& inner);

/// Pretty-prints one monomial ("1" for the empty one), grammar-compatible.
std::string monomial_to_string(const RingSpec& spec, const Exponent& e);

}  // namespace tva
