#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tva/errors.hpp"
#include "tva/linalg.hpp"
#include "tva/rational.hpp"

namespace tva {

class LieAlgebra;
using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Finite-dimensional Lie algebra given by structure constants
/// [J^i, J^j] = sum_k c_{ij}^k J^k, with a symmetric bilinear form.
class LieAlgebra {
 public:
  /// structure[i][j] is the dense coefficient vector of [J^i, J^j].
  static LieAlgebraPtr make(std::vector<std::string> basis_names,
                            std::vector<std::vector<std::vector<Rational>>> structure,
                            QMatrix form,
                            std::optional<Rational> dual_coxeter = std::nullopt);

  static LieAlgebraPtr preset(const std::string& name);  // "sl2", "sl3"
  static LieAlgebraPtr sl2();
  static LieAlgebraPtr sl3();
  static LieAlgebraPtr abelian(int dim);

  /// Structured text: lines "dim N", "basis a b c", "bracket a b = c1 x + c2 y",
  /// "form a b = q", "dual_coxeter q".  Unlisted brackets/form entries are zero;
  /// [b,a] is filled from [a,b] when only one is given.
  static LieAlgebraPtr parse(const std::string& text);
  static LieAlgebraPtr load(const std::string& path);

  int dim() const { return dim_; }
  const std::string& basis_name(int i) const { return names_[i]; }
  int index_of(const std::string& name) const;

  const std::vector<Rational>& bracket(int i, int j) const { return structure_[i][j]; }
  const Rational& form(int i, int j) const { return form_[i][j]; }
  const QMatrix& form_matrix() const { return form_; }
  const std::optional<Rational>& dual_coxeter() const { return dual_coxeter_; }

  bool same_as(const LieAlgebra& o) const;

 private:
  LieAlgebra() = default;
  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<Rational>>> structure_;
  QMatrix form_;
  std::optional<Rational> dual_coxeter_;
};

void require_same_algebra(const LieAlgebraPtr& a, const LieAlgebraPtr& b);

class LieElement {
 public:
  LieElement(LieAlgebraPtr algebra, std::vector<Rational> coeffs);
  static LieElement basis(LieAlgebraPtr algebra, int i);
  static LieElement zero(LieAlgebraPtr algebra);

  const LieAlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(const Rational& c) const;
  bool operator==(const LieElement& o) const;

  std::string to_string() const;

 private:
  LieAlgebraPtr algebra_;
  std::vector<Rational> coeffs_;
};

LieElement lie_bracket(const LieElement& x, const LieElement& y);
Rational lie_form(const LieElement& x, const LieElement& y);

struct LieValidation {
  std::vector<std::string> failures;
  long checks = 0;
  bool valid() const { return failures.empty(); }
};

/// Exact exhaustive check of antisymmetry, Jacobi, form symmetry and
/// invariance over all basis triples.
LieValidation validate_lie(const LieAlgebra& L);

/// K(x,y) = trace(ad x . ad y), computed from the structure constants.
QMatrix killing_form(const LieAlgebra& L);

}  // namespace tva
