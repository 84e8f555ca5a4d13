#include "tva/lie.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tva {

namespace {

std::vector<std::vector<std::vector<Rational>>> zero_structure(int n) {
  return std::vector<std::vector<std::vector<Rational>>>(
      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0)));
}

}  // namespace

LieAlgebraPtr LieAlgebra::make(std::vector<std::string> basis_names,
                               std::vector<std::vector<std::vector<Rational>>> structure,
                               QMatrix form, std::optional<Rational> dual_coxeter) {
  auto L = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  L->dim_ = static_cast<int>(basis_names.size());
  if (L->dim_ <= 0) throw Error("Lie algebra must have positive dimension");
  L->names_ = std::move(basis_names);
  L->structure_ = std::move(structure);
  L->form_ = std::move(form);
  L->dual_coxeter_ = std::move(dual_coxeter);
  size_t n = static_cast<size_t>(L->dim_);
  if (L->structure_.size() != n || L->form_.size() != n)
    throw Error("structure/form size mismatch");
  for (const auto& row : L->structure_) {
    if (row.size() != n) throw Error("structure size mismatch");
    for (const auto& v : row)
      if (v.size() != n) throw Error("structure size mismatch");
  }
  for (const auto& row : L->form_)
    if (row.size() != n) throw Error("form size mismatch");
  return L;
}

int LieAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim_; ++i)
    if (names_[i] == name) return i;
  return -1;
}

bool LieAlgebra::same_as(const LieAlgebra& o) const {
  return dim_ == o.dim_ && names_ == o.names_ && structure_ == o.structure_ &&
         form_ == o.form_;
}

void require_same_algebra(const LieAlgebraPtr& a, const LieAlgebraPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b))
    throw SpecMismatchError("elements live over different Lie algebras");
}

LieAlgebraPtr LieAlgebra::sl2() {
  // Basis e, h, f; [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  // Form = trace form of the defining representation, <h,h> = 2, <e,f> = 1.
  auto c = zero_structure(3);
  const int E = 0, H = 1, F = 2;
  c[H][E][E] = 2;
  c[E][H][E] = -2;
  c[H][F][F] = -2;
  c[F][H][F] = 2;
  c[E][F][H] = 1;
  c[F][E][H] = -1;
  QMatrix form(3, std::vector<Rational>(3, 0));
  form[E][F] = form[F][E] = 1;
  form[H][H] = 2;
  return make({"e", "h", "f"}, std::move(c), std::move(form), Rational(2));
}

LieAlgebraPtr LieAlgebra::sl3() {
  // Chevalley basis from the defining representation: e1 = E12, e2 = E23,
  // e3 = E13, f1 = E21, f2 = E32, f3 = E31, h1 = E11-E22, h2 = E22-E33.
  // Form = trace form; normalized so <theta, theta> = 2.
  const int e1 = 0, e2 = 1, e3 = 2, f1 = 3, f2 = 4, f3 = 5, h1 = 6, h2 = 7;
  auto c = zero_structure(8);
  auto set = [&](int i, int j, int k, const Rational& v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
  };
  set(e1, e2, e3, 1);
  set(e1, f1, h1, 1);
  set(e2, f2, h2, 1);
  set(e3, f3, h1, 1);
  c[e3][f3][h2] = 1;
  c[f3][e3][h2] = -1;
  set(e1, f3, f2, -1);
  set(e2, f3, f1, 1);
  set(e3, f1, e2, -1);
  set(e3, f2, e1, 1);
  set(f1, f2, f3, -1);
  set(h1, e1, e1, 2);
  set(h1, e2, e2, -1);
  set(h1, e3, e3, 1);
  set(h1, f1, f1, -2);
  set(h1, f2, f2, 1);
  set(h1, f3, f3, -1);
  set(h2, e1, e1, -1);
  set(h2, e2, e2, 2);
  set(h2, e3, e3, 1);
  set(h2, f1, f1, 1);
  set(h2, f2, f2, -2);
  set(h2, f3, f3, -1);
  QMatrix form(8, std::vector<Rational>(8, 0));
  form[e1][f1] = form[f1][e1] = 1;
  form[e2][f2] = form[f2][e2] = 1;
  form[e3][f3] = form[f3][e3] = 1;
  form[h1][h1] = 2;
  form[h2][h2] = 2;
  form[h1][h2] = form[h2][h1] = -1;
  return make({"e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2"}, std::move(c),
              std::move(form), Rational(3));
}

LieAlgebraPtr LieAlgebra::abelian(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("a" + std::to_string(i));
  return make(std::move(names), zero_structure(dim), identity_matrix(dim));
}

LieAlgebraPtr LieAlgebra::preset(const std::string& name) {
  if (name == "sl2") return sl2();
  if (name == "sl3") return sl3();
  throw Error("unknown Lie algebra preset '" + name + "'");
}

LieAlgebraPtr LieAlgebra::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = -1;
  std::vector<std::string> names;
  std::map<std::pair<int, int>, std::vector<Rational>> brackets;
  QMatrix form;
  std::optional<Rational> hvee;
  auto idx = [&](const std::string& n) {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw Error("unknown basis name '" + n + "' in Lie algebra file");
  };
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "dim") {
      ls >> dim;
    } else if (kw == "basis") {
      std::string n;
      while (ls >> n) names.push_back(n);
    } else if (kw == "bracket" || kw == "form") {
      if (names.empty()) throw Error("basis must come before bracket/form lines");
      if (form.empty()) form = QMatrix(names.size(), std::vector<Rational>(names.size(), 0));
      std::string a, b, eq;
      ls >> a >> b >> eq;
      if (eq != "=") throw Error("expected '=' in line: " + line);
      int i = idx(a), j = idx(b);
      if (kw == "form") {
        std::string val;
        ls >> val;
        form[i][j] = form[j][i] = rational_from_string(val);
        continue;
      }
      std::vector<Rational> v(names.size(), 0);
      // right hand side: c1 name1 + c2 name2 ... ; "0" for the zero bracket
      std::string tok;
      Rational sign = 1;
      std::optional<Rational> coeff;
      while (ls >> tok) {
        if (tok == "+") {
          sign = 1;
          continue;
        }
        if (tok == "-") {
          sign = -1;
          continue;
        }
        bool numeric = (tok.find_first_not_of("0123456789/-") == std::string::npos);
        if (numeric && tok != "-") {
          coeff = rational_from_string(tok);
          continue;
        }
        Rational c = sign * (coeff ? *coeff : Rational(1));
        v[idx(tok)] += c;
        coeff.reset();
        sign = 1;
      }
      brackets[{i, j}] = v;
    } else if (kw == "dual_coxeter") {
      std::string val;
      ls >> val;
      hvee = rational_from_string(val);
    } else {
      throw Error("unknown keyword '" + kw + "' in Lie algebra file");
    }
  }
  if (dim != static_cast<int>(names.size()))
    throw Error("dim line disagrees with basis line");
  if (form.empty()) form = QMatrix(names.size(), std::vector<Rational>(names.size(), 0));
  auto structure = zero_structure(dim);
  for (const auto& [ij, v] : brackets) structure[ij.first][ij.second] = v;
  // Fill [b,a] = -[a,b] where only one direction was given.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      bool has_ij = brackets.count({i, j});
      bool has_ji = brackets.count({j, i});
      if (has_ij && !has_ji)
        for (int k = 0; k < dim; ++k) structure[j][i][k] = -structure[i][j][k];
    }
  return make(std::move(names), std::move(structure), std::move(form), hvee);
}

LieAlgebraPtr LieAlgebra::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open Lie algebra file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

LieElement::LieElement(LieAlgebraPtr algebra, std::vector<Rational> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != algebra_->dim())
    throw Error("Lie element coefficient length mismatch");
}

LieElement LieElement::basis(LieAlgebraPtr algebra, int i) {
  std::vector<Rational> c(algebra->dim(), 0);
  c[i] = 1;
  return LieElement(std::move(algebra), std::move(c));
}

LieElement LieElement::zero(LieAlgebraPtr algebra) {
  std::vector<Rational> c(algebra->dim(), 0);
  return LieElement(std::move(algebra), std::move(c));
}

bool LieElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!tva::is_zero(c)) return false;
  return true;
}

LieElement LieElement::operator+(const LieElement& o) const {
  require_same_algebra(algebra_, o.algebra_);
  std::vector<Rational> c = coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return LieElement(algebra_, std::move(c));
}

LieElement LieElement::operator-(const LieElement& o) const {
  require_same_algebra(algebra_, o.algebra_);
  std::vector<Rational> c = coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return LieElement(algebra_, std::move(c));
}

LieElement LieElement::operator*(const Rational& s) const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v *= s;
  return LieElement(algebra_, std::move(c));
}

bool LieElement::operator==(const LieElement& o) const {
  return algebra_->same_as(*o.algebra_) && coeffs_ == o.coeffs_;
}

std::string LieElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < algebra_->dim(); ++i) {
    if (tva::is_zero(coeffs_[i])) continue;
    Rational a = coeffs_[i];
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (a != 1) os << tva::to_string(a) << "*";
    os << "J[" << algebra_->basis_name(i) << "]";
  }
  if (first) return "0";
  return os.str();
}

LieElement lie_bracket(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  int n = x.algebra()->dim();
  std::vector<Rational> out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (tva::is_zero(x.coeffs()[i])) continue;
    for (int j = 0; j < n; ++j) {
      if (tva::is_zero(y.coeffs()[j])) continue;
      Rational c = x.coeffs()[i] * y.coeffs()[j];
      const auto& b = x.algebra()->bracket(i, j);
      for (int k = 0; k < n; ++k)
        if (!tva::is_zero(b[k])) out[k] += c * b[k];
    }
  }
  return LieElement(x.algebra(), std::move(out));
}

Rational lie_form(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  int n = x.algebra()->dim();
  Rational out = 0;
  for (int i = 0; i < n; ++i) {
    if (tva::is_zero(x.coeffs()[i])) continue;
    for (int j = 0; j < n; ++j)
      out += x.coeffs()[i] * y.coeffs()[j] * x.algebra()->form(i, j);
  }
  return out;
}

LieValidation validate_lie(const LieAlgebra& L) {
  LieValidation v;
  int n = L.dim();
  auto name = [&](int i) { return L.basis_name(i); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ++v.checks;
      for (int k = 0; k < n; ++k)
        if (L.bracket(i, j)[k] != -L.bracket(j, i)[k]) {
          v.failures.push_back("antisymmetry fails on (" + name(i) + "," + name(j) + ")");
          break;
        }
      if (L.form(i, j) != L.form(j, i))
        v.failures.push_back("form not symmetric on (" + name(i) + "," + name(j) + ")");
    }
  auto bracket_vec = [&](const std::vector<Rational>& x, int j) {
    std::vector<Rational> out(n, 0);
    for (int i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      const auto& b = L.bracket(i, j);
      for (int k = 0; k < n; ++k) out[k] += x[i] * b[k];
    }
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ++v.checks;
        // Jacobi: [[i,j],k] + [[j,k],i] + [[k,i],j] = 0.
        std::vector<Rational> acc = bracket_vec(L.bracket(i, j), k);
        auto t2 = bracket_vec(L.bracket(j, k), i);
        auto t3 = bracket_vec(L.bracket(k, i), j);
        bool ok = true;
        for (int a = 0; a < n; ++a)
          if (!is_zero(acc[a] + t2[a] + t3[a])) ok = false;
        if (!ok)
          v.failures.push_back("Jacobi fails on (" + name(i) + "," + name(j) + "," +
                               name(k) + ")");
        // Invariance: <[i,j],k> = <i,[j,k]>.
        Rational lhs = 0, rhs = 0;
        for (int a = 0; a < n; ++a) {
          lhs += L.bracket(i, j)[a] * L.form(a, k);
          rhs += L.bracket(j, k)[a] * L.form(i, a);
        }
        if (lhs != rhs)
          v.failures.push_back("invariance fails on (" + name(i) + "," + name(j) + "," +
                               name(k) + ")");
      }
  return v;
}

QMatrix killing_form(const LieAlgebra& L) {
  int n = L.dim();
  QMatrix K(n, std::vector<Rational>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rational tr = 0;
      // trace of ad(J^a) ad(J^b): sum_c [J^a, [J^b, J^c]]_c.
      for (int c = 0; c < n; ++c) {
        const auto& inner = L.bracket(b, c);
        for (int d = 0; d < n; ++d) {
          if (is_zero(inner[d])) continue;
          tr += inner[d] * L.bracket(a, d)[c];
        }
      }
      K[a][b] = tr;
    }
  return K;
}

}  // namespace tva
