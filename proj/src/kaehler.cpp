#include "tva/kaehler.hpp"

#include <sstream>

#include "tva/linalg.hpp"

namespace tva {

KaehlerElement KaehlerElement::form(RingSpecPtr spec, const Exponent& mono, int var,
                                    const Rational& c) {
  KaehlerElement w(std::move(spec));
  Exponent m = mono.size() ? mono : Exponent::zero(w.spec_->arity());
  if (m.size() != w.spec_->arity()) throw Error("exponent arity mismatch");
  if (var < 0 || var >= w.spec_->arity()) throw Error("form variable out of range");
  w.add_term({m, var}, c);
  return w;
}

void KaehlerElement::add_term(const FormKey& k, const Rational& c) {
  if (tva::is_zero(c)) return;
  if (!is_legal_monomial(*spec_, k.mono))
    throw Error("illegal monomial coefficient in differential form");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (tva::is_zero(it->second)) terms_.erase(it);
  }
}

KaehlerElement KaehlerElement::operator-() const {
  KaehlerElement r(spec_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

KaehlerElement KaehlerElement::operator+(const KaehlerElement& o) const {
  require_same_spec(spec_, o.spec_);
  KaehlerElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

KaehlerElement KaehlerElement::operator-(const KaehlerElement& o) const {
  require_same_spec(spec_, o.spec_);
  KaehlerElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
  return r;
}

KaehlerElement KaehlerElement::operator*(const Rational& c) const {
  KaehlerElement r(spec_);
  if (tva::is_zero(c)) return r;
  for (const auto& [k, t] : terms_) r.terms_.emplace(k, t * c);
  return r;
}

bool KaehlerElement::operator==(const KaehlerElement& o) const {
  return spec_->same_as(*o.spec_) && terms_ == o.terms_;
}

KaehlerElement operator*(const RingElement& r, const KaehlerElement& w) {
  require_same_spec(r.spec(), w.spec());
  KaehlerElement out(w.spec());
  for (const auto& [e, c] : r.terms())
    for (const auto& [k, d] : w.terms()) out.add_term({k.mono + e, k.var}, c * d);
  return out;
}

std::string KaehlerElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    Rational a = c;
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
    std::string mono = monomial_to_string(*spec_, k.mono);
    if (a != 1) os << tva::to_string(a) << "*";
    if (mono != "1") os << mono << "*";
    os << "d" << spec_->var(k.var).name;
  }
  return os.str();
}

KaehlerElement universal_d(const RingElement& r) {
  KaehlerElement w(r.spec());
  int n = r.spec()->arity();
  for (const auto& [e, c] : r.terms())
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      w.add_term({e - Exponent::unit(n, i), i}, c * e[i]);
    }
  return w;
}

namespace {

// Largest variable index with m_i != 0; the relation d(x^m) = 0 eliminates it.
int pivot_index(const Exponent& m) {
  for (int i = m.size() - 1; i >= 0; --i)
    if (m[i] != 0) return i;
  return -1;
}

}  // namespace

CentralClass normal_form(const KaehlerElement& w) {
  const RingSpecPtr& spec = w.spec();
  int n = spec->arity();
  // Group terms by homogeneous degree.
  std::map<Exponent, std::vector<std::pair<FormKey, Rational>>> by_degree;
  for (const auto& [k, c] : w.terms()) by_degree[k.degree()].push_back({k, c});

  KaehlerElement out(spec);
  for (auto& [m, terms] : by_degree) {
    int p = pivot_index(m);
    if (p < 0) {
      // Degree zero carries no relation.
      for (auto& [k, c] : terms) out.add_term(k, c);
      continue;
    }
    FormKey pivot_key{m - Exponent::unit(n, p), p};
    Rational cp = 0;
    for (auto& [k, c] : terms)
      if (k == pivot_key) cp = c;
    if (!is_zero(cp)) {
      // Subtract (cp / m_p) * d(x^m); this zeroes the pivot coordinate.
      Rational f = cp / m[p];
      for (int i = 0; i < n; ++i) {
        if (m[i] == 0) continue;
        bool found = false;
        for (auto& [k, c] : terms)
          if (k.var == i && k == FormKey{m - Exponent::unit(n, i), i}) {
            c -= f * m[i];
            found = true;
          }
        if (!found) terms.push_back({{m - Exponent::unit(n, i), i}, -f * m[i]});
      }
    }
    for (auto& [k, c] : terms) out.add_term(k, c);
  }
  return CentralClass(std::move(out));
}

CentralClass CentralClass::operator-() const { return CentralClass(-rep_); }
CentralClass CentralClass::operator+(const CentralClass& o) const {
  return CentralClass(rep_ + o.rep_);  // nf is linear, canonicals are closed under +
}
CentralClass CentralClass::operator-(const CentralClass& o) const {
  return CentralClass(rep_ - o.rep_);
}
CentralClass CentralClass::operator*(const Rational& c) const {
  return CentralClass(rep_ * c);
}
bool CentralClass::operator==(const CentralClass& o) const { return rep_ == o.rep_; }

bool is_minus_side(const RingSpec& spec, const FormKey& key) {
  auto t = spec.t_index();
  if (!t) throw MissingLoopVariableError("ring spec has no distinguished t");
  return key.mono[*t] <= -1;
}

std::pair<CentralClass, CentralClass> split_nf(const KaehlerElement& w) {
  const RingSpecPtr& spec = w.spec();
  if (!spec->t_index())
    throw MissingLoopVariableError("split_nf needs a distinguished t");
  CentralClass nf = normal_form(w);
  KaehlerElement plus(spec), minus(spec);
  for (const auto& [k, c] : nf.representative().terms()) {
    if (is_minus_side(*spec, k))
      minus.add_term(k, c);
    else
      plus.add_term(k, c);
  }
  // Each homogeneous relation lives entirely on one side, so restricting the
  // canonical representative is the per-side normal form.
  return {normal_form(plus), normal_form(minus)};
}

std::vector<Exponent> DegreeBox::points() const {
  std::vector<Exponent> out;
  int n = lo.size();
  Exponent cur = lo;
  while (true) {
    out.push_back(cur);
    int i = 0;
    for (; i < n; ++i) {
      if (cur[i] < hi[i]) {
        cur[i]++;
        break;
      }
      cur[i] = lo[i];
    }
    if (i == n) break;
  }
  return out;
}

std::map<Exponent, int> graded_dimension(const RingSpecPtr& spec, const DegreeBox& box) {
  std::map<Exponent, int> dims;
  int n = spec->arity();
  for (const Exponent& m : box.points()) {
    // Basis of the degree-m piece of Omega^1_R: x^{m-e_i} dx_i for legal i.
    std::vector<int> basis;
    std::map<FormKey, int> col;
    for (int i = 0; i < n; ++i) {
      Exponent a = m - Exponent::unit(n, i);
      if (!is_legal_monomial(*spec, a)) continue;
      col[{a, i}] = static_cast<int>(basis.size());
      basis.push_back(i);
    }
    if (basis.empty()) {
      dims[m] = 0;
      continue;
    }
    QMatrix rows;
    for (int i : basis) {
      CentralClass nf = normal_form(
          KaehlerElement::form(spec, m - Exponent::unit(n, i), i));
      std::vector<Rational> row(basis.size(), 0);
      for (const auto& [k, c] : nf.representative().terms()) row[col.at(k)] = c;
      rows.push_back(std::move(row));
    }
    dims[m] = rank(std::move(rows));
  }
  return dims;
}

KaehlerElement apply_hom_form(const RingHom& h, const KaehlerElement& w) {
  require_same_spec(w.spec(), h.source());
  KaehlerElement out(h.target());
  for (const auto& [k, c] : w.terms()) {
    RingElement coeff = apply_hom(h, RingElement::monomial(h.source(), k.mono, c));
    out = out + coeff * universal_d(h.image(k.var));
  }
  return out;
}

}  // namespace tva
