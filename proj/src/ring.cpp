#include "tva/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tva {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos) return "";
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

}  // namespace

RingSpec::RingSpec(std::vector<Variable> vars, std::optional<int> t_index)
    : vars_(std::move(vars)), t_index_(t_index) {}

RingSpecPtr RingSpec::make(std::vector<Variable> vars, std::optional<int> t_index) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.name.empty()) throw Error("empty variable name");
    if (!seen.insert(v.name).second)
      throw Error("duplicate variable name '" + v.name + "'");
  }
  if (t_index) {
    if (*t_index < 0 || *t_index >= static_cast<int>(vars.size()))
      throw Error("distinguished t index out of range");
    if (!vars[*t_index].invertible)
      throw Error("distinguished t must be invertible");
  }
  return RingSpecPtr(new RingSpec(std::move(vars), t_index));
}

RingSpecPtr RingSpec::parse(std::string_view text) {
  std::vector<Variable> vars;
  std::optional<std::string> t_name;
  for (const auto& group : split(text, ';')) {
    if (group.empty()) continue;
    size_t colon = group.find(':');
    size_t eq = group.find('=');
    if (colon == std::string::npos && eq != std::string::npos) {
      if (trim(group.substr(0, eq)) != "t")
        throw Error("bad ring spec clause '" + group + "'");
      t_name = trim(group.substr(eq + 1));
      continue;
    }
    if (colon == std::string::npos)
      throw Error("bad ring spec clause '" + group + "'");
    std::string kind = trim(group.substr(0, colon));
    bool invertible;
    if (kind == "laurent")
      invertible = true;
    else if (kind == "poly")
      invertible = false;
    else
      throw Error("unknown variable kind '" + kind + "'");
    for (const auto& name : split(group.substr(colon + 1), ',')) {
      if (name.empty()) throw Error("empty variable name in ring spec");
      vars.push_back({name, invertible});
    }
  }
  std::optional<int> t_index;
  if (t_name) {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == *t_name) t_index = static_cast<int>(i);
    if (!t_index) throw Error("distinguished t '" + *t_name + "' is not a declared variable");
  }
  return make(std::move(vars), t_index);
}

int RingSpec::index_of(std::string_view name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

bool RingSpec::same_as(const RingSpec& other) const {
  if (t_index_ != other.t_index_) return false;
  if (vars_.size() != other.vars_.size()) return false;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != other.vars_[i].name ||
        vars_[i].invertible != other.vars_[i].invertible)
      return false;
  return true;
}

std::string RingSpec::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](bool invertible) {
    bool any = false;
    for (const auto& v : vars_)
      if (v.invertible == invertible) any = true;
    if (!any) return;
    if (!first) os << ";";
    first = false;
    os << (invertible ? "laurent:" : "poly:");
    bool fv = true;
    for (const auto& v : vars_) {
      if (v.invertible != invertible) continue;
      if (!fv) os << ",";
      fv = false;
      os << v.name;
    }
  };
  emit(true);
  emit(false);
  if (t_index_) os << (first ? "" : ";") << "t=" << vars_[*t_index_].name;
  return os.str();
}

void require_same_spec(const RingSpecPtr& a, const RingSpecPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b))
    throw SpecMismatchError("elements live over different ring specs");
}

Exponent Exponent::unit(int arity, int i) {
  std::vector<int> e(arity, 0);
  e[i] = 1;
  return Exponent(std::move(e));
}

int Exponent::total_degree() const {
  int d = 0;
  for (int v : e_) d += v;
  return d;
}

bool Exponent::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

Exponent Exponent::operator+(const Exponent& o) const {
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Exponent Exponent::operator-(const Exponent& o) const {
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

Exponent Exponent::with(int i, int v) const {
  Exponent r = *this;
  r.e_[i] = v;
  return r;
}

std::strong_ordering Exponent::operator<=>(const Exponent& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da <=> db;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return e_[i] <=> o.e_[i];
  return std::strong_ordering::equal;
}

bool is_legal_monomial(const RingSpec& spec, const Exponent& e) {
  for (int i = 0; i < spec.arity(); ++i)
    if (!spec.var(i).invertible && e[i] < 0) return false;
  return true;
}

RingElement RingElement::one(RingSpecPtr spec) {
  return monomial(std::move(spec), Exponent::zero(0), 1);
}

RingElement RingElement::monomial(RingSpecPtr spec, const Exponent& e, const Rational& c) {
  RingElement r(std::move(spec));
  Exponent ex = e;
  if (ex.size() == 0) ex = Exponent::zero(r.spec_->arity());
  if (ex.size() != r.spec_->arity()) throw Error("exponent arity mismatch");
  if (!is_legal_monomial(*r.spec_, ex))
    throw Error("negative exponent on non-invertible variable in " +
                monomial_to_string(*r.spec_, ex));
  if (!tva::is_zero(c)) r.terms_.emplace(ex, c);
  return r;
}

RingElement RingElement::variable(RingSpecPtr spec, int i, int power) {
  Exponent e = Exponent::zero(spec->arity());
  e[i] = power;
  return monomial(std::move(spec), e, 1);
}

bool RingElement::is_unit() const {
  if (terms_.size() != 1) return false;
  const Exponent& e = terms_.begin()->first;
  for (int i = 0; i < spec_->arity(); ++i)
    if (e[i] != 0 && !spec_->var(i).invertible) return false;
  return true;
}

RingElement RingElement::unit_inverse() const {
  if (!is_unit()) throw Error("not a unit");
  const auto& [e, c] = *terms_.begin();
  return monomial(spec_, Exponent::zero(spec_->arity()) - e, Rational(1) / c);
}

bool RingElement::is_free_of(int var_index) const {
  for (const auto& [e, c] : terms_)
    if (e[var_index] != 0) return false;
  return true;
}

void RingElement::add_term(const Exponent& e, const Rational& c) {
  if (tva::is_zero(c)) return;
  if (!is_legal_monomial(*spec_, e))
    throw Error("negative exponent on non-invertible variable in " +
                monomial_to_string(*spec_, e));
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (tva::is_zero(it->second)) terms_.erase(it);
  }
}

RingElement RingElement::operator-() const {
  RingElement r(spec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same_spec(spec_, o.spec_);
  RingElement r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
  require_same_spec(spec_, o.spec_);
  RingElement r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  require_same_spec(spec_, o.spec_);
  RingElement r(spec_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

RingElement RingElement::operator*(const Rational& c) const {
  RingElement r(spec_);
  if (tva::is_zero(c)) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

bool RingElement::operator==(const RingElement& o) const {
  return spec_->same_as(*o.spec_) && terms_ == o.terms_;
}

std::string monomial_to_string(const RingSpec& spec, const Exponent& e) {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < spec.arity(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    any = true;
    os << spec.var(i).name;
    if (e[i] != 1) os << "^" << e[i];
  }
  if (!any) return "1";
  return os.str();
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Leading (largest) term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
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
    std::string mono = monomial_to_string(*spec_, e);
    if (a == 1 && mono != "1")
      os << mono;
    else if (mono == "1")
      os << tva::to_string(a);
    else
      os << tva::to_string(a) << "*" << mono;
  }
  return os.str();
}

RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }

RingHom RingHom::make_unchecked(RingSpecPtr source, RingSpecPtr target,
                                std::vector<RingElement> images) {
  if (static_cast<int>(images.size()) != source->arity())
    throw Error("hom needs one image per source variable");
  for (const auto& im : images) require_same_spec(im.spec(), target);
  return RingHom(std::move(source), std::move(target), std::move(images));
}

RingHom RingHom::make(RingSpecPtr source, RingSpecPtr target,
                      std::vector<RingElement> images) {
  RingHom h = make_unchecked(std::move(source), std::move(target), std::move(images));
  HomValidation v = validate_hom(h);
  if (!v.valid()) throw InvalidHomError("invalid ring hom: " + v.violations.front());
  return h;
}

RingHom RingHom::identity(RingSpecPtr spec) {
  std::vector<RingElement> images;
  for (int i = 0; i < spec->arity(); ++i)
    images.push_back(RingElement::variable(spec, i));
  return make(spec, spec, std::move(images));
}

RingHom RingHom::parse(std::string_view text, RingSpecPtr source, RingSpecPtr target) {
  std::string body(text);
  if (body.rfind("hom:", 0) == 0) body = body.substr(4);
  std::vector<RingElement> images(source->arity(),
                                  RingElement::zero(target));
  std::vector<bool> given(source->arity(), false);
  for (const auto& clause : split(body, ';')) {
    if (clause.empty()) continue;
    size_t arrow = clause.find("->");
    if (arrow == std::string::npos)
      throw Error("hom clause '" + clause + "' lacks '->'");
    std::string name = trim(clause.substr(0, arrow));
    int idx = source->index_of(name);
    if (idx < 0) throw Error("hom maps unknown variable '" + name + "'");
    // The image is a product of powers with an optional leading rational.
    std::string rhs = trim(clause.substr(arrow + 2));
    RingElement im = RingElement::one(target);
    for (const auto& factor : split(rhs, '*')) {
      if (factor.empty()) throw Error("empty factor in hom image");
      size_t caret = factor.find('^');
      std::string base = trim(caret == std::string::npos ? factor : factor.substr(0, caret));
      int power = 1;
      if (caret != std::string::npos) power = std::stoi(trim(factor.substr(caret + 1)));
      int vi = target->index_of(base);
      if (vi >= 0) {
        im = im * RingElement::variable(target, vi, power);
      } else {
        if (caret != std::string::npos)
          throw Error("unknown variable '" + base + "' in hom image");
        im = im * RingElement::monomial(target, Exponent::zero(target->arity()),
                                        rational_from_string(base));
      }
    }
    images[idx] = im;
    given[idx] = true;
  }
  for (int i = 0; i < source->arity(); ++i)
    if (!given[i]) throw Error("hom gives no image for '" + source->var(i).name + "'");
  return make_unchecked(std::move(source), std::move(target), std::move(images));
}

std::string RingHom::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < source_->arity(); ++i) {
    if (i) os << "; ";
    os << source_->var(i).name << " -> " << images_[i].to_string();
  }
  return os.str();
}

HomValidation validate_hom(const RingHom& h) {
  HomValidation v;
  const RingSpec& src = *h.source();
  for (int i = 0; i < src.arity(); ++i) {
    const RingElement& im = h.image(i);
    if (src.var(i).invertible && !im.is_unit())
      v.violations.push_back("image of invertible variable '" + src.var(i).name +
                             "' is not a unit: " + im.to_string());
  }
  auto st = h.source()->t_index();
  auto tt = h.target()->t_index();
  if (st && tt) {
    const RingElement& im = h.image(*st);
    bool ok = im.is_unit();
    if (ok) {
      const Exponent& e = im.terms().begin()->first;
      ok = (e[*tt] == 1);
      for (int j = 0; ok && j < h.target()->arity(); ++j)
        if (j != *tt && e[j] != 0 && !h.target()->var(j).invertible) ok = false;
    }
    if (!ok)
      v.violations.push_back("distinguished t must map to a unit times t, got " +
                             im.to_string());
  }
  return v;
}

RingElement apply_hom(const RingHom& h, const RingElement& a) {
  require_same_spec(a.spec(), h.source());
  RingElement out = RingElement::zero(h.target());
  for (const auto& [e, c] : a.terms()) {
    RingElement term = RingElement::monomial(h.target(), Exponent::zero(h.target()->arity()), c);
    for (int i = 0; i < h.source()->arity(); ++i) {
      int k = e[i];
      if (k == 0) continue;
      RingElement base = k > 0 ? h.image(i) : h.image(i).unit_inverse();
      for (int p = 0; p < std::abs(k); ++p) term = term * base;
    }
    out = out + term;
  }
  return out;
}

RingHom compose_hom(const RingHom& outer, const RingHom& inner) {
  require_same_spec(inner.target(), outer.source());
  std::vector<RingElement> images;
  for (int i = 0; i < inner.source()->arity(); ++i)
    images.push_back(apply_hom(outer, inner.image(i)));
  return RingHom::make_unchecked(inner.source(), outer.target(), std::move(images));
}

}  // namespace tva
