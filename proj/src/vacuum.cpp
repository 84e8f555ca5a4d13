#include "tva/vacuum.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include "tva/parallel.hpp"

namespace tva {

namespace {

int require_t(const RingSpec& spec) {
  auto t = spec.t_index();
  if (!t) throw MissingLoopVariableError("vacuum module needs a ring with distinguished t");
  return *t;
}

void acc_add(std::map<PBWMonomial, Rational>& acc, const PBWMonomial& mon,
             const Rational& c) {
  if (is_zero(c)) return;
  auto it = acc.find(mon);
  if (it == acc.end()) {
    acc.emplace(mon, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

/// Exponents over the fiber variables (t entry zero), per-variable window.
std::vector<Exponent> fiber_monomials(const RingSpec& spec, int bound) {
  int t = require_t(spec);
  std::vector<int> avars;
  for (int i = 0; i < spec.arity(); ++i)
    if (i != t) avars.push_back(i);
  std::vector<Exponent> out;
  Exponent cur = Exponent::zero(spec.arity());
  if (avars.empty()) {
    out.push_back(cur);
    return out;
  }
  std::vector<int> lo(avars.size()), hi(avars.size());
  for (size_t k = 0; k < avars.size(); ++k) {
    lo[k] = spec.var(avars[k]).invertible ? -bound : 0;
    hi[k] = bound;
    cur[avars[k]] = lo[k];
  }
  while (true) {
    out.push_back(cur);
    size_t k = 0;
    for (; k < avars.size(); ++k) {
      if (cur[avars[k]] < hi[k]) {
        cur[avars[k]]++;
        break;
      }
      cur[avars[k]] = lo[k];
    }
    if (k == avars.size()) break;
  }
  return out;
}

}  // namespace

NegGenerator NegGenerator::loop_gen(const RingSpec& spec, int lie_index, Exponent mono) {
  int t = require_t(spec);
  NegGenerator g;
  g.kind = Kind::Loop;
  g.index = lie_index;
  g.weight = -mono[t];
  g.mono = std::move(mono);
  return g;
}

NegGenerator NegGenerator::central_gen(const RingSpec& spec, const FormKey& key) {
  int t = require_t(spec);
  NegGenerator g;
  g.kind = Kind::Central;
  g.index = key.var;
  g.weight = key.var == t ? -key.mono[t] - 1 : -key.mono[t];
  g.mono = key.mono;
  return g;
}

int monomial_weight(const PBWMonomial& mon) {
  int w = 0;
  for (const auto& g : mon) w += g.weight;
  return w;
}

int monomial_a_degree(const PBWMonomial& mon, const RingSpec& spec) {
  int t = require_t(spec);
  int d = 0;
  for (const auto& g : mon) {
    d += g.mono.total_degree() - g.mono[t];
    if (g.kind == NegGenerator::Kind::Central && g.index != t) d += 1;
  }
  return d;
}

VacuumState::VacuumState(LieAlgebraPtr lie, RingSpecPtr spec)
    : lie_(std::move(lie)), spec_(std::move(spec)) {
  require_t(*spec_);
}

VacuumState VacuumState::vacuum(LieAlgebraPtr lie, RingSpecPtr spec) {
  VacuumState v(std::move(lie), std::move(spec));
  v.terms_.emplace(PBWMonomial{}, 1);
  return v;
}

VacuumState VacuumState::basis_state(LieAlgebraPtr lie, RingSpecPtr spec, PBWMonomial mon) {
  VacuumState v(std::move(lie), std::move(spec));
  if (!std::is_sorted(mon.begin(), mon.end(),
                      [](const NegGenerator& a, const NegGenerator& b) { return b < a; }))
    throw Error("PBW monomial is not ordered");
  v.terms_.emplace(std::move(mon), 1);
  return v;
}

VacuumState VacuumState::operator-() const {
  VacuumState v(lie_, spec_);
  for (const auto& [m, c] : terms_) v.terms_.emplace(m, -c);
  return v;
}

VacuumState VacuumState::operator+(const VacuumState& o) const {
  require_same_algebra(lie_, o.lie_);
  require_same_spec(spec_, o.spec_);
  VacuumState v = *this;
  for (const auto& [m, c] : o.terms_) v.add_term(m, c);
  return v;
}

VacuumState VacuumState::operator-(const VacuumState& o) const { return *this + (-o); }

VacuumState VacuumState::operator*(const Rational& c) const {
  VacuumState v(lie_, spec_);
  if (tva::is_zero(c)) return v;
  for (const auto& [m, t] : terms_) v.terms_.emplace(m, t * c);
  return v;
}

bool VacuumState::operator==(const VacuumState& o) const {
  return lie_->same_as(*o.lie_) && spec_->same_as(*o.spec_) && terms_ == o.terms_;
}

void VacuumState::add_term(const PBWMonomial& mon, const Rational& c) {
  acc_add(terms_, mon, c);
}

namespace {

std::string generator_to_string(const RingSpec& spec, const LieAlgebra& lie,
                                const NegGenerator& g) {
  std::ostringstream os;
  if (g.kind == NegGenerator::Kind::Loop) {
    os << "J[" << lie.basis_name(g.index) << ";" << monomial_to_string(spec, g.mono)
       << "]";
  } else {
    std::string mono = monomial_to_string(spec, g.mono);
    os << "C[";
    if (mono != "1") os << mono << "*";
    os << "d" << spec.var(g.index).name << "]";
  }
  return os.str();
}

}  // namespace

std::string VacuumState::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mon, c] : terms_) {
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
    if (a != 1 || mon.empty()) os << tva::to_string(a);
    if (!mon.empty()) {
      if (a != 1) os << "*";
      os << "(";
      for (size_t i = 0; i < mon.size(); ++i) {
        if (i) os << " ";
        os << generator_to_string(*spec_, *lie_, mon[i]);
      }
      os << ")";
    }
    os << "|0>";
  }
  return os.str();
}

std::string VacuumState::to_json(int indent) const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mon, c] : terms_) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& g : mon) {
      nlohmann::json f;
      if (g.kind == NegGenerator::Kind::Loop) {
        f["kind"] = "loop";
        f["basis"] = lie_->basis_name(g.index);
        f["mono"] = monomial_to_string(*spec_, g.mono);
      } else {
        f["kind"] = "central";
        f["form"] = monomial_to_string(*spec_, g.mono) + "*d" + spec_->var(g.index).name;
      }
      f["weight"] = g.weight;
      factors.push_back(f);
    }
    nlohmann::json term;
    term["coeff"] = tva::to_string(c);
    term["factors"] = factors;
    terms.push_back(term);
  }
  nlohmann::json j;
  j["terms"] = terms;
  return j.dump(indent);
}

Straightener::Straightener(LieAlgebraPtr lie, RingSpecPtr spec)
    : lie_(std::move(lie)), spec_(std::move(spec)), t_(require_t(*spec_)) {}

const Straightener::AtomicBracket& Straightener::bracket(int i, const Exponent& mi,
                                                         int j, const Exponent& mj) {
  auto key = std::make_tuple(i, mi, j, mj);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  AtomicBracket ab;
  Exponent sum = mi + mj;
  const auto& c = lie_->bracket(i, j);
  for (int k = 0; k < lie_->dim(); ++k)
    if (!tva::is_zero(c[k])) ab.loop_terms.push_back({k, sum, c[k]});
  const Rational& pairing = lie_->form(i, j);
  if (!tva::is_zero(pairing)) {
    // (1/2) <J^i,J^j> (x^mi d x^mj - x^mj d x^mi)
    KaehlerElement form(spec_);
    int n = spec_->arity();
    for (int k = 0; k < n; ++k) {
      int diff = mj[k] - mi[k];
      if (diff == 0) continue;
      form.add_term({sum - Exponent::unit(n, k), k}, Rational(diff) * pairing / 2);
    }
    CentralClass cls = normal_form(form);
    for (const auto& [fk, coeff] : cls.representative().terms())
      if (is_minus_side(*spec_, fk))
        ab.central_terms.push_back({NegGenerator::central_gen(*spec_, fk), coeff});
  }
  return cache_.emplace(std::move(key), std::move(ab)).first->second;
}

namespace {

/// Inserts a generator into an ordered monomial, keeping it non-increasing.
PBWMonomial sorted_insert(std::span<const NegGenerator> mon, const NegGenerator& g) {
  PBWMonomial out;
  out.reserve(mon.size() + 1);
  size_t p = 0;
  while (p < mon.size() && g < mon[p]) {
    out.push_back(mon[p]);
    ++p;
  }
  out.push_back(g);
  for (; p < mon.size(); ++p) out.push_back(mon[p]);
  return out;
}

}  // namespace

void Straightener::act_gen(int lie_index, const Exponent& mono, const Rational& c,
                           std::span<const NegGenerator> mon, Acc& acc) {
  if (is_zero(c)) return;
  const bool storable = mono[t_] <= -1;
  if (mon.empty()) {
    if (storable)
      acc_add(acc, PBWMonomial{NegGenerator::loop_gen(*spec_, lie_index, mono)}, c);
    return;  // ghat_plus annihilates the vacuum
  }
  const NegGenerator& front = mon.front();
  if (storable) {
    NegGenerator g = NegGenerator::loop_gen(*spec_, lie_index, mono);
    if (!(g < front)) {
      PBWMonomial out;
      out.reserve(mon.size() + 1);
      out.push_back(std::move(g));
      out.insert(out.end(), mon.begin(), mon.end());
      acc_add(acc, out, c);
      return;
    }
  }
  // g * front = front * g + [g, front]; central factors commute.
  auto tail = mon.subspan(1);
  Acc sub;
  act_gen(lie_index, mono, c, tail, sub);
  for (const auto& [m2, c2] : sub) {
    if (m2.empty() || !(front < m2.front())) {
      PBWMonomial out;
      out.reserve(m2.size() + 1);
      out.push_back(front);
      out.insert(out.end(), m2.begin(), m2.end());
      acc_add(acc, out, c2);
    } else if (front.kind == NegGenerator::Kind::Central) {
      acc_add(acc, sorted_insert(std::span(m2), front), c2);
    } else {
      // A heavier bracket descendant overtook the stored generator; place it
      // by straightening.
      act_gen(front.index, front.mono, c2, std::span(m2), acc);
    }
  }
  if (front.kind == NegGenerator::Kind::Loop) {
    const AtomicBracket& br = bracket(lie_index, mono, front.index, front.mono);
    for (const auto& [k, m2, coeff] : br.loop_terms) act_gen(k, m2, c * coeff, tail, acc);
    for (const auto& [cg, coeff] : br.central_terms)
      acc_add(acc, sorted_insert(tail, cg), c * coeff);
  }
}

void Straightener::add_central_class(const CentralClass& cls, const Rational& c,
                                     std::span<const NegGenerator> mon, Acc& acc) {
  for (const auto& [fk, coeff] : cls.representative().terms()) {
    if (!is_minus_side(*spec_, fk)) continue;  // plus side acts as zero
    acc_add(acc, sorted_insert(mon, NegGenerator::central_gen(*spec_, fk)), c * coeff);
  }
}

VacuumState Straightener::act(const ToroidalElement& x, const VacuumState& v) {
  require_same_algebra(lie_, x.lie());
  require_same_algebra(lie_, v.lie());
  require_same_spec(spec_, x.spec());
  require_same_spec(spec_, v.spec());
  Acc acc;
  for (const auto& [i, r] : x.loop_part())
    for (const auto& [e, ce] : r.terms())
      for (const auto& [mon, cv] : v.terms()) act_gen(i, e, ce * cv, std::span(mon), acc);
  if (!x.central_part().is_zero())
    for (const auto& [mon, cv] : v.terms())
      add_central_class(x.central_part(), cv, std::span(mon), acc);
  VacuumState out(lie_, spec_);
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

VacuumState Straightener::apply_T(const VacuumState& v) {
  Acc acc;
  int n = spec_->arity();
  for (const auto& [mon, cv] : v.terms()) {
    for (size_t p = 0; p < mon.size(); ++p) {
      const NegGenerator& g = mon[p];
      Rational factor = Rational(-g.mono[t_]) * cv;
      if (is_zero(factor)) continue;
      Exponent bumped = g.mono - Exponent::unit(n, t_);
      PBWMonomial rest;
      rest.reserve(mon.size() - 1);
      for (size_t q = 0; q < mon.size(); ++q)
        if (q != p) rest.push_back(mon[q]);
      if (g.kind == NegGenerator::Kind::Central) {
        // Renormalize the bumped form; it stays on the minus side.
        CentralClass cls = normal_form(KaehlerElement::form(spec_, bumped, g.index));
        add_central_class(cls, factor, std::span(rest), acc);
      } else {
        // Replace the factor in place, then restraighten the prefix.
        Acc cur;
        std::span<const NegGenerator> suffix(rest.begin() + p, rest.end());
        act_gen(g.index, bumped, factor, suffix, cur);
        for (size_t qi = p; qi-- > 0;) {
          Acc next;
          const NegGenerator& h = rest[qi];
          for (const auto& [m2, c2] : cur) {
            if (h.kind == NegGenerator::Kind::Central)
              acc_add(next, sorted_insert(std::span(m2), h), c2);
            else
              act_gen(h.index, h.mono, c2, std::span(m2), next);
          }
          cur = std::move(next);
        }
        for (const auto& [m2, c2] : cur) acc_add(acc, m2, c2);
      }
    }
  }
  VacuumState out(lie_, spec_);
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

VacuumState act_mode(const ToroidalElement& x, const VacuumState& v) {
  Straightener s(v.lie(), v.spec());
  return s.act(x, v);
}

VacuumState apply_T(const VacuumState& v) {
  Straightener s(v.lie(), v.spec());
  return s.apply_T(v);
}

FieldSpec FieldSpec::make_J(LieElement j, RingElement u) {
  FieldSpec f{Family::J, j.algebra(), u.spec(), j, u, KaehlerElement::zero(u.spec())};
  int t = require_t(*f.spec);
  if (!u.is_free_of(t)) throw Error("field coefficient u must be t-free");
  return f;
}

FieldSpec FieldSpec::make_Kdt(LieAlgebraPtr lie, RingElement u) {
  RingSpecPtr spec = u.spec();
  int t = require_t(*spec);
  if (!u.is_free_of(t)) throw Error("field coefficient u must be t-free");
  LieElement zero = LieElement::zero(lie);
  return FieldSpec{Family::Kdt, std::move(lie), spec, std::move(zero), std::move(u),
                   KaehlerElement::zero(spec)};
}

FieldSpec FieldSpec::make_Kom(LieAlgebraPtr lie, KaehlerElement omega) {
  RingSpecPtr spec = omega.spec();
  int t = require_t(*spec);
  for (const auto& [k, c] : omega.terms())
    if (k.var == t || k.mono[t] != 0)
      throw Error("Kom field form must come from the fiber algebra");
  LieElement zero = LieElement::zero(lie);
  return FieldSpec{Family::Kom, std::move(lie), spec, std::move(zero),
                   RingElement::zero(spec), std::move(omega)};
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::J: {
      std::string name = coefficient.to_string();
      // single basis vectors print by name, parseable as field text
      for (int i = 0; i < lie->dim(); ++i)
        if (coefficient == LieElement::basis(lie, i)) name = lie->basis_name(i);
      os << "J[" << name << ";u=" << u.to_string() << "]";
      break;
    }
    case Family::Kdt:
      os << "Kdt[u=" << u.to_string() << "]";
      break;
    case Family::Kom:
      os << "Kom[w=" << omega.to_string() << "]";
      break;
  }
  return os.str();
}

ToroidalElement field_mode(const FieldSpec& f, int n) {
  int t = require_t(*f.spec);
  int arity = f.spec->arity();
  switch (f.family) {
    case FieldSpec::Family::J: {
      RingElement tn = RingElement::monomial(f.spec, Exponent::zero(arity).with(t, n));
      return ToroidalElement::loop(f.coefficient, f.u * tn);
    }
    case FieldSpec::Family::Kdt: {
      KaehlerElement w(f.spec);
      for (const auto& [e, c] : f.u.terms()) w.add_term({e.with(t, n - 1), t}, c);
      return ToroidalElement::central(f.lie, normal_form(w));
    }
    case FieldSpec::Family::Kom: {
      KaehlerElement w(f.spec);
      for (const auto& [k, c] : f.omega.terms()) w.add_term({k.mono.with(t, n), k.var}, c);
      return ToroidalElement::central(f.lie, normal_form(w));
    }
  }
  throw Error("unreachable");
}

ToroidalElement field_mode_std(const FieldSpec& f, int n) {
  return field_mode(f, f.family == FieldSpec::Family::Kdt ? n + 1 : n);
}

VacuumState FieldSpec::label_state() const {
  int t = require_t(*spec);
  VacuumState out(lie, spec);
  if (family == Family::J) {
    for (int i = 0; i < lie->dim(); ++i) {
      if (tva::is_zero(coefficient.coeffs()[i])) continue;
      for (const auto& [e, c] : u.terms())
        out.add_term({NegGenerator::loop_gen(*spec, i, e.with(t, -1))},
                     coefficient.coeffs()[i] * c);
    }
    return out;
  }
  KaehlerElement w(spec);
  if (family == Family::Kdt) {
    for (const auto& [e, c] : u.terms()) w.add_term({e.with(t, -1), t}, c);
  } else {
    for (const auto& [k, c] : omega.terms()) w.add_term({k.mono.with(t, -1), k.var}, c);
  }
  auto [plus, minus] = split_nf(w);
  for (const auto& [fk, c] : minus.representative().terms())
    out.add_term({NegGenerator::central_gen(*spec, fk)}, c);
  return out;
}

std::vector<PBWMonomial> enumerate_states(const LieAlgebraPtr& lie,
                                          const RingSpecPtr& spec,
                                          const StateEnumeration& opt) {
  int t = require_t(*spec);
  int n = spec->arity();
  auto fibers = fiber_monomials(*spec, opt.a_degree_bound);
  std::vector<NegGenerator> gens;
  for (int w = 1; w <= opt.max_weight; ++w)
    for (int i = 0; i < lie->dim(); ++i)
      for (const Exponent& b : fibers)
        gens.push_back(NegGenerator::loop_gen(*spec, i, b.with(t, -w)));
  for (int w = 0; w <= opt.max_weight; ++w) {
    for (const Exponent& b : fibers) {
      // u t^{-w-1} dt
      FormKey key{b.with(t, -w - 1), t};
      KaehlerElement form = KaehlerElement::form(spec, key.mono, key.var);
      if (normal_form(form).representative() == form)
        gens.push_back(NegGenerator::central_gen(*spec, key));
      // t^{-w} x^b d x_j (weight w >= 1)
      if (w == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (j == t) continue;
        if (!is_legal_monomial(*spec, b)) continue;
        FormKey dkey{b.with(t, -w), j};
        KaehlerElement dform = KaehlerElement::form(spec, dkey.mono, dkey.var);
        if (normal_form(dform).representative() == dform)
          gens.push_back(NegGenerator::central_gen(*spec, dkey));
      }
    }
  }
  std::sort(gens.begin(), gens.end(),
            [](const NegGenerator& a, const NegGenerator& b) { return b < a; });
  std::vector<PBWMonomial> out;
  PBWMonomial cur;
  std::function<void(size_t, int, int)> rec = [&](size_t start, int budget, int k0_left) {
    out.push_back(cur);
    for (size_t i = start; i < gens.size(); ++i) {
      int w = gens[i].weight;
      if (w > budget) continue;
      if (w == 0 && k0_left == 0) continue;
      cur.push_back(gens[i]);
      rec(i, budget - w, k0_left - (w == 0 ? 1 : 0));
      cur.pop_back();
    }
  };
  rec(0, opt.max_weight, opt.weight0_central_cap);
  return out;
}

Report module_axiom_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                          int gen_t_bound, int gen_a_bound, const StateEnumeration& opt) {
  int t = require_t(*spec);
  auto fibers = fiber_monomials(*spec, gen_a_bound);
  std::vector<ToroidalElement> gens;
  for (int i = 0; i < lie->dim(); ++i)
    for (int nt = -gen_t_bound; nt <= gen_t_bound; ++nt)
      for (const Exponent& b : fibers)
        gens.push_back(ToroidalElement::loop(lie, i, RingElement::monomial(spec, b.with(t, nt))));
  auto states = enumerate_states(lie, spec, opt);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i; j < gens.size(); ++j) pairs.push_back({i, j});

  std::vector<Report> partial(pairs.size());
  parallel_for(pairs.size(), [&](size_t pi) {
    const ToroidalElement& x = gens[pairs[pi].first];
    const ToroidalElement& y = gens[pairs[pi].second];
    Straightener s(lie, spec);
    ToroidalElement br = bracket_hat(x, y);
    Report& rep = partial[pi];
    for (const auto& mon : states) {
      VacuumState v = VacuumState::basis_state(lie, spec, mon);
      VacuumState lhs = s.act(x, s.act(y, v)) - s.act(y, s.act(x, v));
      VacuumState rhs = s.act(br, v);
      ++rep.checked;
      if (!(lhs == rhs)) {
        ++rep.failed;
        if (rep.failures.size() < Report::kMaxStoredFailures)
          rep.failures.push_back({"module axiom",
                                  x.to_string() + " ; " + y.to_string() + " ; " +
                                      v.to_string(),
                                  lhs.to_string(), rhs.to_string(), false});
      }
    }
  });
  Report rep;
  rep.name = "module_axiom";
  for (const auto& p : partial) rep.merge(p);
  return rep;
}

namespace {

/// Predicted commutator [f_m, g_n] from the bracket of ghat_R.
ToroidalElement predicted_commutator(const FieldSpec& f, const FieldSpec& g, int m,
                                     int n, bool drop_ddelta) {
  ToroidalElement out = ToroidalElement::zero(f.lie, f.spec);
  if (f.family != FieldSpec::Family::J || g.family != FieldSpec::Family::J) return out;
  int t = require_t(*f.spec);
  int arity = f.spec->arity();
  Rational pairing = lie_form(f.coefficient, g.coefficient);
  RingElement tN = RingElement::monomial(f.spec, Exponent::zero(arity).with(t, m + n));
  LieElement br = lie_bracket(f.coefficient, g.coefficient);
  if (!br.is_zero()) out = out + ToroidalElement::loop(br, f.u * g.u * tN);
  if (!tva::is_zero(pairing)) {
    // - <J1,J2> ( t^{m+n} v du  +  m uv t^{m+n-1} dt )
    KaehlerElement central = tN * (g.u * universal_d(f.u)) * (-pairing);
    if (!drop_ddelta && m != 0) {
      RingElement uv = f.u * g.u;
      for (const auto& [e, c] : uv.terms())
        central.add_term({e.with(t, m + n - 1), t}, c * (-pairing) * m);
    }
    out.add_central(normal_form(central));
  }
  return out;
}

}  // namespace

Report commutator_check(const FieldSpec& f, const FieldSpec& g, int weight_bound,
                        int mode_bound, const StateEnumeration& opt, bool drop_ddelta) {
  StateEnumeration sopt = opt;
  sopt.max_weight = weight_bound;
  auto states = enumerate_states(f.lie, f.spec, sopt);
  std::vector<std::pair<int, int>> modes;
  for (int m = -mode_bound; m <= mode_bound; ++m)
    for (int n = -mode_bound; n <= mode_bound; ++n) modes.push_back({m, n});
  std::vector<Report> partial(modes.size());
  parallel_for(modes.size(), [&](size_t mi) {
    auto [m, n] = modes[mi];
    Straightener s(f.lie, f.spec);
    ToroidalElement fm = field_mode(f, m);
    ToroidalElement gn = field_mode(g, n);
    ToroidalElement pred = predicted_commutator(f, g, m, n, drop_ddelta);
    Report& rep = partial[mi];
    for (const auto& mon : states) {
      VacuumState v = VacuumState::basis_state(f.lie, f.spec, mon);
      VacuumState lhs = s.act(fm, s.act(gn, v)) - s.act(gn, s.act(fm, v));
      VacuumState rhs = s.act(pred, v);
      ++rep.checked;
      if (!(lhs == rhs)) {
        ++rep.failed;
        if (rep.failures.size() < Report::kMaxStoredFailures)
          rep.failures.push_back({"commutator modes (" + std::to_string(m) + "," +
                                      std::to_string(n) + ")",
                                  f.to_string() + " ; " + g.to_string() + " ; " +
                                      v.to_string(),
                                  lhs.to_string(), rhs.to_string(), false});
      }
    }
  });
  Report rep;
  rep.name = "commutator";
  for (const auto& p : partial) rep.merge(p);
  return rep;
}

Report locality_check(const FieldSpec& f, const FieldSpec& g, int weight_bound,
                      int mode_bound, const StateEnumeration& opt) {
  StateEnumeration sopt = opt;
  sopt.max_weight = weight_bound;
  auto states = enumerate_states(f.lie, f.spec, sopt);
  // Precompute the commutator grid [f_a, g_b] v in the std normalization.
  int lo = -mode_bound, hi = mode_bound + 2;
  int side = hi - lo + 1;
  std::vector<std::vector<VacuumState>> grid(
      static_cast<size_t>(side) * side,
      std::vector<VacuumState>());
  parallel_for(static_cast<size_t>(side) * side, [&](size_t idx) {
    int a = lo + static_cast<int>(idx) / side;
    int b = lo + static_cast<int>(idx) % side;
    Straightener s(f.lie, f.spec);
    ToroidalElement fa = field_mode_std(f, a);
    ToroidalElement gb = field_mode_std(g, b);
    auto& column = grid[idx];
    column.reserve(states.size());
    for (const auto& mon : states) {
      VacuumState v = VacuumState::basis_state(f.lie, f.spec, mon);
      column.push_back(s.act(fa, s.act(gb, v)) - s.act(gb, s.act(fa, v)));
    }
  });
  auto cell = [&](int a, int b) -> const std::vector<VacuumState>& {
    return grid[static_cast<size_t>(a - lo) * side + (b - lo)];
  };
  Report rep;
  rep.name = "locality";
  for (int m = -mode_bound; m <= mode_bound; ++m)
    for (int n = -mode_bound; n <= mode_bound; ++n)
      for (size_t si = 0; si < states.size(); ++si) {
        // coefficient of z^{-m-1} w^{-n-1} in (z-w)^2 [f(z), g(w)]
        VacuumState sum = cell(m + 2, n)[si] - cell(m + 1, n + 1)[si] * Rational(2) +
                          cell(m, n + 2)[si];
        ++rep.checked;
        if (!sum.is_zero()) {
          ++rep.failed;
          if (rep.failures.size() < Report::kMaxStoredFailures)
            rep.failures.push_back(
                {"locality N=2 modes (" + std::to_string(m) + "," + std::to_string(n) + ")",
                 f.to_string() + " ; " + g.to_string(), sum.to_string(), "0", false});
        }
      }
  return rep;
}

Report vacuum_axiom_check(const FieldSpec& f, int mode_bound, int degree_bound) {
  Report rep;
  rep.name = "vacuum_axiom";
  VacuumState vac = VacuumState::vacuum(f.lie, f.spec);
  Straightener s(f.lie, f.spec);
  int creation = f.family == FieldSpec::Family::Kdt ? 0 : -1;
  // (a) modes multiplying negative powers of z annihilate |0>.
  for (int n = creation + 1; n <= creation + 1 + mode_bound; ++n) {
    VacuumState r = s.act(field_mode(f, n), vac);
    rep.record(r.is_zero(), "annihilation mode " + std::to_string(n), f.to_string(),
               r.to_string(), "0");
  }
  // (b) the z^0 coefficient reproduces the labeling state.
  {
    VacuumState created = s.act(field_mode(f, creation), vac);
    VacuumState label = f.label_state();
    rep.record(created == label, "creation mode " + std::to_string(creation),
               f.to_string(), created.to_string(), label.to_string());
  }
  // (c) well-definedness: nf(d(t^n u)) = 0 over the fiber degree box.
  int t = require_t(*f.spec);
  for (const Exponent& b : fiber_monomials(*f.spec, degree_bound))
    for (int n = -mode_bound; n <= mode_bound; ++n) {
      RingElement tnu = RingElement::monomial(f.spec, b.with(t, n));
      CentralClass c = normal_form(universal_d(tnu));
      rep.record(c.is_zero(), "nf(d(t^n u)) = 0",
                 "u = " + monomial_to_string(*f.spec, b) + ", n = " + std::to_string(n),
                 c.to_string(), "0");
    }
  return rep;
}

Report translation_axiom_check(const FieldSpec& f, int weight_bound, int mode_bound,
                               const StateEnumeration& opt) {
  StateEnumeration sopt = opt;
  sopt.max_weight = weight_bound;
  auto states = enumerate_states(f.lie, f.spec, sopt);
  std::vector<int> modes;
  for (int n = -mode_bound; n <= mode_bound; ++n) modes.push_back(n);
  std::vector<Report> partial(modes.size());
  parallel_for(modes.size(), [&](size_t mi) {
    int n = modes[mi];
    Straightener s(f.lie, f.spec);
    ToroidalElement fn = field_mode(f, n);
    ToroidalElement fn1 = field_mode(f, n - 1);
    // d_z of the displayed expansion: -n for z^{-n-1} families, -(n-1) for z^{-n}.
    Rational scale = f.family == FieldSpec::Family::Kdt ? Rational(-(n - 1)) : Rational(-n);
    Report& rep = partial[mi];
    for (const auto& mon : states) {
      VacuumState v = VacuumState::basis_state(f.lie, f.spec, mon);
      VacuumState lhs = s.apply_T(s.act(fn, v)) - s.act(fn, s.apply_T(v));
      VacuumState rhs = s.act(fn1, v) * scale;
      ++rep.checked;
      if (!(lhs == rhs)) {
        ++rep.failed;
        if (rep.failures.size() < Report::kMaxStoredFailures)
          rep.failures.push_back({"[T, f_" + std::to_string(n) + "]",
                                  f.to_string() + " ; " + v.to_string(), lhs.to_string(),
                                  rhs.to_string(), false});
      }
    }
  });
  Report rep;
  rep.name = "translation";
  for (const auto& p : partial) rep.merge(p);
  return rep;
}

std::vector<long> character(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                            int max_weight) {
  require_t(*spec);
  if (spec->arity() != 1)
    throw UnsupportedError("character requires the trivial fiber algebra A = Q");
  StateEnumeration opt;
  opt.max_weight = max_weight;
  opt.a_degree_bound = 0;
  opt.weight0_central_cap = 0;  // ranks over Q[k]: count k-free monomials
  std::vector<long> ranks(max_weight + 1, 0);
  for (const auto& mon : enumerate_states(lie, spec, opt)) {
    int w = monomial_weight(mon);
    if (w <= max_weight) ++ranks[w];
  }
  return ranks;
}

}  // namespace tva
