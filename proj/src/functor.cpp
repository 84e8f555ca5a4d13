#include "tva/functor.hpp"

#include <algorithm>
#include <sstream>

#include "tva/parallel.hpp"

namespace tva {

namespace {

int require_t(const RingSpec& spec) {
  auto t = spec.t_index();
  if (!t) throw MissingLoopVariableError("functor module needs rings with distinguished t");
  return *t;
}

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos) return "";
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

InducedHom InducedHom::make(RingHom base, LieAlgebraPtr lie) {
  HomValidation v = validate_hom(base);
  if (!v.valid()) throw InvalidHomError("induced hom base is invalid: " + v.violations.front());
  int ts = require_t(*base.source());
  int tt = require_t(*base.target());
  const RingElement& im = base.image(ts);
  bool exact_t = im.term_count() == 1 && im.terms().begin()->second == 1 &&
                 im.terms().begin()->first == Exponent::zero(base.target()->arity()).with(tt, 1);
  if (!exact_t)
    throw InvalidHomError("induced hom must send t to t, got " + im.to_string());
  return InducedHom(std::move(base), std::move(lie));
}

ToroidalElement InducedHom::apply(const ToroidalElement& x) const {
  require_same_spec(x.spec(), base_.source());
  ToroidalElement out(lie_, base_.target());
  for (const auto& [i, r] : x.loop_part()) out.add_loop(i, apply_hom(base_, r));
  out.add_central(apply(x.central_part()));
  return out;
}

CentralClass InducedHom::apply(const CentralClass& c) const {
  return normal_form(apply_hom_form(base_, c.representative()));
}

VacuumState InducedHom::apply(const VacuumState& v) const {
  require_same_spec(v.spec(), base_.source());
  Straightener s(lie_, base_.target());
  VacuumState out(lie_, base_.target());
  for (const auto& [mon, c] : v.terms()) {
    VacuumState cur = VacuumState::vacuum(lie_, base_.target()) * c;
    for (size_t p = mon.size(); p-- > 0;) {
      const NegGenerator& g = mon[p];
      ToroidalElement image(lie_, base_.target());
      if (g.kind == NegGenerator::Kind::Loop) {
        image = ToroidalElement::loop(
            lie_, g.index, apply_hom(base_, RingElement::monomial(base_.source(), g.mono)));
      } else {
        image = ToroidalElement::central(
            lie_, normal_form(apply_hom_form(
                      base_, KaehlerElement::form(base_.source(), g.mono, g.index))));
      }
      cur = s.act(image, cur);
    }
    out = out + cur;
  }
  return out;
}

InducedHom compose(const InducedHom& outer, const InducedHom& inner) {
  return InducedHom::make(compose_hom(outer.base(), inner.base()), inner.lie());
}

Rational LevelSpecialization::value(const Exponent& fiber_mono) const {
  auto it = chi.find(fiber_mono);
  return it == chi.end() ? Rational(0) : it->second;
}

Rational LevelSpecialization::level(const RingSpec& spec) const {
  return value(Exponent::zero(spec.arity()));
}

LevelSpecialization LevelSpecialization::parse(std::string_view text,
                                               const RingSpecPtr& spec) {
  std::string body(text);
  if (body.rfind("chi:", 0) == 0) body = body.substr(4);
  LevelSpecialization out;
  int t = require_t(*spec);
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t next = body.find(';', pos);
    std::string clause =
        trim(next == std::string::npos ? body.substr(pos) : body.substr(pos, next - pos));
    if (!clause.empty()) {
      size_t arrow = clause.find("->");
      if (arrow == std::string::npos) throw Error("chi clause '" + clause + "' lacks '->'");
      std::string lhs = trim(clause.substr(0, arrow));
      Rational val = rational_from_string(trim(clause.substr(arrow + 2)));
      Exponent mono = Exponent::zero(spec->arity());
      if (lhs != "1") {
        std::istringstream ls(lhs);
        std::string factor;
        while (std::getline(ls, factor, '*')) {
          size_t caret = factor.find('^');
          std::string name = trim(caret == std::string::npos ? factor : factor.substr(0, caret));
          int power = caret == std::string::npos ? 1 : std::stoi(trim(factor.substr(caret + 1)));
          int vi = spec->index_of(name);
          if (vi < 0 || vi == t) throw Error("chi monomial must use fiber variables, got '" + name + "'");
          mono[vi] += power;
        }
      }
      out.chi[mono] = val;
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

VacuumState specialize_level(const LevelSpecialization& chi, const VacuumState& v) {
  int t = require_t(*v.spec());
  VacuumState out(v.lie(), v.spec());
  for (const auto& [mon, c] : v.terms()) {
    Rational coeff = c;
    PBWMonomial rest;
    rest.reserve(mon.size());
    for (const auto& g : mon) {
      if (g.kind == NegGenerator::Kind::Central && g.weight == 0) {
        coeff *= chi.value(g.mono.with(t, 0));
        if (is_zero(coeff)) break;
      } else {
        rest.push_back(g);
      }
    }
    out.add_term(rest, coeff);
  }
  return out;
}

Report hom_intertwines_check(const InducedHom& h, int weight_bound, int gen_t_bound,
                             int gen_a_bound, const StateEnumeration& opt) {
  const RingSpecPtr& src = h.base().source();
  const LieAlgebraPtr& lie = h.lie();
  int t = require_t(*src);
  StateEnumeration sopt = opt;
  sopt.max_weight = weight_bound;
  auto states = enumerate_states(lie, src, sopt);

  // Generator modes: all three field families over monomial data in the window.
  std::vector<ToroidalElement> gens;
  std::vector<Exponent> fibers;
  {
    Exponent lo = Exponent::zero(src->arity()), hi = lo;
    for (int i = 0; i < src->arity(); ++i) {
      if (i == t) continue;
      lo[i] = src->var(i).invertible ? -gen_a_bound : 0;
      hi[i] = gen_a_bound;
    }
    fibers = DegreeBox{lo, hi}.points();
  }
  for (const Exponent& b : fibers)
    for (int n = -gen_t_bound; n <= gen_t_bound; ++n) {
      for (int i = 0; i < lie->dim(); ++i)
        gens.push_back(ToroidalElement::loop(lie, i, RingElement::monomial(src, b.with(t, n))));
      KaehlerElement dt_form = KaehlerElement::form(src, b.with(t, n - 1), t);
      gens.push_back(ToroidalElement::central(lie, normal_form(dt_form)));
      for (int j = 0; j < src->arity(); ++j) {
        if (j == t) continue;
        KaehlerElement om_form = KaehlerElement::form(src, b.with(t, n), j);
        gens.push_back(ToroidalElement::central(lie, normal_form(om_form)));
      }
    }

  std::vector<Report> partial(gens.size());
  parallel_for(gens.size(), [&](size_t gi) {
    const ToroidalElement& x = gens[gi];
    ToroidalElement xh = h.apply(x);
    Straightener s_src(lie, src);
    Straightener s_tgt(lie, h.base().target());
    Report& rep = partial[gi];
    for (const auto& mon : states) {
      VacuumState v = VacuumState::basis_state(lie, src, mon);
      VacuumState lhs = h.apply(s_src.act(x, v));
      VacuumState rhs = s_tgt.act(xh, h.apply(v));
      ++rep.checked;
      if (!(lhs == rhs)) {
        ++rep.failed;
        if (rep.failures.size() < Report::kMaxStoredFailures)
          rep.failures.push_back({"psi intertwines",
                                  x.to_string() + " ; " + v.to_string(), lhs.to_string(),
                                  rhs.to_string(), false});
      }
    }
  });
  Report rep;
  rep.name = "hom_intertwines";
  for (const auto& p : partial) rep.merge(p);
  return rep;
}

Report functoriality_check(const InducedHom& outer, const InducedHom& inner,
                           const StateEnumeration& opt) {
  Report rep;
  rep.name = "functoriality";
  InducedHom composed = compose(outer, inner);
  auto states = enumerate_states(inner.lie(), inner.base().source(), opt);
  for (const auto& mon : states) {
    VacuumState v = VacuumState::basis_state(inner.lie(), inner.base().source(), mon);
    VacuumState lhs = composed.apply(v);
    VacuumState rhs = outer.apply(inner.apply(v));
    ++rep.checked;
    if (!(lhs == rhs)) {
      ++rep.failed;
      if (rep.failures.size() < Report::kMaxStoredFailures)
        rep.failures.push_back({"induced(psi.phi) = induced(psi).induced(phi)",
                                v.to_string(), lhs.to_string(), rhs.to_string(), false});
    }
  }
  return rep;
}

Report embedding_check(const InducedHom& h, int max_weight, int weight0_cap) {
  Report rep;
  rep.name = "embedding";
  StateEnumeration opt;
  opt.max_weight = max_weight;
  opt.a_degree_bound = 0;
  opt.weight0_central_cap = weight0_cap;
  auto states = enumerate_states(h.lie(), h.base().source(), opt);
  std::map<int, std::vector<VacuumState>> by_weight;
  for (const auto& mon : states)
    by_weight[monomial_weight(mon)].push_back(
        h.apply(VacuumState::basis_state(h.lie(), h.base().source(), mon)));
  for (const auto& [w, images] : by_weight) {
    std::map<PBWMonomial, int> col;
    for (const auto& img : images)
      for (const auto& [mon, c] : img.terms())
        if (!col.count(mon)) col.emplace(mon, static_cast<int>(col.size()));
    QMatrix rows;
    for (const auto& img : images) {
      std::vector<Rational> row(col.size(), 0);
      for (const auto& [mon, c] : img.terms()) row[col.at(mon)] = c;
      rows.push_back(std::move(row));
    }
    int rk = rank(std::move(rows));
    bool ok = rk == static_cast<int>(images.size());
    rep.record(ok, "injective on weight " + std::to_string(w) + " piece",
               std::to_string(images.size()) + " basis states",
               "rank " + std::to_string(rk), "rank " + std::to_string(images.size()));
  }
  return rep;
}

namespace {

/// One Sugawara mode acting on a specialized state, via the normal ordered
/// quadratic Borcherds product of the generating J fields.
class SugawaraOperator {
 public:
  SugawaraOperator(LieAlgebraPtr lie, RingSpecPtr spec, Rational level)
      : lie_(std::move(lie)),
        spec_(std::move(spec)),
        s_(lie_, spec_),
        level_(std::move(level)) {
    if (!lie_->dual_coxeter())
      throw UnsupportedError("Sugawara needs the dual Coxeter number of the algebra");
    Rational denom = 2 * (level_ + *lie_->dual_coxeter());
    if (is_zero(denom))
      throw CriticalLevelError("critical level K = -h_vee: Sugawara is undefined");
    scale_ = Rational(1) / denom;
    auto inv = inverse(lie_->form_matrix());
    if (!inv) throw UnsupportedError("invariant form is degenerate");
    dual_ = std::move(*inv);
    // The bracket of ghat gives [J_m, J'_{-m}] = [J,J']_0 - m <J,J'> kbar, so
    // the class kbar = t^-1 dt is minus the standard level: the level-K
    // module arises at the central character kbar -> -K.
    chi_.chi[Exponent::zero(spec_->arity())] = -level_;
  }

  VacuumState apply(int m, const VacuumState& v) {
    int t = *spec_->t_index();
    int wmax = 0;
    for (const auto& [mon, c] : v.terms()) wmax = std::max(wmax, monomial_weight(mon));
    VacuumState sum(lie_, spec_);
    int dim = lie_->dim();
    auto mode = [&](const LieElement& x, int n) {
      return ToroidalElement::loop(
          x, RingElement::monomial(spec_, Exponent::zero(spec_->arity()).with(t, n)));
    };
    for (int i = 0; i < dim; ++i) {
      LieElement Ji = LieElement::basis(lie_, i);
      LieElement Jdual(lie_, dual_[i]);
      // creation part: j <= -1, J_i(j) on the left
      for (int j = m - wmax - 1; j <= -1; ++j)
        sum = sum + s_.act(mode(Ji, j), s_.act(mode(Jdual, m - j), v));
      // annihilation part: j >= 0, J_i(j) on the right
      for (int j = 0; j <= wmax; ++j)
        sum = sum + s_.act(mode(Jdual, m - j), s_.act(mode(Ji, j), v));
    }
    return specialize_level(chi_, sum) * scale_;
  }

 private:
  LieAlgebraPtr lie_;
  RingSpecPtr spec_;
  Straightener s_;
  Rational level_;
  Rational scale_;
  QMatrix dual_;
  LevelSpecialization chi_;
};

}  // namespace

SugawaraReport sugawara_check(const LieAlgebraPtr& lie, const RingSpecPtr& spec,
                              const Rational& level, int max_weight) {
  if (spec->arity() != 1 || !spec->t_index())
    throw UnsupportedError("Sugawara check requires the affine case A = Q");
  SugawaraReport out;
  out.report.name = "sugawara";
  SugawaraOperator L(lie, spec, level);
  Straightener s(lie, spec);
  StateEnumeration opt;
  opt.max_weight = max_weight;
  opt.a_degree_bound = 0;
  opt.weight0_central_cap = 0;
  auto states = enumerate_states(lie, spec, opt);
  for (const auto& mon : states) {
    VacuumState v = VacuumState::basis_state(lie, spec, mon);
    int w = monomial_weight(mon);
    VacuumState lm1 = L.apply(-1, v);
    VacuumState tv = s.apply_T(v);
    out.report.record(lm1 == tv, "L_{-1} = T", v.to_string(), lm1.to_string(),
                      tv.to_string());
    VacuumState l0 = L.apply(0, v);
    VacuumState wv = v * Rational(w);
    out.report.record(l0 == wv, "L_0 = weight", v.to_string(), l0.to_string(),
                      wv.to_string());
    VacuumState comm = L.apply(1, L.apply(-1, v)) - L.apply(-1, L.apply(1, v));
    VacuumState two_l0 = l0 * Rational(2);
    out.report.record(comm == two_l0, "[L_1, L_{-1}] = 2 L_0", v.to_string(),
                      comm.to_string(), two_l0.to_string());
  }
  if (max_weight >= 2) {
    VacuumState vac = VacuumState::vacuum(lie, spec);
    VacuumState comm = L.apply(2, L.apply(-2, vac)) - L.apply(-2, L.apply(2, vac));
    // [L_2, L_{-2}] = 4 L_0 + c/2 on |0>.
    auto it = comm.terms().find(PBWMonomial{});
    Rational c = it == comm.terms().end() ? Rational(0) : it->second * 2;
    out.central_charge = c;
    out.central_charge_known = true;
    out.report.notes.push_back("central charge from [L_2, L_{-2}]|0>: " + tva::to_string(c));
  }
  return out;
}

}  // namespace tva
