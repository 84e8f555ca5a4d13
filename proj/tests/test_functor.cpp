#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tva/functor.hpp"
#include "tva/parser.hpp"

using namespace tva;

namespace {

struct Setup {
  LieAlgebraPtr lie = LieAlgebra::sl2();
  RingSpecPtr sx = RingSpec::parse("laurent:t,x;t=t");
  RingSpecPtr sy = RingSpec::parse("laurent:t,y;t=t");
  ParseContext px{sx, lie};
  ParseContext py{sy, lie};

  InducedHom squared() const {
    return InducedHom::make(RingHom::parse("t -> t; x -> y^2", sx, sy), lie);
  }
  VacuumState state_x(const std::string& modes) const {
    auto list = parse_mode_list(modes, px);
    Straightener s(lie, sx);
    VacuumState v = VacuumState::vacuum(lie, sx);
    for (size_t i = list.size(); i-- > 0;)
      v = s.act(field_mode(list[i].first, list[i].second), v);
    return v;
  }
  VacuumState state_y(const std::string& modes) const {
    auto list = parse_mode_list(modes, py);
    Straightener s(lie, sy);
    VacuumState v = VacuumState::vacuum(lie, sy);
    for (size_t i = list.size(); i-- > 0;)
      v = s.act(field_mode(list[i].first, list[i].second), v);
    return v;
  }
};

}  // namespace

TEST_CASE("induced hom requires t -> t and a valid base") {
  Setup s;
  CHECK_THROWS_AS(
      InducedHom::make(RingHom::parse("t -> y*t; x -> y", s.sx, s.sy), s.lie),
      InvalidHomError);
  ParsedElement bad = parse_element("y + 1", s.py);
  RingHom broken = RingHom::make_unchecked(
      s.sx, s.sy,
      {*parse_element("t", s.py).ring, *bad.ring});
  CHECK_THROWS_AS(InducedHom::make(broken, s.lie), InvalidHomError);
}

TEST_CASE("induced hom on states") {
  Setup s;
  InducedHom h = s.squared();
  // identity fixes states
  InducedHom id = InducedHom::make(RingHom::identity(s.sx), s.lie);
  VacuumState v = s.state_x("J[e;u=x](-1) J[f;u=1](-2)");
  CHECK(id.apply(v) == v);
  // x -> y^2 on a creation state
  CHECK(h.apply(s.state_x("J[e;u=x](-1)")) == s.state_y("J[e;u=y^2](-1)"));
  CHECK(h.apply(VacuumState::vacuum(s.lie, s.sx)) == VacuumState::vacuum(s.lie, s.sy));
}

TEST_CASE("pushforward of central classes uses the chain rule") {
  Setup s;
  InducedHom h = s.squared();
  ParsedElement e = parse_element("x^-1*t^-1*dx", s.px);
  REQUIRE(e.kind == ParsedElement::Kind::Form);
  CentralClass cls = normal_form(*e.form);
  ParsedElement expect = parse_element("2*y^-1*t^-1*dy", s.py);
  CHECK(h.apply(cls) == normal_form(*expect.form));
  // a broken pushforward without the chain rule misses the derivative factor
  ParsedElement broken = parse_element("y^-1*t^-1*dy", s.py);
  CHECK_FALSE(h.apply(cls) == normal_form(*broken.form));
}

TEST_CASE("hom intertwines the module structure") {
  Setup s;
  StateEnumeration opt{2, 1, 1};
  CHECK(hom_intertwines_check(s.squared(), 2, 2, 1, opt).passed());
}

TEST_CASE("functor composition law") {
  Setup s;
  auto sz = RingSpec::parse("laurent:t,z;t=t");
  InducedHom g = InducedHom::make(RingHom::parse("t -> t; y -> z^3", s.sy, sz), s.lie);
  StateEnumeration opt{2, 1, 1};
  CHECK(functoriality_check(g, s.squared(), opt).passed());
}

TEST_CASE("structure map embedding") {
  auto lie = LieAlgebra::sl2();
  auto sq = RingSpec::parse("laurent:t;t=t");
  auto sx = RingSpec::parse("laurent:t,x;t=t");
  InducedHom h = InducedHom::make(RingHom::parse("t -> t", sq, sx), lie);
  Report rep = embedding_check(h, 4);
  CHECK(rep.passed());
  CHECK(rep.checked >= 5);  // one rank check per weight 0..4
}

TEST_CASE("specialize_level") {
  Setup s;
  auto affine = RingSpec::parse("laurent:t;t=t");
  ParseContext pa{affine, s.lie};
  Straightener st(s.lie, affine);
  VacuumState vac = VacuumState::vacuum(s.lie, affine);
  VacuumState kbar = st.act(field_mode(parse_field_spec("Kdt[u=1]", pa), 0), vac);

  LevelSpecialization chi = LevelSpecialization::parse("chi: 1 -> 5", affine);
  CHECK(chi.level(*affine) == 5);
  CHECK(specialize_level(chi, kbar) == vac * Rational(5));
  CHECK(specialize_level(chi, vac) == vac);

  // chi(1) = 1, chi(x) = 0 kills x-dressed level factors
  LevelSpecialization chix = LevelSpecialization::parse("chi: 1 -> 1; x -> 0", s.sx);
  Straightener sx(s.lie, s.sx);
  VacuumState state =
      sx.act(ToroidalElement::central(
                 s.lie, normal_form(*parse_element("x*t^-1*dt", s.px).form)),
             s.state_x("J[e;u=1](-1)"));
  CHECK(specialize_level(chix, state).is_zero());
  // while the plain level factor specializes to 1
  VacuumState state1 =
      sx.act(ToroidalElement::central(
                 s.lie, normal_form(*parse_element("t^-1*dt", s.px).form)),
             s.state_x("J[e;u=1](-1)"));
  CHECK(specialize_level(chix, state1) == s.state_x("J[e;u=1](-1)"));
}

TEST_CASE("specialization commutes with non-level modes") {
  Setup s;
  auto affine = RingSpec::parse("laurent:t;t=t");
  ParseContext pa{affine, s.lie};
  LevelSpecialization chi = LevelSpecialization::parse("chi: 1 -> 3", affine);
  Straightener st(s.lie, affine);
  VacuumState v = st.act(field_mode(parse_field_spec("Kdt[u=1]", pa), 0),
                         st.act(field_mode(parse_field_spec("J[e;u=1]", pa), -2),
                                VacuumState::vacuum(s.lie, affine)));
  for (const char* mode : {"J[f;u=1](1)", "J[h;u=1](-1)", "J[e;u=1](0)"}) {
    auto list = parse_mode_list(mode, pa);
    ToroidalElement x = field_mode(list[0].first, list[0].second);
    CHECK(specialize_level(chi, st.act(x, v)) == st.act(x, specialize_level(chi, v)));
  }
}

TEST_CASE("sugawara operators at level 1") {
  auto lie = LieAlgebra::sl2();
  auto affine = RingSpec::parse("laurent:t;t=t");
  SugawaraReport sr = sugawara_check(lie, affine, 1, 2);
  CHECK(sr.report.passed());
  CHECK(sr.central_charge_known);
  // c = K dim(g) / (K + h_vee) = 3/3 = 1
  CHECK(sr.central_charge == 1);
}

TEST_CASE("sugawara at another level and algebra") {
  auto lie = LieAlgebra::sl2();
  auto affine = RingSpec::parse("laurent:t;t=t");
  SugawaraReport sr = sugawara_check(lie, affine, Rational(-1, 2), 2);
  CHECK(sr.report.passed());
  CHECK(sr.central_charge == Rational(-1, 2) * 3 / (Rational(-1, 2) + 2));
}

TEST_CASE("critical level is rejected") {
  auto lie = LieAlgebra::sl2();
  auto affine = RingSpec::parse("laurent:t;t=t");
  CHECK_THROWS_AS(sugawara_check(lie, affine, -2, 2), CriticalLevelError);
  CHECK_THROWS_AS(
      sugawara_check(lie, RingSpec::parse("laurent:t,x;t=t"), 1, 2), UnsupportedError);
  CHECK_THROWS_AS(sugawara_check(LieAlgebra::abelian(2), affine, 1, 2), UnsupportedError);
}

TEST_CASE("L_0 annihilates the vacuum") {
  auto lie = LieAlgebra::sl2();
  auto affine = RingSpec::parse("laurent:t;t=t");
  SugawaraReport sr = sugawara_check(lie, affine, 1, 0);
  CHECK(sr.report.passed());  // the only weight-0 state is |0>
}
