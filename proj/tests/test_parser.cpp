#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tva/parser.hpp"

using namespace tva;

TEST_CASE("typed parsing of the three layers") {
  auto lie = LieAlgebra::sl2();
  auto spec = RingSpec::parse("laurent:t,x;t=t");
  ParseContext ctx{spec, lie};

  ParsedElement r = parse_element("3/2*t^2*x^-1 - x", ctx);
  CHECK(r.kind == ParsedElement::Kind::Ring);

  ParsedElement f = parse_element("d(x^2*t^-1)", ctx);
  CHECK(f.kind == ParsedElement::Kind::Form);
  CHECK(*f.form == *parse_element("2*x*t^-1*dx - x^2*t^-2*dt", ctx).form);

  ParsedElement tor = parse_element("J[e]*x^2*t^-1", ctx);
  CHECK(tor.kind == ParsedElement::Kind::Toroidal);
  CHECK(tor.toroidal->loop_part().size() == 1);
  CHECK(tor.toroidal->central_part().is_zero());
}

TEST_CASE("k sugar desugars to the log differential") {
  auto spec = RingSpec::parse("laurent:t0,t1");
  ParseContext ctx{spec, nullptr};
  ParsedElement e = parse_element("t0^2*k1", ctx);
  CHECK(e.kind == ParsedElement::Kind::Form);
  CHECK(*e.form == *parse_element("t0^2*t1^-1*dt1", ctx).form);
}

TEST_CASE("Leibniz cancellation parses to zero") {
  auto spec = RingSpec::parse("laurent:t");
  ParseContext ctx{spec, nullptr};
  ParsedElement e = parse_element("d(t^3) - 3*t^2*dt", ctx);
  CHECK(e.kind == ParsedElement::Kind::Form);
  CHECK(e.form->is_zero());
}

TEST_CASE("mixed sums are rejected with positions") {
  auto lie = LieAlgebra::sl2();
  auto spec = RingSpec::parse("laurent:t;poly:u;t=t");
  ParseContext ctx{spec, lie};
  CHECK_THROWS_AS(parse_element("t + dt", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("J[e]*t + t^2", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("dt*dt", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("J[e]*dt", ctx), ParseError);
  try {
    parse_element("t^2 * zz", ctx);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 7);
  }
  CHECK_THROWS_AS(parse_element("u^-1", ctx), ParseError);   // poly variable
  CHECK_THROWS_AS(parse_element("k1", ctx), ParseError);     // k on poly variable
  CHECK_THROWS_AS(parse_element("J[zz]*t", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("t +", ctx), ParseError);
  ParseContext no_lie{spec, nullptr};
  CHECK_THROWS_AS(parse_element("J[e]*t", no_lie), ParseError);
}

TEST_CASE("round trips across layers") {
  auto lie = LieAlgebra::sl2();
  auto spec = RingSpec::parse("laurent:t,x;t=t");
  ParseContext ctx{spec, lie};
  const char* corpus[] = {
      "t", "t^-5", "2*t*x", "1/2", "-3/4*x^2 + t", "x^-1 + x", "0",
      "dt", "t^-1*dt", "x^2*t^-2*dx", "d(t*x)", "-2*x^-1*dx + t^3*dt",
      "J[e]*t^-1", "J[f]*x^2*t^3 + J[h]", "J[e]*(t + t^2)",
      "J[e]*t + t^-1*dt", "J[h]*x^-2*t^-1 - 2*x^-1*t^-1*dx",
  };
  for (const char* src : corpus) {
    ParsedElement once = parse_element(src, ctx);
    ParsedElement twice = parse_element(once.to_string(), ctx);
    REQUIRE(once.kind == twice.kind);
    switch (once.kind) {
      case ParsedElement::Kind::Ring:
        CHECK(*once.ring == *twice.ring);
        break;
      case ParsedElement::Kind::Form:
        CHECK(*once.form == *twice.form);
        break;
      case ParsedElement::Kind::Toroidal:
        CHECK(*once.toroidal == *twice.toroidal);
        break;
    }
    CHECK(once.to_string() == twice.to_string());
  }
}

TEST_CASE("random ring round trips") {
  auto spec = RingSpec::parse("laurent:t,x;poly:u");
  ParseContext ctx{spec, nullptr};
  std::mt19937 rng(43);
  for (int i = 0; i < 60; ++i) {
    RingElement a = oracle::random_element(spec, rng);
    ParsedElement back = parse_element(a.to_string(), ctx);
    REQUIRE(back.kind == ParsedElement::Kind::Ring);
    CHECK(*back.ring == a);
  }
}

TEST_CASE("field specs and mode lists") {
  auto lie = LieAlgebra::sl2();
  auto spec = RingSpec::parse("laurent:t,x;t=t");
  ParseContext ctx{spec, lie};
  FieldSpec j = parse_field_spec("J[e;u=x^2]", ctx);
  CHECK(j.family == FieldSpec::Family::J);
  CHECK(j.to_string() == "J[e;u=x^2]");
  FieldSpec j1 = parse_field_spec("J[e]", ctx);
  CHECK(j1.u == RingElement::one(spec));
  FieldSpec kdt = parse_field_spec("Kdt[u=1]", ctx);
  CHECK(kdt.family == FieldSpec::Family::Kdt);
  FieldSpec kom = parse_field_spec("Kom[w=x^-1*dx]", ctx);
  CHECK(kom.family == FieldSpec::Family::Kom);

  auto modes = parse_mode_list("J[e;u=x^2](-1) Kdt[u=1](0) Kom[w=x^-1*dx](-2)", ctx);
  REQUIRE(modes.size() == 3);
  CHECK(modes[0].second == -1);
  CHECK(modes[1].second == 0);
  CHECK(modes[2].second == -2);

  CHECK_THROWS_AS(parse_field_spec("Kdt[u=t]", ctx), Error);        // u must be t-free
  CHECK_THROWS_AS(parse_field_spec("Kom[w=t^-1*dt]", ctx), Error);  // fiber forms only
  CHECK_THROWS_AS(parse_field_spec("Q[u=1]", ctx), ParseError);
}

TEST_CASE("variable names shadow sugar") {
  // a ring with a variable literally named dt: the name wins over the sugar
  auto spec = RingSpec::parse("laurent:dt,t");
  ParseContext ctx{spec, nullptr};
  ParsedElement e = parse_element("dt^2", ctx);
  CHECK(e.kind == ParsedElement::Kind::Ring);
}
