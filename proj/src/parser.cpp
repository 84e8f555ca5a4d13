#include "tva/parser.hpp"

#include <cctype>

namespace tva {

namespace {

struct Token {
  enum class Type { Int, Ident, Symbol, End };
  Type type = Type::End;
  std::string text;
  long value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    cur_ = Token{};
    cur_.line = line_;
    cur_.column = col_;
    if (pos_ >= src_.size()) {
      cur_.type = Token::Type::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur_.type = Token::Type::Int;
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      cur_.text = std::string(src_.substr(start, pos_ - start));
      cur_.value = std::stol(cur_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      cur_.type = Token::Type::Ident;
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      cur_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    cur_.type = Token::Type::Symbol;
    cur_.text = std::string(1, c);
    bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

/// One parsed multiplicative term, before type resolution.
struct TermValue {
  Rational coeff = 1;
  RingElement ring;
  std::optional<KaehlerElement> form;
  std::optional<int> lie_index;

  explicit TermValue(const RingSpecPtr& spec) : ring(RingElement::one(spec)) {}
};

class Parser {
 public:
  Parser(std::string_view src, const ParseContext& ctx) : lex_(src), ctx_(ctx) {
    if (!ctx_.spec) throw Error("parse context needs a ring spec");
  }

  ParsedElement parse_expr_all() {
    ParsedElement e = parse_expr();
    expect_end();
    return e;
  }

  FieldSpec parse_field_all() {
    FieldSpec f = parse_field();
    expect_end();
    return f;
  }

  std::vector<std::pair<FieldSpec, int>> parse_mode_list_all() {
    std::vector<std::pair<FieldSpec, int>> out;
    while (lex_.peek().type != Token::Type::End) {
      FieldSpec f = parse_field();
      expect_symbol("(");
      int n = parse_int();
      expect_symbol(")");
      out.push_back({std::move(f), n});
    }
    return out;
  }

 private:
  bool at_symbol(const char* s) const {
    return lex_.peek().type == Token::Type::Symbol && lex_.peek().text == s;
  }

  void expect_symbol(const char* s) {
    if (!at_symbol(s)) lex_.fail(std::string("expected '") + s + "'");
    lex_.take();
  }

  void expect_end() {
    if (lex_.peek().type != Token::Type::End) lex_.fail("unexpected trailing input");
  }

  int parse_int() {
    int sign = 1;
    if (at_symbol("-")) {
      lex_.take();
      sign = -1;
    } else if (at_symbol("+")) {
      lex_.take();
    }
    if (lex_.peek().type != Token::Type::Int) lex_.fail("expected an integer");
    return sign * static_cast<int>(lex_.take().value);
  }

  Rational parse_rational_tail(long intpart) {
    if (at_symbol("/")) {
      lex_.take();
      if (lex_.peek().type != Token::Type::Int) lex_.fail("expected a denominator");
      long den = lex_.take().value;
      if (den == 0) lex_.fail("zero denominator");
      Rational r(intpart, den);
      r.canonicalize();
      return r;
    }
    return Rational(intpart);
  }

  ParsedElement parse_expr() {
    std::vector<std::pair<Rational, TermValue>> terms;
    Rational sign = 1;
    if (at_symbol("-")) {
      lex_.take();
      sign = -1;
    } else if (at_symbol("+")) {
      lex_.take();
    }
    terms.push_back({sign, parse_term()});
    while (at_symbol("+") || at_symbol("-")) {
      Rational s = lex_.take().text == "+" ? 1 : -1;
      terms.push_back({s, parse_term()});
    }
    return combine(terms);
  }

  TermValue parse_term() {
    TermValue t(ctx_.spec);
    parse_factor(t);
    while (at_symbol("*")) {
      lex_.take();
      parse_factor(t);
    }
    return t;
  }

  void parse_factor(TermValue& t) {
    const Token& tok = lex_.peek();
    if (tok.type == Token::Type::Int) {
      long v = lex_.take().value;
      t.coeff *= parse_rational_tail(v);
      return;
    }
    if (at_symbol("(")) {
      Token open = lex_.take();
      ParsedElement inner = parse_expr();
      expect_symbol(")");
      if (inner.kind != ParsedElement::Kind::Ring)
        throw ParseError("parenthesized factor must be a ring element", open.line,
                         open.column);
      t.ring = t.ring * *inner.ring;
      return;
    }
    if (tok.type != Token::Type::Ident) lex_.fail("expected a factor");
    Token id = lex_.take();
    if (id.text == "J") {
      if (!at_symbol("[")) throw ParseError("expected '[' after J", id.line, id.column);
      lex_.take();
      if (lex_.peek().type != Token::Type::Ident) lex_.fail("expected a basis name");
      Token name = lex_.take();
      expect_symbol("]");
      if (!ctx_.lie)
        throw ParseError("J[...] needs a Lie algebra context", id.line, id.column);
      int bi = ctx_.lie->index_of(name.text);
      if (bi < 0)
        throw ParseError("unknown Lie basis name '" + name.text + "'", name.line,
                         name.column);
      if (t.lie_index)
        throw ParseError("a term may contain at most one J factor", id.line, id.column);
      t.lie_index = bi;
      return;
    }
    // Declared variable names shadow the d*/k* sugar.
    int vi = ctx_.spec->index_of(id.text);
    if (vi >= 0) {
      int power = 1;
      if (at_symbol("^")) {
        lex_.take();
        power = parse_int();
      }
      mul_var(t, vi, power, id);
      return;
    }
    if (id.text == "d" && at_symbol("(")) {
      lex_.take();
      ParsedElement inner = parse_expr();
      expect_symbol(")");
      if (inner.kind != ParsedElement::Kind::Ring)
        throw ParseError("d(...) applies to ring elements", id.line, id.column);
      mul_form(t, universal_d(*inner.ring), id);
      return;
    }
    if (id.text.size() > 1 && id.text[0] == 'd') {
      int dv = ctx_.spec->index_of(id.text.substr(1));
      if (dv >= 0) {
        mul_form(t, KaehlerElement::form(ctx_.spec, Exponent::zero(ctx_.spec->arity()), dv),
                 id);
        return;
      }
    }
    if (id.text.size() > 1 && id.text[0] == 'k' &&
        id.text.find_first_not_of("0123456789", 1) == std::string::npos) {
      int ki = std::stoi(id.text.substr(1));
      if (ki >= ctx_.spec->arity())
        throw ParseError("k-index out of range", id.line, id.column);
      if (!ctx_.spec->var(ki).invertible)
        throw ParseError("k" + std::to_string(ki) + " needs an invertible variable",
                         id.line, id.column);
      int n = ctx_.spec->arity();
      mul_form(t,
               KaehlerElement::form(ctx_.spec, Exponent::zero(n) - Exponent::unit(n, ki), ki),
               id);
      return;
    }
    throw ParseError("unknown identifier '" + id.text + "'", id.line, id.column);
  }

  void mul_var(TermValue& t, int vi, int power, const Token& at) {
    if (power < 0 && !ctx_.spec->var(vi).invertible)
      throw ParseError("negative exponent on polynomial variable '" +
                           ctx_.spec->var(vi).name + "'",
                       at.line, at.column);
    t.ring = t.ring * RingElement::variable(ctx_.spec, vi, power);
  }

  void mul_form(TermValue& t, KaehlerElement w, const Token& at) {
    if (t.form)
      throw ParseError("a term may contain at most one differential factor", at.line,
                       at.column);
    if (t.lie_index)
      throw ParseError("cannot multiply J[...] by a differential", at.line, at.column);
    t.form = std::move(w);
  }

  ParsedElement combine(std::vector<std::pair<Rational, TermValue>>& terms) {
    bool any_loop = false, any_form = false, any_ring = false;
    for (auto& [s, t] : terms) {
      if (t.lie_index)
        any_loop = true;
      else if (t.form)
        any_form = true;
      else
        any_ring = true;
    }
    ParsedElement out;
    if (any_loop) {
      if (any_ring)
        throw ParseError("cannot add a plain ring element to a toroidal element", 1, 1);
      ToroidalElement x(ctx_.lie, ctx_.spec);
      KaehlerElement central(ctx_.spec);
      for (auto& [s, t] : terms) {
        if (t.lie_index) {
          x.add_loop(*t.lie_index, t.ring * (s * t.coeff));
        } else {
          central = central + (t.ring * *t.form) * (s * t.coeff);
        }
      }
      x.add_central(normal_form(central));
      out.kind = ParsedElement::Kind::Toroidal;
      out.toroidal = std::move(x);
      return out;
    }
    if (any_form) {
      if (any_ring) {
        // Allow "d(t^3) - 3*t^2*dt" style zero ring parts only.
        for (auto& [s, t] : terms)
          if (!t.form && !(t.ring * t.coeff).is_zero())
            throw ParseError("cannot add a ring element to a differential form", 1, 1);
      }
      KaehlerElement w(ctx_.spec);
      for (auto& [s, t] : terms)
        if (t.form) w = w + (t.ring * *t.form) * (s * t.coeff);
      out.kind = ParsedElement::Kind::Form;
      out.form = std::move(w);
      return out;
    }
    RingElement r = RingElement::zero(ctx_.spec);
    for (auto& [s, t] : terms) r = r + t.ring * (s * t.coeff);
    out.kind = ParsedElement::Kind::Ring;
    out.ring = std::move(r);
    return out;
  }

  FieldSpec parse_field() {
    if (lex_.peek().type != Token::Type::Ident) lex_.fail("expected a field family");
    Token fam = lex_.take();
    expect_symbol("[");
    if (fam.text == "J") {
      if (lex_.peek().type != Token::Type::Ident) lex_.fail("expected a basis name");
      Token name = lex_.take();
      if (!ctx_.lie) throw ParseError("J field needs a Lie algebra", fam.line, fam.column);
      int bi = ctx_.lie->index_of(name.text);
      if (bi < 0)
        throw ParseError("unknown Lie basis name '" + name.text + "'", name.line,
                         name.column);
      RingElement u = RingElement::one(ctx_.spec);
      if (at_symbol(";")) {
        lex_.take();
        u = parse_named_ring("u");
      }
      expect_symbol("]");
      return FieldSpec::make_J(LieElement::basis(ctx_.lie, bi), u);
    }
    if (fam.text == "Kdt") {
      RingElement u = parse_named_ring("u");
      expect_symbol("]");
      return FieldSpec::make_Kdt(ctx_.lie, u);
    }
    if (fam.text == "Kom") {
      KaehlerElement w = parse_named_form("w");
      expect_symbol("]");
      return FieldSpec::make_Kom(ctx_.lie, w);
    }
    throw ParseError("unknown field family '" + fam.text + "'", fam.line, fam.column);
  }

  RingElement parse_named_ring(const char* key) {
    if (lex_.peek().type != Token::Type::Ident || lex_.peek().text != key)
      lex_.fail(std::string("expected '") + key + "='");
    lex_.take();
    expect_symbol("=");
    ParsedElement e = parse_expr();
    if (e.kind != ParsedElement::Kind::Ring) lex_.fail("expected a ring element");
    return *e.ring;
  }

  KaehlerElement parse_named_form(const char* key) {
    if (lex_.peek().type != Token::Type::Ident || lex_.peek().text != key)
      lex_.fail(std::string("expected '") + key + "='");
    lex_.take();
    expect_symbol("=");
    ParsedElement e = parse_expr();
    if (e.kind != ParsedElement::Kind::Form) lex_.fail("expected a differential form");
    return *e.form;
  }

  Lexer lex_;
  ParseContext ctx_;
};

}  // namespace

std::string ParsedElement::to_string() const {
  switch (kind) {
    case Kind::Ring:
      return ring->to_string();
    case Kind::Form:
      return form->to_string();
    case Kind::Toroidal:
      return toroidal->to_string();
  }
  return "0";
}

ParsedElement parse_element(std::string_view src, const ParseContext& ctx) {
  return Parser(src, ctx).parse_expr_all();
}

FieldSpec parse_field_spec(std::string_view src, const ParseContext& ctx) {
  return Parser(src, ctx).parse_field_all();
}

std::vector<std::pair<FieldSpec, int>> parse_mode_list(std::string_view src,
                                                       const ParseContext& ctx) {
  return Parser(src, ctx).parse_mode_list_all();
}

}  // namespace tva
