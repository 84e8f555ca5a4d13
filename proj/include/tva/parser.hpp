#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tva/vacuum.hpp"

namespace tva {

/// Result of parsing an element expression: exactly one of the three layers.
struct ParsedElement {
  enum class Kind { Ring, Form, Toroidal };
  Kind kind;
  std::optional<RingElement> ring;
  std::optional<KaehlerElement> form;
  std::optional<ToroidalElement> toroidal;

  std::string to_string() const;
};

/// Parsing context: the ring is required, the Lie algebra only for J[...]
/// factors and fields.
struct ParseContext {
  RingSpecPtr spec;
  LieAlgebraPtr lie;  // may be null
};

/// Grammar (whitespace insensitive):
///   expr    := ['-'] term { ('+'|'-') term }
///   term    := factor { '*' factor }
///   factor  := rational | ident ['^' int] | 'J' '[' ident ']'
///            | 'd' '(' expr ')' | 'k' nat | 'd'<var> | '(' expr ')'
///   rational:= int ['/' nat]
/// 'k' nat is sugar for x_i^-1 dx_i (variable i must be invertible);
/// 'd'<var> (e.g. dt, dx) is the bare differential of a declared variable.
ParsedElement parse_element(std::string_view src, const ParseContext& ctx);

/// Field spec text: J[e;u=<ring expr>] | Kdt[u=<ring expr>] | Kom[w=<form expr>].
/// J[e] abbreviates J[e;u=1].
FieldSpec parse_field_spec(std::string_view src, const ParseContext& ctx);

/// A whitespace separated sequence of mode applications, e.g.
/// "J[e;u=1](-1) Kdt[u=1](0)"; application to |0> is right to left.
std::vector<std::pair<FieldSpec, int>> parse_mode_list(std::string_view src,
                                                       const ParseContext& ctx);

}  // namespace tva
