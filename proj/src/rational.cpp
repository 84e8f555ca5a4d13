#include "tva/rational.hpp"

#include "tva/errors.hpp"

namespace tva {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(std::string_view text) {
  if (text.empty()) throw Error("empty rational literal");
  Rational r;
  if (r.set_str(std::string(text), 10) != 0)
    throw Error("bad rational literal '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

}  // namespace tva
