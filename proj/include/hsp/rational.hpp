#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hsp {

// Exact rational scalar. mpq_class keeps values reduced with positive
// denominator, which is exactly the canonical form we need.
using Rational = mpq_class;

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  r.canonicalize();
  return r;
}

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hsp
