#ifndef PKIT_RATIONAL_HPP
#define PKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pkit {

// Exact arithmetic everywhere; no floating point in any computation path.
using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" with q > 0 after normalization.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace pkit

#endif
