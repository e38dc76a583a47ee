#pragma once

#include <gmpxx.h>

#include <string>

#include "tracealg/errors.hpp"

namespace tracealg {

// Exact arbitrary-precision rational. GMP keeps results canonical (lowest
// terms, positive denominator) as long as every value is constructed
// canonical, so all construction funnels through the helpers below.
using Rational = mpq_class;

inline Rational ratio(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    mpq_class r;
    if (r.set_str(text, 10) != 0) throw ParseError("bad rational literal: " + text);
    if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
    r.canonicalize();
    return r;
}

}  // namespace tracealg
