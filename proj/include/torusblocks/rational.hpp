#ifndef TORUSBLOCKS_RATIONAL_HPP
#define TORUSBLOCKS_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace torusblocks {

// Arbitrary-precision rational scalar. All exact arithmetic in the project
// runs on these; q-factorials at kappa = 12 already overflow machine words.
using Rational = mpq_class;

inline Rational rational_of(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace torusblocks

#endif
