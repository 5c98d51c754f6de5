#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace doxa {

// All numeric values in the library (probabilities, payoffs, thresholds) are
// exact rationals. GMP keeps them canonical: lowest terms, denominator > 0.
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational make_rational(long num, long den = 1);

// Accepts "p/q" or a bare integer "p". Rejects q <= 0 and junk.
Rational parse_rational(std::string_view text);

// Canonical form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace doxa
