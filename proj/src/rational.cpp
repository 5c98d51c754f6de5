#include "doxa/rational.hpp"

#include <cctype>

namespace doxa {

Rational make_rational(long num, long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw ParseError("not a rational: '" + std::string(text) + "'");
  }
  if (!num.empty() && num[0] == '+') num.remove_prefix(1);
  mpz_class n{std::string(num)};
  mpz_class d{std::string(den)};
  if (sgn(d) == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational q(n);
  q /= Rational(d);
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

}  // namespace doxa
