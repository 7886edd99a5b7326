#include "simdiff/numeric.hpp"

namespace simdiff {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  Rational value;
  if (value.set_str(text, 10) != 0) throw Error("malformed rational literal: " + text);
  if (value.get_den() == 0) throw Error("zero denominator in rational literal: " + text);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer mod_floor(const Integer& value, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace simdiff
