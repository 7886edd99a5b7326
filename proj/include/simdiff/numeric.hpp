#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace simdiff {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a complex, map or cochain fails a structural precondition.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(const std::string& text);

/// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

/// Floor-based remainder in [0, m).
Integer mod_floor(const Integer& value, const Integer& modulus);

}  // namespace simdiff
