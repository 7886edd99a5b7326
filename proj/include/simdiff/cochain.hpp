#pragma once

// Normalized cochains with exact coefficients.
//
// Values live on generators only; degenerate simplices evaluate to zero.
// Integer, modular and rational cochains share one representation with
// rational values, and the coefficient system says how to read them.

#include <string>
#include <variant>
#include <vector>

#include "simdiff/linalg.hpp"
#include "simdiff/product.hpp"
#include "simdiff/simplicial.hpp"

namespace simdiff {

enum class CoeffKind { Integers, Modular, Rationals, GradedRationals };

struct Coefficients {
  CoeffKind kind = CoeffKind::Integers;
  Integer modulus = 0;                         // Modular only
  std::vector<std::pair<int, int>> grading;    // GradedRationals: (degree, dimension)

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {CoeffKind::Rationals, 0, {}}; }
  static Coefficients modular(const Integer& k);
  /// V = A (x) Q concentrated in degree 0, as for an ordinary theory.
  static Coefficients ordinary_v() { return {CoeffKind::GradedRationals, 0, {{0, 1}}}; }
  /// "Z", "Q", "Z/k".
  static Coefficients parse(const std::string& text);

  std::string name() const;
  /// Canonical representative of a value (reduced mod k for Z/k).
  Rational normalize(const Rational& v) const;
  bool admits(const Rational& v) const;
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

class Cochain {
 public:
  Cochain() = default;
  Cochain(ComplexPtr complex, int degree);

  const ComplexPtr& complex() const { return complex_; }
  int degree() const { return degree_; }
  std::size_t size() const { return values_.size(); }

  /// Value on the generator at position i of generators_of_dim(degree).
  const Rational& at(std::size_t i) const { return values_.at(i); }
  Rational& at(std::size_t i) { return values_.at(i); }
  const Rational& value(std::uint32_t gen) const;
  void set(std::uint32_t gen, const Rational& v);
  /// Value on an arbitrary simplex; zero on degenerate ones.
  Rational evaluate(const Simplex& s) const;

  const std::vector<Rational>& values() const { return values_; }
  bool is_zero() const;
  bool is_integral() const;

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain& operator*=(const Rational& s);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
  friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
  friend bool operator==(const Cochain& a, const Cochain& b);

 private:
  void check_compatible(const Cochain& other) const;

  ComplexPtr complex_;
  int degree_ = 0;
  std::vector<Rational> values_;
};

/// Reduces every value to its canonical representative.
Cochain normalize(Cochain c, const Coefficients& coeffs);

/// Matrix of delta: C^n -> C^{n+1} (rows: (n+1)-generators, columns:
/// n-generators, both in generators_of_dim order).
IntMatrix coboundary_matrix(const SimplicialSet& x, int n);

Cochain coboundary(const Cochain& x);

/// f^* z for f: X -> Y and z on Y.
Cochain pullback(const SimplicialMap& f, const Cochain& z);

/// Cross product on a product X x Y with the fiber factor first:
/// (a x b)(x, y) = a(front_p y) * b(back_q x), a on Y of degree p, b on X
/// of degree q. With Y = Delta^k and a the top indicator, the fiber
/// integral of a x b is b.
Cochain cross(const ProductComplex& product, const Cochain& fiber, const Cochain& base);

/// Indicator cochain of the top simplex of Delta^k.
Cochain top_indicator(int k);

/// Fiber integration over Delta^k: (int z)(x) = z(EZ(iota_k (x) x)), the
/// sum over the shuffle cells of x with their signs. Satisfies
///   delta int z = (-1)^k ( int delta z - sum_i (-1)^i int d_i^* z ),
/// which for k = 1 reads delta int z = i_1^* z - i_0^* z - int delta z.
Cochain fiber_integrate(const Cochain& z, const PrismComplex& prism);

struct CoboundarySolution {
  bool solvable = false;
  Cochain eta;
  /// When unsolvable: a functional on n-generators (generators_of_dim
  /// order) that is integral (resp. zero over Q) on every coboundary but
  /// not on the target.
  std::vector<Rational> certificate;
};

/// Finds eta with delta eta = target over the given coefficients.
CoboundarySolution solve_coboundary(const Cochain& target, const Coefficients& coeffs);

/// Checks a certificate from solve_coboundary without trusting the solver.
bool verify_coboundary_certificate(const Cochain& target, const Coefficients& coeffs,
                                   const std::vector<Rational>& certificate);

/// Uniformly random cochain with entries in [lo, hi]. Deterministic given
/// the engine state.
template <class Rng>
Cochain random_cochain(const ComplexPtr& x, int degree, Rng& rng, int lo = -3, int hi = 3) {
  Cochain c(x, degree);
  for (std::size_t i = 0; i < c.size(); ++i) c.at(i) = static_cast<long>(lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)));
  return c;
}

}  // namespace simdiff
