#include <random>

#include "doctest.h"
#include "simdiff/linalg.hpp"

using namespace simdiff;

namespace {

DenseInt random_dense(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi, double density = 1.0) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  DenseInt a(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (coin(rng) < density) a(r, c) = val(rng);
    }
  }
  return a;
}

IntMatrix to_sparse(const DenseInt& a) {
  IntMatrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) s.add(r, c, a(r, c));
  }
  s.finalize();
  return s;
}

Integer det(DenseInt a) {
  // Fraction-free Bareiss elimination.
  const std::size_t n = a.rows();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n + 1 && k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// gcd of all k x k minors (determinantal divisor), by enumeration.
Integer determinantal_divisor(const DenseInt& a, std::size_t k) {
  Integer g = 0;
  const std::size_t m = a.rows(), n = a.cols();
  for (unsigned rm = 0; rm < (1u << m); ++rm) {
    if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
    for (unsigned cm = 0; cm < (1u << n); ++cm) {
      if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
      DenseInt sub(k, k);
      std::size_t i = 0;
      for (std::size_t r = 0; r < m; ++r) {
        if (!(rm & (1u << r))) continue;
        std::size_t j = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (cm & (1u << c)) sub(i, j++) = a(r, c);
        }
        ++i;
      }
      Integer d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("Smith form matches determinantal divisors") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
      DenseInt a = random_dense(rng, m, n, -4, 4, 0.7);
      SmithForm s = smith_normal_form(a);
      DenseInt d = s.U * a * s.V;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          CHECK(d(r, c) == ((r == c && r < s.rank) ? s.diagonal[r] : Integer(0)));
        }
      }
      CHECK(s.U * s.U_inv == DenseInt::identity(m));
      CHECK(s.V * s.V_inv == DenseInt::identity(n));
      Integer running = 1;
      for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        const Integer dk = determinantal_divisor(a, k);
        if (k <= s.rank) {
          running *= s.diagonal[k - 1];
          CHECK(dk == running);
          if (k >= 2) CHECK(mpz_divisible_p(s.diagonal[k - 1].get_mpz_t(), s.diagonal[k - 2].get_mpz_t()));
        } else {
          CHECK(dk == 0);
        }
      }
    }
  }

  TEST_CASE("integer solve is certified both ways") {
    std::mt19937 rng(5);
    int solvable = 0, unsolvable = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = 3 + trial % 5, n = 2 + trial % 4;
      DenseInt a = random_dense(rng, m, n, -3, 3, 0.5);
      IntMatrix s = to_sparse(a);
      std::vector<Integer> b(m);
      std::uniform_int_distribution<int> val(-5, 5);
      if (trial % 2 == 0) {
        std::vector<Integer> x0(n);
        for (auto& v : x0) v = val(rng);
        b = s.multiply(x0);
      } else {
        for (auto& v : b) v = val(rng);
      }
      auto res = solve_integer(s, b);
      if (res.solvable) {
        ++solvable;
        CHECK(s.multiply(res.x) == b);
      } else {
        ++unsolvable;
        CHECK(trial % 2 == 1);
        CHECK(verify_integer_certificate(s, b, res.certificate));
      }
    }
    CHECK(solvable > 100);
    CHECK(unsolvable > 10);
  }

  TEST_CASE("divisibility obstruction: 2x = 1") {
    IntMatrix a(1, 1);
    a.add(0, 0, 2);
    a.finalize();
    auto res = solve_integer(a, {1});
    REQUIRE_FALSE(res.solvable);
    CHECK(verify_integer_certificate(a, {1}, res.certificate));
    CHECK(solve_integer(a, {4}).x == std::vector<Integer>{2});
  }

  TEST_CASE("modular solve agrees with exhaustive search") {
    std::mt19937 rng(9);
    for (int k : {2, 3, 4, 6}) {
      for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + trial % 3, n = 2 + trial % 3;
        DenseInt a = random_dense(rng, m, n, 0, k - 1, 0.6);
        IntMatrix s = to_sparse(a);
        std::vector<Integer> b(m);
        std::uniform_int_distribution<int> val(0, k - 1);
        for (auto& v : b) v = val(rng);
        bool brute = false;
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(k);
        for (std::size_t code = 0; code < total && !brute; ++code) {
          std::vector<Integer> x(n);
          std::size_t c = code;
          for (std::size_t i = 0; i < n; ++i, c /= static_cast<std::size_t>(k)) x[i] = static_cast<long>(c % k);
          auto ax = s.multiply(x);
          bool ok = true;
          for (std::size_t r = 0; r < m; ++r) ok = ok && mod_floor(ax[r] - b[r], k) == 0;
          brute = ok;
        }
        auto res = solve_integer(s, b, k);
        CHECK(res.solvable == brute);
        if (res.solvable) {
          auto ax = s.multiply(res.x);
          for (std::size_t r = 0; r < m; ++r) CHECK(mod_floor(ax[r] - b[r], k) == 0);
        } else {
          CHECK(verify_integer_certificate(s, b, res.certificate, k));
        }
      }
    }
  }

  TEST_CASE("integer kernel is saturated and coordinates invert the basis") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      DenseInt a = random_dense(rng, 3, 5, -3, 3, 0.6);
      IntegerKernel k = integer_kernel(a);
      DenseInt ak = a * k.basis;
      for (std::size_t r = 0; r < ak.rows(); ++r) {
        for (std::size_t c = 0; c < ak.cols(); ++c) CHECK(ak(r, c) == 0);
      }
      CHECK(k.coordinates * k.basis == DenseInt::identity(k.basis.cols()));
      RatMatrix ra = to_rational(to_sparse(a));
      CHECK(k.basis.cols() == 5 - rational_rank(ra));
    }
  }

  TEST_CASE("rational solve and kernel") {
    RatMatrix a(2, 3);
    a.add(0, 0, Rational(1));
    a.add(0, 1, Rational(2));
    a.add(1, 0, Rational(2));
    a.add(1, 1, Rational(4));
    a.finalize();
    auto bad = solve_rational(a, {Rational(1), Rational(3)});
    REQUIRE_FALSE(bad.solvable);
    CHECK(a.left_multiply(bad.certificate) == std::vector<Rational>(3));
    auto good = solve_rational(a, {Rational(1, 3), Rational(2, 3)});
    REQUIRE(good.solvable);
    CHECK(a.multiply(good.x) == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
    auto ker = rational_kernel(a);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) CHECK(a.multiply(v) == std::vector<Rational>(2));
  }
}
