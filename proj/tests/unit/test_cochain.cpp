#include <random>

#include "doctest.h"
#include "simdiff/cohomology.hpp"
#include "simdiff/fixtures.hpp"

using namespace simdiff;

namespace {

// Diagonal of the Smith form by plain repeated gcd reduction on machine
// integers, without transforms. Independent of the library routine.
std::vector<long> invariant_factors(std::vector<std::vector<long>> a) {
  std::vector<long> out;
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < m && t < n) {
    std::size_t pr = m, pc = n;
    for (std::size_t r = t; r < m; ++r) {
      for (std::size_t c = t; c < n; ++c) {
        if (a[r][c] != 0 && (pr == m || std::labs(a[r][c]) < std::labs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool done = true;
    for (std::size_t r = t + 1; r < m; ++r) {
      const long q = a[r][t] / a[t][t];
      for (std::size_t c = t; c < n; ++c) a[r][c] -= q * a[t][c];
      if (a[r][t] != 0) done = false;
    }
    for (std::size_t c = t + 1; c < n; ++c) {
      const long q = a[t][c] / a[t][t];
      for (std::size_t r = t; r < m; ++r) a[r][c] -= q * a[r][t];
      if (a[t][c] != 0) done = false;
    }
    if (!done) continue;
    bool divisible = true;
    for (std::size_t r = t + 1; r < m && divisible; ++r) {
      for (std::size_t c = t + 1; c < n; ++c) {
        if (a[r][c] % a[t][t] != 0) {
          for (std::size_t cc = t; cc < n; ++cc) a[t][cc] += a[r][cc];
          divisible = false;
          break;
        }
      }
    }
    if (!divisible) continue;
    out.push_back(std::labs(a[t][t]));
    ++t;
  }
  return out;
}

// Incidence matrix from vertex lists: delta_n as (n+1)-simplices x n-simplices.
std::vector<std::vector<long>> incidence(const SimplicialSet& x, int n) {
  const auto rows = x.generators_of_dim(n + 1);
  const auto cols = x.generators_of_dim(n);
  std::vector<std::vector<long>> a(rows.size(), std::vector<long>(cols.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto v = x.vertices_of(rows[r]);
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto face = v;
      face.erase(face.begin() + static_cast<long>(i));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (x.vertices_of(cols[c]) == face) a[r][c] += i % 2 == 0 ? 1 : -1;
      }
    }
  }
  return a;
}

// (rank of H^n, torsion of H^n) from the incidence matrices: torsion of
// H^n is the torsion of coker delta_{n-1}.
std::pair<long, std::vector<long>> oracle_cohomology(const SimplicialSet& x, int n) {
  const long cn = static_cast<long>(x.count(n));
  const auto fn = n + 1 <= x.dimension() ? invariant_factors(incidence(x, n)) : std::vector<long>{};
  const auto fp = n >= 1 ? invariant_factors(incidence(x, n - 1)) : std::vector<long>{};
  std::vector<long> torsion;
  for (long d : fp) {
    if (d > 1) torsion.push_back(d);
  }
  return {cn - static_cast<long>(fn.size()) - static_cast<long>(fp.size()), torsion};
}

}  // namespace

TEST_SUITE("cochain-algebra") {
  TEST_CASE("coboundary of a vertex indicator on Delta^1") {
    auto d1 = standard_simplex(1);
    Cochain v0(d1, 0);
    v0.set(0, 1);
    Cochain dv = coboundary(v0);
    // Incidence oracle: edge [0,1] has d_0 = vertex 1, d_1 = vertex 0, so
    // delta(1_{v0})([0,1]) = 0 - 1.
    CHECK(dv.value(2) == -1);
    Cochain v1(d1, 0);
    v1.set(1, 1);
    CHECK(coboundary(v1).value(2) == 1);
  }

  TEST_CASE("delta squared vanishes") {
    std::mt19937 rng(1);
    auto t = torus();
    for (int i = 0; i < 50; ++i) {
      for (int n = 0; n <= 1; ++n) CHECK(coboundary(coboundary(random_cochain(t, n, rng))).is_zero());
    }
    auto s1 = circle(3);
    CHECK(coboundary(random_cochain(s1, 1, rng)).is_zero());
    CHECK(coboundary(random_cochain(s1, 1, rng)).size() == 0);
  }

  TEST_CASE("integral cohomology agrees with the incidence-matrix oracle") {
    CHECK(cohomology(point(), 0, Coefficients::integers()).to_string() == "Z");
    auto h1 = cohomology(circle(3), 1, Coefficients::integers());
    CHECK(h1.free_rank == 1);
    CHECK(h1.torsion.empty());
    auto h2 = cohomology(rp2(), 2, Coefficients::integers());
    CHECK(h2.free_rank == 0);
    REQUIRE(h2.torsion.size() == 1);
    CHECK(h2.torsion[0] == 2);
    for (auto x : {point(), circle(3), circle(5), sphere2(), torus(), rp2()}) {
      for (int n = 0; n <= x->dimension(); ++n) {
        auto [rank, torsion] = oracle_cohomology(*x, n);
        auto p = cohomology(x, n, Coefficients::integers());
        CHECK(static_cast<long>(p.free_rank) == rank);
        std::vector<long> got;
        for (const auto& t : p.torsion) got.push_back(t.get_si());
        CHECK(got == torsion);
        CHECK(cohomology(x, n, Coefficients::rationals()).divisible_rank == p.free_rank);
      }
    }
  }

  TEST_CASE("mod 2 cohomology of rp2 by universal coefficients") {
    for (int n = 0; n <= 2; ++n) {
      auto p = cohomology(rp2(), n, Coefficients::modular(2));
      CHECK(p.torsion == std::vector<Integer>{2});
    }
    CHECK(cohomology(torus(), 1, Coefficients::modular(3)).torsion == std::vector<Integer>{3, 3});
  }

  TEST_CASE("cohomology classes and generators round-trip") {
    IntegerCohomology h(rp2(), 2);
    REQUIRE(h.summands() == 1);
    CHECK(h.class_of(h.generator(0)) == std::vector<Integer>{1});
    CHECK(h.class_of(h.generator(0) + h.generator(0)) == std::vector<Integer>{0});
    std::mt19937 rng(4);
    IntegerCohomology ht(torus(), 1);
    REQUIRE(ht.summands() == 2);
    for (int i = 0; i < 10; ++i) {
      Cochain b = random_cochain(torus(), 0, rng);
      Cochain z = ht.generator(0) + coboundary(b);
      CHECK(ht.class_of(z) == std::vector<Integer>{1, 0});
    }
  }

  TEST_CASE("solve_coboundary decides and certifies") {
    auto s1 = circle(3);
    const auto zz = Coefficients::integers();
    Cochain zero(s1, 1);
    auto r0 = solve_coboundary(zero, zz);
    REQUIRE(r0.solvable);
    CHECK(coboundary(r0.eta) == zero);
    Cochain gen(s1, 1);
    gen.set(3, 1);
    auto r1 = solve_coboundary(gen, zz);
    REQUIRE_FALSE(r1.solvable);
    CHECK(verify_coboundary_certificate(gen, zz, r1.certificate));
    auto rq = solve_coboundary(gen, Coefficients::rationals());
    REQUIRE_FALSE(rq.solvable);
    CHECK(verify_coboundary_certificate(gen, Coefficients::rationals(), rq.certificate));
    std::mt19937 rng(2);
    for (auto x : {torus(), rp2()}) {
      for (int i = 0; i < 20; ++i) {
        Cochain t = coboundary(random_cochain(x, 1, rng));
        auto r = solve_coboundary(t, zz);
        REQUIRE(r.solvable);
        CHECK(coboundary(r.eta) == t);
      }
    }
    // 2 * generator of H^2(rp2) is a coboundary, the generator is not; mod 2
    // the generator survives.
    IntegerCohomology h(rp2(), 2);
    CHECK_FALSE(solve_coboundary(h.generator(0), zz).solvable);
    CHECK(solve_coboundary(Rational(2) * h.generator(0), zz).solvable);
    auto m2 = solve_coboundary(h.generator(0), Coefficients::modular(2));
    CHECK_FALSE(m2.solvable);
    CHECK(verify_coboundary_certificate(h.generator(0), Coefficients::modular(2), m2.certificate));
  }

  TEST_CASE("fiber integration basics") {
    auto p = product_with_simplex(point(), 1);
    Cochain z(p->complex(), 1);
    for (auto g : p->complex()->generators_of_dim(1)) z.set(g, 1);
    Cochain i = fiber_integrate(z, *p);
    CHECK(i.degree() == 0);
    CHECK(i.at(0) == 1);
    std::mt19937 rng(8);
    auto s1 = circle(3);
    for (int k = 1; k <= 3; ++k) {
      auto pk = product_with_simplex(s1, k);
      Cochain w = random_cochain(s1, 1, rng);
      if (k == 1) CHECK(fiber_integrate(pullback(pk->product->projection_left(), w), *pk).is_zero());
      CHECK(fiber_integrate(cross(*pk->product, top_indicator(k), w), *pk) == w);
    }
    for (int k = 1; k <= 2; ++k) {
      auto pk = product_with_simplex(rp2(), k);
      Cochain w = random_cochain(rp2(), 2, rng);
      CHECK(fiber_integrate(pullback(pk->product->projection_left(), w), *pk).is_zero());
    }
    CHECK_THROWS_AS(fiber_integrate(Cochain(product_with_simplex(s1, 2)->complex(), 1), *product_with_simplex(s1, 2)),
                    Error);
  }

  TEST_CASE("Stokes identity for fiber integration") {
    std::mt19937 rng(12);
    for (auto x : {circle(3), rp2()}) {
      PrismTower tower(x, 3);
      for (int k = 1; k <= 3; ++k) {
        auto pk = tower.level(k);
        auto pk1 = tower.level(k - 1);
        const int trials = (k == 1 && x == circle(3)) ? 100 : 10;
        for (int t = 0; t < trials; ++t) {
          for (int deg = k; deg <= k + x->dimension() - 1; ++deg) {
            Cochain z = random_cochain(pk->complex(), deg, rng);
            Cochain lhs = coboundary(fiber_integrate(z, *pk));
            Cochain ends(x, deg - k + 1);
            for (int i = 0; i <= k; ++i) {
              Cochain face = fiber_integrate(pullback(tower.face_map(k, i), z), *pk1);
              if (k == 1) face = pullback(tower.base_iso(), face);
              ends += Rational(i % 2 == 0 ? 1 : -1) * face;
            }
            Cochain rhs = Rational(k % 2 == 0 ? 1 : -1) * (fiber_integrate(coboundary(z), *pk) - ends);
            CHECK(lhs == rhs);
          }
        }
      }
    }
  }

  TEST_CASE("k = 1 Stokes in end-inclusion form") {
    std::mt19937 rng(13);
    auto s1 = circle(3);
    PrismTower tower(s1, 1);
    for (int t = 0; t < 100; ++t) {
      Cochain z = random_cochain(tower.level(1)->complex(), 1, rng);
      Cochain i1 = pullback(tower.base_iso(), pullback(tower.face_map(1, 0), z));
      Cochain i0 = pullback(tower.base_iso(), pullback(tower.face_map(1, 1), z));
      CHECK(coboundary(fiber_integrate(z, *tower.level(1))) == i1 - i0 - fiber_integrate(coboundary(z), *tower.level(1)));
    }
  }

  TEST_CASE("fiber integration is natural") {
    std::mt19937 rng(3);
    auto s6 = circle(6);
    auto s3 = circle(3);
    auto f = circle_cover(s6, s3);
    for (int k = 1; k <= 2; ++k) {
      auto ps = product_with_simplex(s6, k);
      auto pt = product_with_simplex(s3, k);
      auto fx = product_map(*ps->product, *pt->product, f, SimplicialMap::identity(standard_simplex(k)));
      for (int t = 0; t < 10; ++t) {
        Cochain z = random_cochain(pt->complex(), k + 1, rng);
        CHECK(fiber_integrate(pullback(fx, z), *ps) == pullback(f, fiber_integrate(z, *pt)));
      }
    }
  }
}
