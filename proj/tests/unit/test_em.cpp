#include <random>

#include "doctest.h"
#include "simdiff/cohomology.hpp"
#include "simdiff/em.hpp"
#include "simdiff/fixtures.hpp"

using namespace simdiff;

namespace {

std::uint32_t top(int m) { return (1u << (m + 1)) - 2; }

Cochain random_cocycle(const ComplexPtr& x, int n, std::mt19937_64& rng) {
  IntegerCohomology h(x, n);
  Cochain z(x, n);
  for (std::size_t i = 0; i < h.cocycle_rank(); ++i) {
    z += Rational(static_cast<long>(rng() % 7) - 3) * h.cocycle_basis(i);
  }
  return z;
}

// Direct formula for the structure map on an (n+1)-face with vertices v:
// [t(v0) = 0 and t(v1) = 1] * w(v1 .. v_{n+1}).
Cochain structure_oracle(const Cochain& w, const OrdMap& t) {
  const int p = w.complex()->dimension();
  const int n = w.degree();
  auto d = standard_simplex(p);
  Cochain out(d, n + 1);
  for (auto g : d->generators_of_dim(n + 1)) {
    std::vector<int> v;
    for (int b = 0; b <= p; ++b) {
      if ((g + 1) & (1u << b)) v.push_back(b);
    }
    if (t[v[0]] != 0 || t[v[1]] != 1) continue;
    unsigned mask = 0;
    for (std::size_t i = 1; i < v.size(); ++i) mask |= 1u << v[i];
    out.set(g, w.value(mask - 1));
  }
  return out;
}

}  // namespace

TEST_SUITE("em-spectrum") {
  TEST_CASE("levels of K(A,n) have the expected ranks") {
    // rank Z^n(Delta^m) = C(m, n) for n >= 1.
    const int binom[6][6] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}, {1, 5, 10, 10, 5, 1}};
    for (int n = 1; n <= 3; ++n) {
      EMSpace e(n, Coefficients::integers());
      for (int m = 0; m <= 5; ++m) {
        const std::size_t expected = m >= n ? static_cast<std::size_t>(binom[m][n]) : 0;
        CHECK(e.level_basis(m).size() == expected);
      }
    }
    EMSpace e0(0, Coefficients::integers());
    CHECK(e0.level_basis(3).size() == 1);
  }

  TEST_CASE("simplicial identities hold in K(A,n)") {
    for (int n = 0; n <= 3; ++n) {
      CHECK_NOTHROW(EMSpace(n, Coefficients::integers()).check_identities(4, 11u + static_cast<unsigned>(n)));
      CHECK_NOTHROW(EMSpace(n, Coefficients::modular(2)).check_identities(4, 5u));
    }
  }

  TEST_CASE("maps and cocycles correspond") {
    std::mt19937_64 rng(3);
    for (auto x : {circle(3), circle(5), sphere2(), rp2(), torus()}) {
      for (int n = 1; n <= 2; ++n) {
        for (auto coeffs : {Coefficients::integers(), Coefficients::modular(2)}) {
          EMSpace e(n, coeffs);
          FundamentalCocycle iota{&e};
          Cochain z = normalize(random_cocycle(x, n, rng) + coboundary(random_cochain(x, n - 1, rng)), coeffs);
          EMMap f = cocycle_to_map(z, e);
          CHECK_NOTHROW(f.check());
          CHECK(map_to_cocycle(f, iota) == z);
          CHECK(map_to_cocycle(cocycle_to_map(map_to_cocycle(f, iota), e), iota) == z);
        }
      }
    }
  }

  TEST_CASE("one edge hits the generator once") {
    auto c = circle(3);
    EMSpace e(1, Coefficients::integers());
    Cochain z(c, 1);
    z.at(0) = 1;
    EMMap f = cocycle_to_map(z, e);
    int hits = 0;
    for (auto g : c->generators_of_dim(1)) hits += f.image(g).value(top(1)) == 1 ? 1 : 0;
    CHECK(hits == 1);
    CHECK(map_to_cocycle(cocycle_to_map(Cochain(c, 1), e), FundamentalCocycle{&e}).is_zero());
  }

  TEST_CASE("cocycle_to_map is natural") {
    auto big = circle(6);
    auto small = circle(3);
    SimplicialMap cover = circle_cover(big, small);
    EMSpace e(1, Coefficients::integers());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      Cochain z = random_cochain(small, 1, rng);
      EMMap lhs = cocycle_to_map(pullback(cover, z), e);
      EMMap rhs = precompose(cover, cocycle_to_map(z, e));
      for (std::uint32_t g = 0; g < big->size(); ++g) CHECK(lhs.image(g) == rhs.image(g));
    }
  }

  TEST_CASE("the tautological map pulls iota back to itself") {
    for (int n = 1; n <= 3; ++n) {
      EMSpace e(n, Coefficients::integers());
      const std::vector<Integer> values{1, 2, -5};
      auto sk = em_skeleton(e, values);
      EMMap f = tautological_map(sk, e, values);
      CHECK_NOTHROW(f.check());
      Cochain z = map_to_cocycle(f, FundamentalCocycle{&e});
      for (std::size_t i = 0; i < values.size(); ++i) CHECK(z.at(i) == Rational(values[i]));
    }
  }

  TEST_CASE("structure map agrees with the face formula") {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 2; ++n) {
      EMSpace e(n, Coefficients::integers());
      for (int p = n; p <= 4; ++p) {
        const Cochain w = e.random_simplex(p, rng);
        for (int cut = 0; cut <= p + 1; ++cut) {
          OrdMap t(static_cast<std::size_t>(p + 1));
          for (int v = 0; v <= p; ++v) t[v] = v >= cut ? 1 : 0;
          CHECK(structure_map(w, t) == structure_oracle(w, t));
        }
      }
    }
  }

  TEST_CASE("iota is compatible with the structure maps") {
    for (int n = 0; n <= 3; ++n) {
      for (auto coeffs : {Coefficients::integers(), Coefficients::modular(2)}) {
        EMSpace en(n, coeffs), en1(n + 1, coeffs);
        const IotaReport r = check_iota_compatibility(en, {&en}, {&en1}, n + 3);
        CHECK_MESSAGE(r.pass, r.message);
        CHECK(r.checked > 0);
      }
    }
  }

  TEST_CASE("a rescaled iota is detected with its location") {
    for (int n = 1; n <= 2; ++n) {
      EMSpace en(n, Coefficients::integers()), en1(n + 1, Coefficients::integers());
      const IotaReport r = check_iota_compatibility(en, {&en}, {&en1, 2}, n + 3);
      CHECK_FALSE(r.pass);
      CHECK(r.level == n);
      CHECK(r.simplex.find("face") != std::string::npos);
    }
    // Over Z/3 a factor 2 is invertible but still not the identity.
    EMSpace en(1, Coefficients::modular(3)), en1(2, Coefficients::modular(3));
    CHECK_FALSE(check_iota_compatibility(en, {&en}, {&en1, 2}, 3).pass);
  }

  TEST_CASE("loop identification inverts suspension") {
    std::mt19937_64 rng(4);
    for (auto x : {circle(3), rp2()}) {
      PrismTower tower(x, 1);
      auto prism = tower.level(1);
      for (int trial = 0; trial < 10; ++trial) {
        Cochain w = random_cochain(x, 1, rng);
        Cochain s = suspend(w, *prism);
        CHECK(loop(s, *prism) == w);
        CHECK(end_trivial(s, tower));
        const bool constant_trivial = end_trivial(pullback(tower.projection(1), w + w), tower);
        CHECK(constant_trivial == w.is_zero());
      }
    }
  }
}

TEST_SUITE("mapping-complex") {
  TEST_CASE("Moore filler of a 2-horn") {
    auto x = circle(3);
    MappingComplex mc(x, 1, Coefficients::integers());
    std::mt19937_64 rng(8);
    const Cochain z = random_cocycle(x, 1, rng);
    const Cochain a = random_cochain(x, 0, rng), b = random_cochain(x, 0, rng);
    // Homotopies z -> z + da and z + da -> z + da + db.
    auto homotopy = [&](const Cochain& from, const Cochain& step) {
      auto prism = mc.level(1);
      Cochain pr = pullback(mc.tower().projection(1), from);
      Cochain v1(standard_simplex(1), 0);
      v1.set(1, 1);
      return pr + coboundary(cross(*prism->product, v1, step));
    };
    const Cochain f = homotopy(z, a);
    const Cochain g = homotopy(z + coboundary(a), b);
    REQUIRE(mc.is_cocycle(f));
    CHECK(mc.to_base(mc.face(f, 1)) == z);
    CHECK(mc.to_base(mc.face(f, 0)) == z + coboundary(a));
    const Cochain sigma = mc.moore_fill(2, 1, {g, Cochain(), f});
    CHECK(mc.is_cocycle(sigma));
    CHECK(mc.face(sigma, 0) == g);
    CHECK(mc.face(sigma, 2) == f);
    const Cochain mid = mc.face(g, 1);
    CHECK(mc.face(sigma, 1) == f + g - mc.degeneracy(mid, 0));
    CHECK(mc.to_base(mc.face(mc.face(sigma, 1), 0)) == z + coboundary(a) + coboundary(b));
  }

  TEST_CASE("random horns are filled") {
    std::mt19937_64 rng(12);
    for (auto x : {circle(3), sphere2()}) {
      for (int d = 1; d <= 2; ++d) {
        MappingComplex mc(x, d, Coefficients::integers());
        for (int trial = 0; trial < 25; ++trial) {
          const int m = 2 + static_cast<int>(rng() % 2);
          const int k = static_cast<int>(rng() % static_cast<unsigned>(m + 1));
          auto prism = mc.level(m);
          const Cochain w = pullback(mc.tower().projection(m), random_cocycle(x, d, rng)) +
                            coboundary(random_cochain(prism->complex(), d - 1, rng));
          std::vector<Cochain> faces;
          for (int i = 0; i <= m; ++i) faces.push_back(i == k ? Cochain() : mc.face(w, i));
          for (std::uint64_t seed : {0ull, 77ull}) {
            const Cochain f = mc.moore_fill(m, k, faces, seed);
            CHECK(mc.is_cocycle(f));
            for (int i = 0; i <= m; ++i) {
              if (i != k) CHECK(mc.face(f, i) == faces[static_cast<std::size_t>(i)]);
            }
          }
        }
      }
    }
  }

  TEST_CASE("degenerate horns have degenerate fillers") {
    auto x = rp2();
    MappingComplex mc(x, 2, Coefficients::modular(2));
    std::mt19937_64 rng(2);
    const Cochain z = mc.from_base(normalize(random_cocycle(x, 2, rng), mc.coeffs()));
    const Cochain e = mc.degeneracy(z, 0);
    for (int k = 0; k <= 2; ++k) {
      std::vector<Cochain> faces{e, e, e};
      faces[static_cast<std::size_t>(k)] = Cochain();
      CHECK(mc.moore_fill(2, k, faces) == mc.degeneracy(e, 0));
    }
  }

  TEST_CASE("incompatible horns are rejected") {
    auto x = circle(3);
    MappingComplex mc(x, 1, Coefficients::integers());
    Cochain z(x, 1);
    z.at(0) = 1;
    const Cochain e0 = mc.degeneracy(mc.from_base(Cochain(x, 1)), 0);
    const Cochain e1 = mc.degeneracy(mc.from_base(z), 0);
    CHECK_THROWS_AS(mc.moore_fill(2, 1, {e0, Cochain(), e1}), Error);
  }

  TEST_CASE("homotopy classes match cohomology classes") {
    std::mt19937_64 rng(31);
    for (auto x : {circle(4), rp2(), torus()}) {
      for (auto coeffs : {Coefficients::integers(), Coefficients::modular(2)}) {
        for (int n = 1; n <= 2; ++n) {
          MappingComplex mc(x, n, coeffs);
          for (int trial = 0; trial < 6; ++trial) {
            const Cochain z0 = normalize(random_cocycle(x, n, rng), coeffs);
            Cochain z1 = normalize(trial % 2 == 0 ? z0 + coboundary(random_cochain(x, n - 1, rng))
                                                  : random_cocycle(x, n, rng),
                                   coeffs);
            const auto r = mc.extend(1, {mc.from_base(z1), mc.from_base(z0)});
            const bool cohomologous = solve_coboundary(normalize(z1 - z0, coeffs), coeffs).solvable;
            CHECK(r.exists == cohomologous);
            if (r.exists) {
              CHECK(mc.is_cocycle(r.filler));
              CHECK(mc.to_base(mc.face(r.filler, 0)) == z1);
              CHECK(mc.to_base(mc.face(r.filler, 1)) == z0);
            } else {
              CHECK_FALSE(r.certificate.empty());
            }
          }
        }
      }
    }
  }
}
