#include <random>

#include "doctest.h"
#include "simdiff/fixtures.hpp"
#include "simdiff/subdivision.hpp"

using namespace simdiff;

namespace {

std::vector<ComplexPtr> fixtures() { return {point(), circle(3), sphere2(), torus(), rp2(), standard_simplex(3)}; }

}  // namespace

TEST_SUITE("subdivision") {
  TEST_CASE("cell counts of sd X keep the Euler characteristic") {
    for (const auto& x : fixtures()) {
      const Subdivision sd(x);
      CHECK(sd.complex()->euler_characteristic() == x->euler_characteristic());
      CHECK(sd.complex()->count(0) == x->size());
      sd.complex()->check_identities();
      sd.last_vertex().check();
    }
    // sd(Delta^2): 7 vertices, 12 edges, 6 triangles.
    const Subdivision sd2(standard_simplex(2));
    CHECK(sd2.complex()->count(1) == 12);
    CHECK(sd2.complex()->count(2) == 6);
  }

  TEST_CASE("sd^* is a cochain map and a left inverse of lambda^*") {
    std::mt19937_64 rng(3);
    for (const auto& x : fixtures()) {
      const Subdivision sd(x);
      for (int k = 0; k <= x->dimension(); ++k) {
        const Cochain y = random_cochain(sd.complex(), k, rng);
        CHECK(sd.collapse(coboundary(y)) == coboundary(sd.collapse(y)));
        const Cochain w = random_cochain(x, k, rng);
        CHECK(sd.collapse(sd.refine(w)) == w);
      }
    }
  }

  TEST_CASE("the homotopy satisfies lambda^* sd^* - 1 = dD + Dd with side conditions") {
    std::mt19937_64 rng(5);
    for (const auto& x : fixtures()) {
      const Subdivision sd(x);
      for (int k = 0; k <= x->dimension(); ++k) {
        const Cochain y = random_cochain(sd.complex(), k, rng);
        const Cochain lhs = sd.refine(sd.collapse(y)) - y;
        for (bool side : {false, true}) {
          auto D = [&](const Cochain& c) { return side ? sd.homotopy(c) : sd.cone_homotopy(c); };
          Cochain rhs = D(coboundary(y));
          if (k > 0) rhs += coboundary(D(y));
          CHECK(rhs == lhs);
        }
        if (k > 0) {
          const Cochain w = random_cochain(x, k, rng);
          CHECK(sd.homotopy(sd.refine(w)).is_zero());
          CHECK(sd.collapse(sd.homotopy(y)).is_zero());
        }
      }
    }
  }

  TEST_CASE("sd f is simplicial and both comparisons are natural") {
    std::mt19937_64 rng(7);
    const auto c6 = circle(6), c3 = circle(3), t = torus();
    std::vector<SimplicialMap> maps{circle_cover(c6, c3), collapse_to_point(c3), point_inclusion(c3, 0),
                                    make_product(c3, c3)->projection_left()};
    for (const auto& f : maps) {
      const auto src = subdivision_of(f.source());
      const auto dst = subdivision_of(f.target());
      const SimplicialMap sdf = subdivide_map(*src, *dst, f);
      sdf.check();
      for (int k = 0; k <= 1; ++k) {
        const Cochain y = random_cochain(dst->complex(), k, rng);
        CHECK(pullback(f, dst->collapse(y)) == src->collapse(pullback(sdf, y)));
        const Cochain w = random_cochain(f.target(), k, rng);
        CHECK(pullback(sdf, dst->refine(w)) == src->refine(pullback(f, w)));
      }
    }
  }

  TEST_CASE("singular simplicial sets are rejected") {
    Generator v{0, {}, "v"};
    Generator e{1, {Simplex{0, {0}}, Simplex{0, {0}}}, "e"};
    auto loop = std::make_shared<SimplicialSet>("loop", std::vector<Generator>{v, e});
    CHECK_THROWS_AS(Subdivision{loop}, ConstructionError);
  }
}
