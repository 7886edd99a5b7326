#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "simdiff/fixtures.hpp"
#include "simdiff/product.hpp"

using namespace simdiff;

namespace {

// Independent count of nondegenerate p-simplices of X x Delta^k for a
// simplicial complex X: pairs of monotone vertex walks of length p that
// never stall in both coordinates at once, lying inside a simplex of X.
std::map<int, long> brute_force_prism_counts(const ComplexPtr& x, int k) {
  std::vector<std::set<std::uint32_t>> simplices;
  for (std::uint32_t g = 0; g < x->size(); ++g) {
    auto v = x->vertices_of(g);
    simplices.emplace_back(v.begin(), v.end());
  }
  // Vertices of X are ordered by id; a walk in X is a nondecreasing
  // vertex sequence whose support is a simplex.
  std::vector<std::uint32_t> verts(x->generators_of_dim(0).begin(), x->generators_of_dim(0).end());
  std::map<int, long> counts;
  const int top = x->dimension() + k;
  for (int p = 0; p <= top; ++p) {
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<int>>> walks{{{}, {}}};
    for (int step = 0; step <= p; ++step) {
      std::vector<std::pair<std::vector<std::uint32_t>, std::vector<int>>> next;
      for (const auto& [a, b] : walks) {
        for (auto va : verts) {
          if (!a.empty() && va < a.back()) continue;
          for (int vb = b.empty() ? 0 : b.back(); vb <= k; ++vb) {
            if (!a.empty() && va == a.back() && vb == b.back()) continue;
            auto na = a;
            auto nb = b;
            na.push_back(va);
            nb.push_back(vb);
            next.emplace_back(std::move(na), std::move(nb));
          }
        }
      }
      walks = std::move(next);
    }
    for (const auto& [a, b] : walks) {
      std::set<std::uint32_t> support(a.begin(), a.end());
      if (std::find(simplices.begin(), simplices.end(), support) != simplices.end()) ++counts[p];
    }
  }
  return counts;
}

}  // namespace

TEST_SUITE("simplicial-core") {
  TEST_CASE("point and circle fixtures") {
    auto pt = build_standard(FixtureKind::Point);
    CHECK(pt->size() == 1);
    CHECK(pt->count(0) == 1);
    auto s1 = circle(3);
    CHECK(s1->count(0) == 3);
    CHECK(s1->count(1) == 3);
    CHECK(s1->euler_characteristic() == 0);
    CHECK_THROWS_AS(circle(2), ConstructionError);
  }

  TEST_CASE("rp2 counts by direct enumeration of the facet list") {
    auto x = rp2();
    // Independent count: collect all faces of the 10 facets as vertex sets.
    const std::vector<std::vector<int>> facets = {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
                                                  {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}};
    std::set<std::set<int>> faces;
    for (const auto& f : facets) {
      for (unsigned m = 1; m < 8; ++m) {
        std::set<int> s;
        for (int i = 0; i < 3; ++i) {
          if (m & (1u << i)) s.insert(f[static_cast<std::size_t>(i)]);
        }
        faces.insert(s);
      }
    }
    long by_dim[3] = {0, 0, 0};
    for (const auto& s : faces) ++by_dim[s.size() - 1];
    CHECK(by_dim[0] == 6);
    CHECK(by_dim[1] == 15);
    CHECK(by_dim[2] == 10);
    CHECK(x->count(0) == 6);
    CHECK(x->count(1) == 15);
    CHECK(x->count(2) == 10);
    CHECK(by_dim[0] - by_dim[1] + by_dim[2] == 1);
    CHECK(x->euler_characteristic() == 1);
    // Every edge of a closed surface lies in exactly two triangles.
    std::map<std::set<int>, int> edge_use;
    for (const auto& f : facets) {
      for (int i = 0; i < 3; ++i) {
        std::set<int> e(f.begin(), f.end());
        e.erase(f[static_cast<std::size_t>(i)]);
        ++edge_use[e];
      }
    }
    for (const auto& [e, n] : edge_use) CHECK(n == 2);
  }

  TEST_CASE("all fixtures satisfy the simplicial identities") {
    for (auto x : {point(), standard_simplex(3), circle(3), circle(6), sphere2(), torus(), rp2()}) {
      CHECK_NOTHROW(x->check_identities());
    }
    CHECK(sphere2()->euler_characteristic() == 2);
    CHECK(torus()->euler_characteristic() == 0);
    CHECK(torus()->count(2) == 18);
    CHECK(standard_simplex(3)->count(1) == 6);
  }

  TEST_CASE("invalid presentations are rejected") {
    std::vector<Generator> gens{Generator{0, {}, "a"}, Generator{1, {Simplex{0, {0}}, Simplex{5, {0}}}, "e"}};
    CHECK_THROWS_AS(SimplicialSet("bad", gens), ConstructionError);
    std::vector<Generator> wrong_dim{Generator{0, {}, "a"}, Generator{1, {Simplex{0, {0, 0}}, Simplex{0, {0}}}, "e"}};
    CHECK_THROWS_AS(SimplicialSet("bad", wrong_dim), ConstructionError);
  }

  TEST_CASE("prism counts match an independent walk enumeration") {
    auto prism = product_with_simplex(circle(3), 1);
    const auto& xd = prism->complex();
    CHECK(xd->count(0) == 6);
    // 6 end edges, 3 verticals, 3 diagonals; 15 would give chi = -3.
    CHECK(xd->count(1) == 12);
    CHECK(xd->count(2) == 6);
    CHECK(xd->euler_characteristic() == 0);
    // Counts do not depend on the vertex order, so the walk oracle applies
    // to circle(3) even though its last edge runs against the id order.
    for (auto x : {circle(3), sphere2(), rp2(), standard_simplex(2)}) {
      for (int k = 1; k <= 3; ++k) {
        auto p = product_with_simplex(x, k);
        auto expected = brute_force_prism_counts(x, k);
        for (int d = 0; d <= x->dimension() + k; ++d) CHECK(static_cast<long>(p->complex()->count(d)) == expected[d]);
        CHECK(p->complex()->euler_characteristic() == x->euler_characteristic());
        CHECK_NOTHROW(p->complex()->check_identities());
      }
    }
  }

  TEST_CASE("prism decomposition has binomial cell counts and shuffle signs") {
    auto sq = product_with_simplex(standard_simplex(1), 1);
    const std::uint32_t edge = 2;  // mask 0b11 - 1
    const auto& cells = sq->decomposition.cells[edge];
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].sign == -cells[1].sign);
    auto p = product_with_simplex(standard_simplex(2), 3);
    const std::uint32_t tri = 6;
    CHECK(p->decomposition.cells[tri].size() == 10);  // C(5, 3)
    int plus = 0;
    for (const auto& c : p->decomposition.cells[tri]) plus += c.sign > 0;
    // Shuffles of (3, 2): signs split by the q-binomial at q = -1, which is 2.
    CHECK(2 * plus - 10 == 2);
  }

  TEST_CASE("pt x Delta^1 is Delta^1") {
    auto p = product_with_simplex(point(), 1);
    CHECK(p->complex()->count(0) == 2);
    CHECK(p->complex()->count(1) == 1);
    CHECK(p->complex()->size() == 3);
  }

  TEST_CASE("map composition laws") {
    auto s6 = circle(6);
    auto s3 = circle(3);
    auto f = circle_cover(s6, s3);
    CHECK(compose_maps(f, SimplicialMap::identity(s3)) == f);
    CHECK(compose_maps(SimplicialMap::identity(s6), f) == f);
    auto c = compose_maps(f, collapse_to_point(s3));
    CHECK(c == collapse_to_point(s6));
    CHECK_THROWS_AS(compose_maps(f, f), ConstructionError);
    auto g = circle_cover(circle(12), s6);
    CHECK(compose_maps(compose_maps(g, f), collapse_to_point(s3)) ==
          compose_maps(g, compose_maps(f, collapse_to_point(s3))));
  }

  TEST_CASE("product with Delta^k is functorial along end inclusions") {
    auto s6 = circle(6);
    auto s3 = circle(3);
    auto f = circle_cover(s6, s3);
    PrismTower ts(s6, 2), tt(s3, 2);
    auto fx = product_map(*ts.level(1)->product, *tt.level(1)->product, f, SimplicialMap::identity(standard_simplex(1)));
    fx.check();
    auto f0 = product_map(*ts.level(0)->product, *tt.level(0)->product, f, SimplicialMap::identity(standard_simplex(0)));
    for (int i = 0; i <= 1; ++i) {
      CHECK(compose_maps(ts.face_map(1, i), fx) == compose_maps(f0, tt.face_map(1, i)));
    }
    for (int p = 1; p <= 2; ++p) {
      for (int i = 0; i <= p; ++i) CHECK_NOTHROW(ts.face_map(p, i).check());
      for (int j = 0; j < p; ++j) CHECK_NOTHROW(ts.degeneracy_map(p - 1, j).check());
    }
    CHECK_NOTHROW(ts.base_iso().check());
  }
}
