#include <sstream>

#include "doctest.h"
#include "simdiff/chern.hpp"
#include "simdiff/fixtures.hpp"

using namespace simdiff;

namespace {

std::string failures(const CoherenceReport& r) {
  std::ostringstream os;
  for (const auto& a : r.axioms) {
    if (!a.pass) os << a.axiom << ": " << a.counterexample << "\n";
  }
  return os.str();
}

bool passes(const CoherenceReport& r, const std::string& axiom) {
  const auto* a = r.find(axiom);
  return a != nullptr && a->pass && a->trials > 0;
}

}  // namespace

TEST_SUITE("chern") {
  TEST_CASE("cocycle groupoid is strict symmetric monoidal") {
    CocycleGroupoid g(torus(), 2);
    const auto r = check_coherence(g, {10, 3, false, true});
    INFO(failures(r));
    CHECK(r.pass());
    std::mt19937_64 rng(1);
    const Cochain w = g.sample_object(rng);
    CHECK(g.is_object(w));
    CHECK(g.is_morphism(g.sample_morphism(w, rng)));
  }

  TEST_CASE("morphisms of forms are compared modulo coboundaries") {
    const auto c = circle(3);
    CocycleGroupoid g(c, 2);  // eta in degree 1, H^1 = Q
    const Cochain zero(c, 2);
    Cochain loop(c, 1);
    loop.set(c->generators_of_dim(1)[0], 1);
    const auto a = g.morphism(zero, loop);
    CHECK_FALSE(g.equal(a, g.identity(zero)));
    Cochain vertex(c, 0);
    vertex.at(1) = 3;
    CHECK(g.equal(g.morphism(zero, coboundary(vertex)), g.identity(zero)));
  }

  TEST_CASE("strict Chern functor is symmetric monoidal") {
    for (int n : {1, 2}) {
      StrictModel model(n);
      for (const auto& x : {circle(3), torus()}) {
        const auto r = check_monoidal_functor(model.functor(x), {8, 11, false, true}, "ch");
        INFO(x->name(), " n=", n, "\n", failures(r));
        CHECK(r.pass());
      }
    }
  }

  TEST_CASE("every functor square is witnessed by a Delta^3 integral") {
    for (int n : {1, 2}) {
      StrictModel model(n);
      for (const auto& x : {circle(3), torus()}) {
        const auto r = check_chern_witnesses(model, x, 6, 5);
        INFO(x->name(), " n=", n, "\n", failures(r));
        CHECK(r.pass());
        CHECK(r.axioms.size() == 7);
      }
    }
  }

  TEST_CASE("loops at the zero object integrate to their twist") {
    for (int n : {1, 2}) {
      StrictModel model(n);
      const auto r = check_loop_consistency(model, circle(3), 6, 9);
      INFO("n=", n, "\n", failures(r));
      CHECK(r.pass());
    }
  }

  TEST_CASE("a corrupted mu breaks associativity and the right unit") {
    StrictModel model(1);
    const auto r = check_monoidal_functor(corrupted_chern(model, circle(3)), {10, 4, false, true}, "ch'");
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.find("associativity-mu")->pass);
    CHECK_FALSE(r.find("right-unit-mu")->pass);
    CHECK(r.find("left-unit-mu")->pass);
    CHECK(r.find("naturality-mu")->pass);
  }

  TEST_CASE("weak inverse of the subdivision comparison") {
    const auto d = MapDiagram::standard();
    for (int n : {1, 2}) {
      SubdivisionComparison cmp(n, 17);
      const auto r = check_subdivision_inverse(cmp, d, {3, 21, false, true});
      INFO("n=", n, "\n", failures(r));
      CHECK(r.pass());
      for (const char* ax : {"zigzag-u", "zigzag-v", "cell-naturality", "cell-monoidal", "cell-composition",
                             "cell-identity", "modification-unit", "modification-counit", "middle-square"}) {
        CHECK_MESSAGE(passes(r, ax), ax);
      }
    }
  }

  TEST_CASE("broken zig-zag data is rejected with the offending object") {
    MapDiagram d;
    d.objects = {circle(3)};
    SubdivisionComparison cmp(2, 17, true);
    CHECK_THROWS_AS(check_subdivision_inverse(cmp, d, {3, 1, false, true}), ZigZagError);
  }

  TEST_CASE("pullback corrections satisfy Eqs 1-4 in every model") {
    const auto d = MapDiagram::standard();
    for (int n : {1, 2}) {
      StrictModel strict(n);
      SubdividedModel sub(n, 17);
      AltIotaModel alt(n, 23);
      for (const ChernModel* m : {static_cast<const ChernModel*>(&strict), static_cast<const ChernModel*>(&sub),
                                  static_cast<const ChernModel*>(&alt)}) {
        const auto r = check_pullback_corrections(*m, d, 10, 31);
        INFO(m->name(), " n=", n, "\n", failures(r));
        CHECK(r.pass());
      }
    }
  }

  TEST_CASE("the corrections of the subdivided model are not all zero") {
    SubdividedModel sub(1, 17);
    const auto d = MapDiagram::standard();
    bool nonzero = false;
    std::mt19937_64 rng(2);
    for (const auto& f : d.maps) {
      const Cochain c = sub.groupoid(f.target()).sample_object(rng);
      nonzero = nonzero || !sub.pullback_correction(f, c).is_zero();
    }
    CHECK(nonzero);
  }

  TEST_CASE("subdivided and alternative models are monoidal functors") {
    SubdividedModel sub(2, 17);
    AltIotaModel alt(2, 23);
    for (const auto& x : {circle(3), rp2()}) {
      const auto r1 = check_monoidal_functor(sub.functor(x), {5, 2, false, true}, "ch-sd");
      INFO(failures(r1));
      CHECK(r1.pass());
      const auto r2 = check_monoidal_functor(alt.functor(x), {5, 2, false, true}, "ch-alt");
      INFO(failures(r2));
      CHECK(r2.pass());
    }
  }

  TEST_CASE("the alternative cocycle is related by a modification") {
    AltIotaModel alt(2, 23);
    const auto r = check_iota_modification(alt, MapDiagram::standard(), 3, 4);
    INFO(failures(r));
    CHECK(r.pass());
  }
}
