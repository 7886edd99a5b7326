#include "doctest.h"
#include "simdiff/fixtures.hpp"
#include "simdiff/refine.hpp"

using namespace simdiff;

namespace {

std::string failures(const CheckList& l) {
  std::string s;
  for (const auto& c : l.checks) {
    if (!c.pass) s += c.id + ": " + c.evidence.dump() + "\n";
  }
  return s;
}

std::vector<std::string> failed_ids(const CheckList& l) {
  std::vector<std::string> ids;
  for (const auto& c : l.checks) {
    if (!c.pass) ids.push_back(c.id);
  }
  return ids;
}

}  // namespace

TEST_SUITE("refine") {
  TEST_CASE("tilde groupoid is strict symmetric monoidal with Aut = im ch") {
    for (int n : {1, 2}) {
      StrictModel m(n);
      for (const auto& x : {circle(3), rp2()}) {
        HatTheory t(m, x);
        const auto r = check_tilde(TildeGroupoid(t), 4, 3);
        INFO(x->name(), " n=", n, "\n", failures(r));
        CHECK(r.pass());
        CHECK(r.find("hom-iff-I") != nullptr);
        CHECK(r.find("tilde-pentagon") != nullptr);
      }
    }
  }

  TEST_CASE("the identity map is an equivalence with B = 0") {
    StrictModel m(1);
    HatTheory t(m, torus());
    const BObstruction b(canonical_map(t, t));
    const auto r = check_equivalence(b, 3, 1);
    INFO(failures(r));
    CHECK(r.pass());
    std::mt19937_64 rng(4);
    CHECK(b.trivial(b(t.sample(rng), t.sample(rng))));
  }

  TEST_CASE("strict is equivalent to alt-iota and to subdivided") {
    for (int n : {1, 2}) {
      StrictModel st(n);
      AltIotaModel alt(n, 23);
      SubdividedModel sub(n, 17);
      for (const auto& x : {circle(3), torus()}) {
        HatTheory ts(st, x), ta(alt, x), tsub(sub, x);
        const auto ra = check_equivalence(BObstruction(canonical_map(ts, ta)), 3, 7);
        INFO(x->name(), " n=", n, " alt\n", failures(ra));
        CHECK(ra.pass());
        const auto rs = check_equivalence(BObstruction(canonical_map(ts, tsub)), 3, 8);
        INFO(x->name(), " n=", n, " sub\n", failures(rs));
        CHECK(rs.pass());
      }
    }
  }

  TEST_CASE("a quadratic shift has nonzero B satisfying every identity") {
    StrictModel st(1);
    AltIotaModel alt(1, 23);
    HatTheory ts(st, torus()), ta(alt, torus());
    const BObstruction b(quadratic_shift(canonical_map(ts, ta), Rational(1, 3) * ta.image_generators().at(0)));
    const auto r = derive_B(b, 10, 2);
    INFO(failures(r));
    CHECK(r.pass());
    const HatClass u = ts.lift_class({1, 0});
    CHECK_FALSE(b.trivial(b(u, u)));
    const auto e = check_equivalence(b, 3, 2);
    INFO(failures(e));
    CHECK(e.pass());
  }

  TEST_CASE("each injected defect is caught by exactly its identity") {
    StrictModel st(1);
    AltIotaModel alt(1, 23);
    HatTheory ts(st, torus()), ta(alt, torus());
    const std::vector<std::pair<BDefect, std::string>> cases{
        {BDefect::cocycle, "B-cocycle"}, {BDefect::symmetry, "B-symmetry"}, {BDefect::unit, "B-unit"}};
    for (const auto& [defect, id] : cases) {
      const auto r = derive_B(BObstruction(canonical_map(ts, ta), defect), 12, 5);
      CHECK(failed_ids(r) == std::vector<std::string>{id});
    }
  }

  TEST_CASE("a wrong monoidal cell fails the matching functor axiom") {
    StrictModel st(1);
    AltIotaModel alt(1, 23);
    HatTheory ts(st, torus()), ta(alt, torus());
    const auto r = check_equivalence(BObstruction(canonical_map(ts, ta), BDefect::symmetry), 6, 5);
    CHECK(failed_ids(r) == std::vector<std::string>{"monoidal-symmetry-mu"});
  }

  TEST_CASE("I-incompatible maps cannot produce B") {
    StrictModel st(1);
    HatTheory t(st, circle(3));
    RefinementMap phi = canonical_map(t, t);
    phi.on_classes = [&t](const HatClass& x) { return t.add(x, x); };
    const BObstruction b(phi);
    const HatClass u = t.lift_class({1});
    CHECK_NOTHROW(b(u, u));  // 2(u + u) - 2u - 2u is still in ker I
    phi.on_classes = [&t](const HatClass& x) { return t.I(x)[0] == 1 ? t.zero() : x; };
    const BObstruction bad(phi);
    CHECK_THROWS_AS(bad(u, u), Error);  // I(Phi(2u)) = 2, I(Phi u + Phi u) = 0
  }

  TEST_CASE("refinement maps are natural over the generating diagram") {
    const auto d = MapDiagram::standard();
    StrictModel st(1);
    AltIotaModel alt(1, 23);
    SubdividedModel sub(1, 17);
    const auto ra = check_refinement_naturality(st, alt, d, 1, 3);
    INFO(failures(ra));
    CHECK(ra.pass());
    const auto rs = check_refinement_naturality(st, sub, d, 1, 3);
    INFO(failures(rs));
    CHECK(rs.pass());
  }
}
