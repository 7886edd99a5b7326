#include "doctest.h"
#include "simdiff/diffhat.hpp"
#include "simdiff/fixtures.hpp"

using namespace simdiff;

namespace {

std::string failures(const CheckList& l) {
  std::string s;
  for (const auto& c : l.checks) {
    if (!c.pass) s += c.id + ": " + c.evidence.dump() + "\n";
  }
  return s;
}

GroupPresentation expected(std::size_t free, std::vector<Integer> torsion, std::size_t divisible, std::size_t circles) {
  GroupPresentation p;
  p.free_rank = free;
  p.torsion = std::move(torsion);
  p.divisible_rank = divisible;
  p.lattice_quotients = circles;
  return p;
}

}  // namespace

TEST_SUITE("diffhat") {
  TEST_CASE("degree one over a point is the circle group") {
    StrictModel m(1);
    HatTheory h(m, point());
    const auto g = h.group(5, 1);
    INFO(failures(g.verification));
    CHECK(g.presentation == expected(0, {}, 0, 1));
    CHECK(g.verification.pass());
  }

  TEST_CASE("degree two over the circle is the circle group") {
    StrictModel m(2);
    HatTheory h(m, circle(3));
    const auto g = h.group(5, 2);
    INFO(failures(g.verification));
    CHECK(g.presentation == expected(0, {}, 0, 1));
    CHECK(g.verification.pass());
  }

  TEST_CASE("degree two over RP2 surjects onto Z/2") {
    StrictModel m(2);
    HatTheory h(m, rp2());
    const auto g = h.group(4, 3);
    INFO(failures(g.verification));
    CHECK(g.presentation.torsion == std::vector<Integer>{2});
    CHECK(g.presentation.free_rank == 0);
    CHECK(g.presentation.lattice_quotients == 0);
    CHECK(g.verification.pass());
    // The section of the generator has order two only modulo the divisible part.
    const HatClass s = g.integral_sections.at(0);
    CHECK(h.I(h.add(s, s)) == std::vector<Integer>{0});
  }

  TEST_CASE("a(l) vanishes exactly on the period lattice") {
    StrictModel m(1);
    HatTheory h(m, point());
    Cochain one(point(), 0);
    one.at(0) = 1;
    CHECK(h.equal(h.a(one), h.zero()));
    CHECK_FALSE(h.equal(h.a(Rational(1, 3) * one), h.zero()));
    CHECK(h.equal(h.a(Rational(4, 3) * one), h.a(Rational(1, 3) * one)));
    const auto e = h.eq(h.a(Rational(1, 2) * one), h.zero());
    CHECK(e.reason == "period");
    CHECK_FALSE(e.obstruction.empty());
  }

  TEST_CASE("exactness certificate over the fixtures") {
    for (int n : {1, 2}) {
      StrictModel m(n);
      for (const auto& x : {point(), circle(3), sphere2(), rp2()}) {
        HatTheory h(m, x);
        const auto c = h.exactness_certificate(2, 5);
        INFO(x->name(), " n=", n, "\n", failures(c));
        CHECK(c.pass());
        for (const char* id : {"I-surjective", "ker-I-in-im-a", "ker-a-in-im-ch", "im-ch-in-ker-a", "Rham-R-equals-ch-I"}) {
          CHECK_MESSAGE(c.find(id) != nullptr, id);
        }
      }
    }
  }

  TEST_CASE("an inconsistent iota family breaks im ch in ker a") {
    StrictModel m(2, 2);
    HatTheory h(m, circle(3));
    const auto c = h.exactness_certificate(2, 5);
    const auto* bad = c.find("im-ch-in-ker-a");
    REQUIRE(bad != nullptr);
    CHECK_FALSE(bad->pass);
    CHECK(bad->evidence.contains("functional"));
    CHECK(c.find("R-a")->pass);
  }

  TEST_CASE("equality is decided with a homotopy witness") {
    StrictModel m(2);
    HatTheory h(m, torus());
    std::mt19937_64 rng(8);
    const HatClass x = h.sample(rng);
    const MapMorphism k = h.groupoid().sample_morphism(x.c, rng);
    const HatClass y{k.target, x.omega - m.ch_morphism(torus(), k)};
    const auto e = h.eq(x, y);
    REQUIRE(e.equal);
    REQUIRE(e.homotopy.has_value());
    const Cochain residual = x.omega - y.omega - m.ch_morphism(torus(), *e.homotopy);
    CHECK(residual == coboundary(e.correction));
    CHECK_FALSE(h.equal(x, h.add(x, h.lift_class(std::vector<Integer>(h.top_cohomology().summands(), 1)))));
  }

  TEST_CASE("pullback is natural in every model") {
    const auto d = MapDiagram::standard();
    StrictModel strict(1);
    SubdividedModel sub(1, 17);
    AltIotaModel alt(1, 23);
    for (const ChernModel* model : {static_cast<const ChernModel*>(&strict), static_cast<const ChernModel*>(&sub),
                                    static_cast<const ChernModel*>(&alt)}) {
      const auto r = check_hat_naturality(*model, d, 2, 13);
      INFO(model->name(), "\n", failures(r));
      CHECK(r.pass());
    }
  }
}
