#include <chrono>
#include <random>

#include "doctest.h"
#include "simdiff/fixtures.hpp"
#include "simdiff/groupoid.hpp"

using namespace simdiff;

namespace {

Cochain constant0(const ComplexPtr& x, long v) {
  Cochain c(x, 0);
  for (std::size_t i = 0; i < c.size(); ++i) c.at(i) = v;
  return c;
}

}  // namespace

TEST_SUITE("mapping-groupoid") {
  TEST_CASE("objects correspond to cocycles") {
    MappingGroupoid g(circle(3), 1, Coefficients::integers());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
      const Cochain f = g.sample_object(rng);
      CHECK(g.is_object(f));
      const Cochain w = g.cocycle_of(f);
      CHECK(g.cocycle_of(g.object_from_cocycle(w)) == w);
      CHECK(g.is_object(g.object_from_cocycle(w)));
    }
    CHECK(g.is_object(g.zero_object()));
  }

  TEST_CASE("oplus is the pointwise sum of loops") {
    MappingGroupoid g(rp2(), 1, Coefficients::integers());
    std::mt19937_64 rng(2);
    const Cochain unit = g.unit();
    CHECK(g.tensor(unit, unit) == unit);
    for (int i = 0; i < 5; ++i) {
      const Cochain f = g.sample_object(rng), h = g.sample_object(rng);
      CHECK(g.tensor(f, unit) == f);
      CHECK(g.tensor(unit, f) == f);
      CHECK(g.cocycle_of(g.tensor(f, h)) == g.cocycle_of(f) + g.cocycle_of(h));
      const OplusResult r = g.oplus(f, h);
      const auto& mc = g.mapping_complex();
      CHECK(mc.face(r.sigma, 2) == f);
      CHECK(mc.face(r.sigma, 0) == h);
    }
  }

  TEST_CASE("composite of loops on a point integrates to the sum") {
    auto pt = point();
    for (std::uint64_t seed : {0ull, 5ull}) {
      MappingGroupoid g(pt, 1, Coefficients::integers(), seed);
      const auto& prism2 = *g.mapping_complex().level(2);
      const MapMorphism id = g.identity(g.unit());
      for (long a : {1L, -2L, 3L}) {
        for (long b : {4L, 0L, -1L}) {
          const MapMorphism ha = g.twist(id, constant0(pt, a));
          const MapMorphism hb = g.twist(id, constant0(pt, b));
          REQUIRE(g.is_morphism(ha));
          const MapMorphism c = g.compose(ha, hb);
          CHECK(g.is_morphism(c));
          CHECK(fiber_integrate(c.data, prism2).at(0) == Rational(a + b));
        }
      }
    }
  }

  TEST_CASE("class equality decides and certifies") {
    for (auto x : {circle(3), torus()}) {
      MappingGroupoid g(x, 1, Coefficients::integers());
      std::mt19937_64 rng(3);
      const Cochain f = g.sample_object(rng);
      const MapMorphism h = g.sample_morphism(f, rng);
      REQUIRE(g.is_morphism(h));
      // Same class, different data.
      MapMorphism h2 = h;
      auto& mc = g.mapping_complex();
      auto prism = mc.level(2);
      Cochain beta(prism->complex(), 1);
      const auto gens = prism->complex()->generators_of_dim(1);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (delta_leg_mask(*prism, gens[i]) == 7u) beta.at(i) = static_cast<long>(i % 3) - 1;
      }
      h2.data = h2.data + coboundary(beta);
      REQUIRE(g.is_morphism(h2));
      const ClassEquality same = g.class_equal(h, h2);
      CHECK(same.equal);
      CHECK(same.integral_agrees);
      CHECK(mc.is_cocycle(same.witness));
      CHECK(mc.face(same.witness, 0) == h2.data);
      CHECK(mc.face(same.witness, 1) == h.data);
      CHECK(mc.face(same.witness, 2) == mc.degeneracy(h.target, 0));
      CHECK(mc.face(same.witness, 3) == mc.degeneracy(h.source, 0));
      // A nonzero H^0 class separates.
      const ClassEquality other = g.class_equal(h, g.twist(h, constant0(x, 1)));
      CHECK_FALSE(other.equal);
      CHECK(other.integral_agrees);
      CHECK_FALSE(other.certificate.empty());
    }
  }

  TEST_CASE("mod 2 automorphisms are detected mod 2") {
    MappingGroupoid g(circle(4), 1, Coefficients::modular(2));
    const MapMorphism id = g.identity(g.unit());
    CHECK(g.equal(g.twist(id, constant0(circle(4), 2)), id));
    CHECK_FALSE(g.equal(g.twist(id, constant0(circle(4), 1)), id));
  }

  TEST_CASE("structure cells are strict in the loop model") {
    MappingGroupoid g(circle(3), 1, Coefficients::integers());
    const StrictnessReport r = g.strictness(3, 4);
    CHECK(r.unit_left_strict);
    CHECK(r.unit_right_strict);
    CHECK(r.associative_strict);
    CHECK(r.unitors_trivial);
    CHECK(r.associator_trivial);
    CHECK(r.braiding_trivial);
    CHECK(g.equal(g.left_unitor(g.unit()), g.right_unitor(g.unit())));
  }

  TEST_CASE("coherence axioms hold over the circle") {
    MappingGroupoid g(circle(3), 1, Coefficients::integers());
    CoherenceOptions opt;
    opt.trials = 6;
    opt.seed = 9;
    const CoherenceReport r = check_coherence(g, opt);
    for (const auto& a : r.axioms) CHECK_MESSAGE(a.pass, a.axiom << ": " << a.counterexample);
    CHECK(r.find("pentagon")->trials == 6);
  }

  TEST_CASE("filler perturbation leaves class-level outcomes unchanged") {
    CoherenceOptions opt;
    opt.trials = 3;
    opt.seed = 12;
    const CoherenceReport plain = check_coherence(MappingGroupoid(circle(3), 2, Coefficients::integers()), opt);
    const CoherenceReport perturbed = check_coherence(MappingGroupoid(circle(3), 2, Coefficients::integers(), 99), opt);
    REQUIRE(plain.axioms.size() == perturbed.axioms.size());
    for (std::size_t i = 0; i < plain.axioms.size(); ++i) CHECK(plain.axioms[i].pass == perturbed.axioms[i].pass);
    CHECK(plain.pass());
    // The perturbed fillers really differ. (For n = 1 the 3-dimensional
    // fillers are unique, so this needs n >= 2.)
    MappingGroupoid a(circle(3), 2, Coefficients::integers()), b(circle(3), 2, Coefficients::integers(), 99);
    std::mt19937_64 r1(1), r2(1);
    const MapMorphism ha = a.sample_morphism(a.sample_object(r1), r1);
    const MapMorphism hb = b.sample_morphism(b.sample_object(r2), r2);
    REQUIRE(ha.data.values() == hb.data.values());
    const MapMorphism ia = a.inverse(ha), ib = b.inverse(hb);
    CHECK(ia.data.values() != ib.data.values());
    CHECK(b.is_morphism(ib));
    CHECK(b.equal(b.compose(hb, ib), b.identity(hb.source)));
  }

  TEST_CASE("interchange of the two concatenations") {
    MappingGroupoid g(circle(3), 1, Coefficients::integers());
    std::mt19937_64 rng(6);
    for (int i = 0; i < 3; ++i) {
      const Cochain f = g.sample_object(rng), k = g.sample_object(rng);
      const MapMorphism h = g.sample_morphism(f, rng);
      const MapMorphism m = g.sample_morphism(k, rng);
      // (H (+) id) o (id (+) K) = (id (+) K) o (H (+) id).
      const MapMorphism lhs = g.compose(g.tensor_morphisms(g.identity(f), m), g.tensor_morphisms(h, g.identity(m.target)));
      const MapMorphism rhs = g.compose(g.tensor_morphisms(h, g.identity(k)), g.tensor_morphisms(g.identity(h.target), m));
      CHECK(g.equal(lhs, rhs));
      CHECK(g.equal(g.tensor_morphisms(g.inverse(h), g.inverse(m)), g.inverse(g.tensor_morphisms(h, m))));
      // Pointwise sum and (+) agree on classes.
      CHECK(g.equal(g.pointwise_sum(h, m), g.tensor_morphisms(h, m)));
    }
  }

  TEST_CASE("triangle and cylinder models agree") {
    for (auto x : {circle(3), rp2()}) {
      MappingGroupoid g(x, 1, Coefficients::integers());
      CylinderModel cyl(g);
      std::mt19937_64 rng(17);
      for (int i = 0; i < 3; ++i) {
        const Cochain f = g.sample_object(rng);
        const MapMorphism h1 = g.sample_morphism(f, rng);
        const MapMorphism h2 = g.sample_morphism(h1.target, rng);
        const Cochain c1 = cyl.from_triangle(h1), c2 = cyl.from_triangle(h2);
        CHECK(cyl.is_morphism(c1, h1.source, h1.target));
        CHECK(cyl.is_morphism(c2, h2.source, h2.target));
        CHECK(cyl.equal(cyl.compose(c1, c2), cyl.from_triangle(g.compose(h1, h2))));
        CHECK(g.equal(cyl.to_triangle(c1, h1.source, h1.target), h1));
      }
      // Injectivity on classes: a twist changes the cylinder class too.
      const Cochain f = g.sample_object(rng);
      const MapMorphism h = g.sample_morphism(f, rng);
      const MapMorphism t = g.twist(h, constant0(x, 1));
      CHECK_FALSE(cyl.equal(cyl.from_triangle(h), cyl.from_triangle(t)));
      CHECK(g.equal(cyl.to_triangle(cyl.from_triangle(t), f, h.target), t));
      // Surjectivity: a cylinder built from a twisted coboundary is realized.
      const Cochain c = cyl.compose(cyl.from_triangle(h), cyl.from_triangle(g.twist(g.identity(h.target), constant0(x, 2))));
      const MapMorphism back = cyl.to_triangle(c, f, h.target);
      CHECK(cyl.equal(cyl.from_triangle(back), c));
    }
  }
}

TEST_SUITE("moncat") {
  TEST_CASE("skeletal instances: pentagon iff cocycle") {
    CoherenceOptions opt;
    opt.trials = 40;
    const SkeletalGroupoid good = SkeletalGroupoid::cubic_cocycle();
    const SkeletalGroupoid bad = SkeletalGroupoid::broken_cocycle();
    CHECK(good.omega_is_cocycle());
    CHECK_FALSE(bad.omega_is_cocycle());
    const CoherenceReport rg = check_coherence(good, opt);
    const CoherenceReport rb = check_coherence(bad, opt);
    CHECK(rg.pass());
    CHECK(rg.find("hexagon") == nullptr);
    CHECK_FALSE(rb.find("pentagon")->pass);
    CHECK(rb.find("pentagon")->counterexample.find("a=") != std::string::npos);
    CHECK(rb.find("associativity")->pass);
  }

  TEST_CASE("braided skeletal instances") {
    CoherenceOptions opt;
    opt.trials = 40;
    const CoherenceReport sym = check_coherence(SkeletalGroupoid::symmetric_sign(), opt);
    CHECK(sym.pass());
    const SkeletalGroupoid semion = SkeletalGroupoid::semion();
    CHECK(semion.omega_is_cocycle());
    const CoherenceReport r = check_coherence(semion, opt);
    CHECK(r.find("hexagon")->pass);
    CHECK(r.find("pentagon")->pass);
    CHECK_FALSE(r.find("symmetry")->pass);
  }

  TEST_CASE("identity functor is monoidal") {
    const SkeletalGroupoid g = SkeletalGroupoid::semion();
    MonFunctor<SkeletalGroupoid, SkeletalGroupoid> id{
        &g, &g, [](const int& a) { return a; }, [](const std::pair<int, int>& m) { return m; },
        [&g](const int& a, const int& b) { return g.identity(g.tensor(a, b)); }, [&g] { return g.identity(0); }};
    CoherenceOptions opt;
    opt.trials = 20;
    CHECK(check_monoidal_functor(id, opt).pass());
    // A shifted multiplicativity cell breaks associativity.
    auto broken = id;
    broken.mu = [&g](const int& a, const int& b) {
      return std::pair<int, int>{g.tensor(a, b), a * (1 - b)};
    };
    const CoherenceReport r = check_monoidal_functor(broken, opt);
    CHECK_FALSE(r.pass());
  }
}
