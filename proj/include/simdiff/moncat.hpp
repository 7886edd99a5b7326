#pragma once

// Symmetric monoidal groupoids given by a morphism-class calculus, with
// sampled coherence checkers, monoidal functors and the weak inverse of a
// strict transformation.
//
// Composition is written in diagrammatic order: compose(a, b) is "a, then
// b". Unitors follow Mac Lane: left_unitor(x): I (x) x -> x and
// right_unitor(x): x (x) I -> x; associator(a, b, c): (a b) c -> a (b c).

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace simdiff {

/// Outcome of an equality test between morphisms, with the evidence that
/// decided it.
struct Decision {
  bool equal = false;
  nlohmann::json evidence;
};

template <class Obj, class Mor>
class MonoidalGroupoid {
 public:
  using Object = Obj;
  using Morphism = Mor;
  virtual ~MonoidalGroupoid() = default;

  virtual std::string name() const = 0;
  virtual Obj source(const Mor& m) const = 0;
  virtual Obj target(const Mor& m) const = 0;
  virtual bool same_object(const Obj& a, const Obj& b) const = 0;
  virtual Mor identity(const Obj& a) const = 0;
  virtual Mor compose(const Mor& first, const Mor& second) const = 0;
  virtual Mor inverse(const Mor& m) const = 0;
  virtual Decision decide(const Mor& a, const Mor& b) const = 0;
  bool equal(const Mor& a, const Mor& b) const { return decide(a, b).equal; }

  virtual Obj unit() const = 0;
  virtual Obj tensor(const Obj& a, const Obj& b) const = 0;
  virtual Mor tensor_morphisms(const Mor& a, const Mor& b) const = 0;
  virtual Mor left_unitor(const Obj& a) const = 0;
  virtual Mor right_unitor(const Obj& a) const = 0;
  virtual Mor associator(const Obj& a, const Obj& b, const Obj& c) const = 0;
  virtual bool braided() const { return true; }
  virtual Mor braiding(const Obj& a, const Obj& b) const = 0;

  virtual Obj sample_object(std::mt19937_64& rng) const = 0;
  /// A random morphism out of `from`.
  virtual Mor sample_morphism(const Obj& from, std::mt19937_64& rng) const = 0;
  virtual std::string describe(const Obj&) const { return "object"; }
};

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  int trials = 0;
  std::string counterexample;
  std::vector<nlohmann::json> evidence;
  /// Evidence of the first failing decision.
  nlohmann::json obstruction;
};

struct CoherenceReport {
  std::string instance;
  std::vector<AxiomResult> axioms;

  bool pass() const {
    for (const auto& a : axioms) {
      if (!a.pass) return false;
    }
    return true;
  }
  const AxiomResult* find(const std::string& axiom) const {
    for (const auto& a : axioms) {
      if (a.axiom == axiom) return &a;
    }
    return nullptr;
  }
  nlohmann::json to_json() const;
};

inline nlohmann::json CoherenceReport::to_json() const {
  nlohmann::json out{{"instance", instance}, {"pass", pass()}, {"axioms", nlohmann::json::array()}};
  for (const auto& a : axioms) {
    nlohmann::json j{{"axiom", a.axiom}, {"pass", a.pass}, {"trials", a.trials}};
    if (!a.pass) j["counterexample"] = a.counterexample;
    if (!a.evidence.empty()) j["certificates"] = a.evidence;
    out["axioms"].push_back(std::move(j));
  }
  return out;
}

namespace detail {

/// Records one sampled check of an axiom.
struct AxiomRecorder {
  AxiomResult result;
  bool keep_evidence;

  void record(const Decision& d, const std::function<std::string()>& describe) {
    ++result.trials;
    if (keep_evidence) result.evidence.push_back(d.evidence);
    if (!d.equal && result.pass) {
      result.pass = false;
      result.counterexample = describe();
      result.obstruction = d.evidence;
    }
  }
};

}  // namespace detail

struct CoherenceOptions {
  int trials = 25;
  std::uint64_t seed = 1;
  bool keep_evidence = false;
  /// Also check the symmetric axioms (hexagon, gamma^2 = id, naturality of
  /// gamma) when the instance is braided.
  bool symmetric = true;
};

/// Samples objects and morphisms and checks: category laws, functoriality
/// of the tensor, naturality of all cells, triangle, pentagon, unit
/// coherence and, for braided instances, hexagon, gamma^2 = id and
/// naturality of gamma.
template <class G>
CoherenceReport check_coherence(const G& g, const CoherenceOptions& opt) {
  using Obj = typename G::Object;
  using Mor = typename G::Morphism;
  std::mt19937_64 rng(opt.seed);
  std::vector<detail::AxiomRecorder> rec;
  auto slot = [&](const std::string& name) -> detail::AxiomRecorder& {
    for (auto& r : rec) {
      if (r.result.axiom == name) return r;
    }
    rec.push_back({AxiomResult{name, true, 0, {}, {}, nullptr}, opt.keep_evidence});
    return rec.back();
  };
  const auto& t = [&](const Obj& a, const Obj& b) { return g.tensor(a, b); };
  const auto& tm = [&](const Mor& a, const Mor& b) { return g.tensor_morphisms(a, b); };
  const auto& c = [&](const Mor& a, const Mor& b) { return g.compose(a, b); };
  const auto id = [&](const Obj& a) { return g.identity(a); };
  const Obj unit = g.unit();

  for (int trial = 0; trial < opt.trials; ++trial) {
    const Obj a = g.sample_object(rng), b = g.sample_object(rng), x = g.sample_object(rng), d = g.sample_object(rng);
    const Mor h1 = g.sample_morphism(a, rng);
    const Mor h2 = g.sample_morphism(g.target(h1), rng);
    const Mor h3 = g.sample_morphism(g.target(h2), rng);
    const Mor k1 = g.sample_morphism(b, rng);
    const Mor k2 = g.sample_morphism(g.target(k1), rng);
    const Mor l1 = g.sample_morphism(x, rng);
    const std::string where = "trial " + std::to_string(trial) + " (a=" + g.describe(a) + ", b=" + g.describe(b) +
                              ", c=" + g.describe(x) + ", d=" + g.describe(d) + ")";
    auto at = [&where] { return where; };

    // Category and groupoid laws.
    slot("associativity").record(g.decide(c(c(h1, h2), h3), c(h1, c(h2, h3))), at);
    slot("identity").record(g.decide(c(id(a), h1), h1), at);
    slot("identity").record(g.decide(c(h1, id(g.target(h1))), h1), at);
    slot("inverse").record(g.decide(c(h1, g.inverse(h1)), id(a)), at);
    slot("inverse").record(g.decide(c(g.inverse(h1), h1), id(g.target(h1))), at);

    // Tensor is a functor.
    slot("tensor-identity").record(g.decide(tm(id(a), id(b)), id(t(a, b))), at);
    slot("interchange").record(g.decide(tm(c(h1, h2), c(k1, k2)), c(tm(h1, k1), tm(h2, k2))), at);

    // Naturality of the structure cells.
    slot("naturality-left-unitor")
        .record(g.decide(c(tm(id(unit), h1), g.left_unitor(g.target(h1))), c(g.left_unitor(a), h1)), at);
    slot("naturality-right-unitor")
        .record(g.decide(c(tm(h1, id(unit)), g.right_unitor(g.target(h1))), c(g.right_unitor(a), h1)), at);
    slot("naturality-associator")
        .record(g.decide(c(tm(tm(h1, k1), l1), g.associator(g.target(h1), g.target(k1), g.target(l1))),
                         c(g.associator(a, b, x), tm(h1, tm(k1, l1)))),
                at);

    // Triangle: (a I) b -> a b.
    slot("triangle").record(g.decide(c(g.associator(a, unit, b), tm(id(a), g.left_unitor(b))),
                                     tm(g.right_unitor(a), id(b))),
                            at);
    // Pentagon: ((a b) c) d -> a (b (c d)).
    slot("pentagon").record(
        g.decide(c(g.associator(t(a, b), x, d), g.associator(a, b, t(x, d))),
                 c(c(tm(g.associator(a, b, x), id(d)), g.associator(a, t(b, x), d)), tm(id(a), g.associator(b, x, d)))),
        at);

    if (g.braided() && opt.symmetric) {
      // Hexagon: (a b) c -> b (c a).
      slot("hexagon").record(
          g.decide(c(c(g.associator(a, b, x), g.braiding(a, t(b, x))), g.associator(b, x, a)),
                   c(c(tm(g.braiding(a, b), id(x)), g.associator(b, a, x)), tm(id(b), g.braiding(a, x)))),
          at);
      slot("symmetry").record(g.decide(c(g.braiding(a, b), g.braiding(b, a)), id(t(a, b))), at);
      slot("naturality-braiding")
          .record(g.decide(c(tm(h1, k1), g.braiding(g.target(h1), g.target(k1))), c(g.braiding(a, b), tm(k1, h1))),
                  at);
    }
  }
  // Unit coherence, once.
  slot("unit-coherence").record(g.decide(g.left_unitor(unit), g.right_unitor(unit)), [] { return "unit object"; });

  CoherenceReport report{g.name(), {}};
  for (auto& r : rec) report.axioms.push_back(std::move(r.result));
  return report;
}

// ---------------------------------------------------------------------------
// Monoidal functors

/// A monoidal functor F: C -> D with structure cells
/// mu_{a,b}: F a (x) F b -> F(a (x) b) and epsilon: I -> F I.
template <class C, class D>
struct MonFunctor {
  const C* source = nullptr;
  const D* target = nullptr;
  std::function<typename D::Object(const typename C::Object&)> on_objects;
  std::function<typename D::Morphism(const typename C::Morphism&)> on_morphisms;
  std::function<typename D::Morphism(const typename C::Object&, const typename C::Object&)> mu;
  std::function<typename D::Morphism()> epsilon;
};

/// Samples and checks functoriality, naturality of mu, the associativity
/// hexagon, both unit squares and, if both sides are braided, the symmetry
/// square.
template <class C, class D>
CoherenceReport check_monoidal_functor(const MonFunctor<C, D>& f, const CoherenceOptions& opt,
                                       const std::string& name = "functor") {
  const C& src = *f.source;
  const D& dst = *f.target;
  std::mt19937_64 rng(opt.seed);
  std::vector<detail::AxiomRecorder> rec;
  auto slot = [&](const std::string& axiom) -> detail::AxiomRecorder& {
    for (auto& r : rec) {
      if (r.result.axiom == axiom) return r;
    }
    rec.push_back({AxiomResult{axiom, true, 0, {}, {}, nullptr}, opt.keep_evidence});
    return rec.back();
  };
  const auto F = f.on_objects;
  const auto Fm = f.on_morphisms;
  auto dc = [&](const auto& a, const auto& b) { return dst.compose(a, b); };
  auto dt = [&](const auto& a, const auto& b) { return dst.tensor_morphisms(a, b); };
  auto did = [&](const auto& a) { return dst.identity(a); };

  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto a = src.sample_object(rng), b = src.sample_object(rng), x = src.sample_object(rng);
    const auto h = src.sample_morphism(a, rng);
    const auto h2 = src.sample_morphism(src.target(h), rng);
    const auto k = src.sample_morphism(b, rng);
    const std::string where = "trial " + std::to_string(trial) + " (a=" + src.describe(a) + ", b=" + src.describe(b) +
                              ", c=" + src.describe(x) + ")";
    auto at = [&where] { return where; };

    slot("preserves-identity").record(dst.decide(Fm(src.identity(a)), did(F(a))), at);
    slot("preserves-composition").record(dst.decide(Fm(src.compose(h, h2)), dc(Fm(h), Fm(h2))), at);
    slot("naturality-mu")
        .record(dst.decide(dc(dt(Fm(h), Fm(k)), f.mu(src.target(h), src.target(k))),
                           dc(f.mu(a, b), Fm(src.tensor_morphisms(h, k)))),
                at);
    // (Fa Fb) Fc -> F(a (b c)).
    slot("associativity-mu")
        .record(dst.decide(dc(dc(dt(f.mu(a, b), did(F(x))), f.mu(src.tensor(a, b), x)), Fm(src.associator(a, b, x))),
                           dc(dc(dst.associator(F(a), F(b), F(x)), dt(did(F(a)), f.mu(b, x))),
                              f.mu(a, src.tensor(b, x)))),
                at);
    // I (x) Fa -> Fa.
    slot("left-unit-mu")
        .record(dst.decide(dc(dc(dt(f.epsilon(), did(F(a))), f.mu(src.unit(), a)), Fm(src.left_unitor(a))),
                           dst.left_unitor(F(a))),
                at);
    slot("right-unit-mu")
        .record(dst.decide(dc(dc(dt(did(F(a)), f.epsilon()), f.mu(a, src.unit())), Fm(src.right_unitor(a))),
                           dst.right_unitor(F(a))),
                at);
    if (src.braided() && dst.braided() && opt.symmetric) {
      slot("symmetry-mu")
          .record(dst.decide(dc(f.mu(a, b), Fm(src.braiding(a, b))), dc(dst.braiding(F(a), F(b)), f.mu(b, a))), at);
    }
  }
  CoherenceReport report{name, {}};
  for (auto& r : rec) report.axioms.push_back(std::move(r.result));
  return report;
}

// ---------------------------------------------------------------------------
// Strict transformations and weak inverses

template <class Obj, class Mor>
using MonEndo = MonFunctor<MonoidalGroupoid<Obj, Mor>, MonoidalGroupoid<Obj, Mor>>;

/// An arrow i -> j of a finite indexing category.
struct IndexArrow {
  int source = 0;
  int target = 0;
  std::string name;
};

/// first: i -> j, second: j -> k, composite = second o first.
struct CompositePair {
  int first = 0;
  int second = 0;
  int composite = 0;
};

/// A contravariant diagram of monoidal groupoids: an arrow f: i -> j acts
/// by pullbacks[f]: groupoids[j] -> groupoids[i], and pullbacks compose
/// strictly.
template <class Obj, class Mor>
struct StrictDiagram {
  std::vector<const MonoidalGroupoid<Obj, Mor>*> groupoids;
  std::vector<IndexArrow> arrows;
  std::vector<MonEndo<Obj, Mor>> pullbacks;
  std::vector<CompositePair> composites;
  std::vector<int> identities;
};

/// u: F => G with monoidal components and G(f) u_j = u_i F(f) on the nose.
template <class Obj, class Mor>
struct StrictTransformation {
  std::vector<MonEndo<Obj, Mor>> components;
};

/// Chosen inverse data at one index: a functor v: G(i) -> F(i), a unit
/// eps_x: x -> v u x and a counit eta_y: u v y -> y.
template <class Obj, class Mor>
struct AdjointEquivalenceData {
  std::function<Obj(const Obj&)> v_objects;
  std::function<Mor(const Mor&)> v_morphisms;
  std::function<Mor(const Obj&)> unit;
  std::function<Mor(const Obj&)> counit;
};

class ZigZagError : public std::runtime_error {
 public:
  ZigZagError(int index, std::string object, const std::string& which)
      : std::runtime_error("zig-zag identity " + which + " fails at index " + std::to_string(index) + " on " + object),
        index_(index),
        object_(std::move(object)) {}
  int index() const { return index_; }
  const std::string& object() const { return object_; }

 private:
  int index_;
  std::string object_;
};

/// The weak transformation v: G => F. components[i] is v_i with its
/// monoidal structure nu; cell(f, y): F(f) v_j y -> v_i G(f) y.
template <class Obj, class Mor>
struct WeakInverse {
  std::vector<MonEndo<Obj, Mor>> components;
  std::function<Mor(int, const Obj&)> cell;
  CoherenceReport report;
};

/// v_i = the supplied functor with nu_{a,b}: va vb -> vu(va vb) ->
/// v(uva uvb) -> v(a b) and nu_0: I -> vuI -> vI, and
/// v_f(y) = eps_{F(f) v_j y} ; v_i G(f)(eta_y). Nothing is checked.
template <class Obj, class Mor>
WeakInverse<Obj, Mor> build_weak_inverse(const StrictDiagram<Obj, Mor>& F, const StrictDiagram<Obj, Mor>& G,
                                         const StrictTransformation<Obj, Mor>& u,
                                         const std::vector<AdjointEquivalenceData<Obj, Mor>>& adj) {
  using Group = MonoidalGroupoid<Obj, Mor>;
  struct State {
    StrictDiagram<Obj, Mor> F, G;
    StrictTransformation<Obj, Mor> u;
    std::vector<AdjointEquivalenceData<Obj, Mor>> adj;
  };
  auto st = std::make_shared<const State>(State{F, G, u, adj});
  const std::size_t count = F.groupoids.size();
  if (G.groupoids.size() != count || u.components.size() != count || adj.size() != count ||
      F.arrows.size() != G.arrows.size() || F.pullbacks.size() != F.arrows.size() ||
      G.pullbacks.size() != G.arrows.size()) {
    throw std::invalid_argument("weak_inverse: diagram, transformation and adjoint data sizes differ");
  }

  WeakInverse<Obj, Mor> out;
  for (std::size_t i = 0; i < count; ++i) {
    MonEndo<Obj, Mor> v;
    v.source = G.groupoids[i];
    v.target = F.groupoids[i];
    v.on_objects = adj[i].v_objects;
    v.on_morphisms = adj[i].v_morphisms;
    // nu_{a,b}: va vb -> vu(va vb) -> v(uva uvb) -> v(a b).
    v.mu = [st, i](const Obj& a, const Obj& b) {
      const Group& Fi = *st->F.groupoids[i];
      const Group& Gi = *st->G.groupoids[i];
      const auto& ui = st->u.components[i];
      const auto& d = st->adj[i];
      const Obj va = d.v_objects(a), vb = d.v_objects(b);
      const Mor e = d.unit(Fi.tensor(va, vb));
      const Mor m = d.v_morphisms(Gi.inverse(ui.mu(va, vb)));
      const Mor c = d.v_morphisms(Gi.tensor_morphisms(d.counit(a), d.counit(b)));
      return Fi.compose(Fi.compose(e, m), c);
    };
    // nu_0: I -> v u I -> v I.
    v.epsilon = [st, i]() {
      const Group& Fi = *st->F.groupoids[i];
      const Group& Gi = *st->G.groupoids[i];
      const auto& d = st->adj[i];
      return Fi.compose(d.unit(Fi.unit()), d.v_morphisms(Gi.inverse(st->u.components[i].epsilon())));
    };
    out.components.push_back(std::move(v));
  }
  // v_f at y: F(f) v_j y -> v_i u_i F(f) v_j y = v_i G(f) u_j v_j y -> v_i G(f) y.
  out.cell = [st](int f, const Obj& y) {
    const auto& arrow = st->F.arrows.at(static_cast<std::size_t>(f));
    const auto i = static_cast<std::size_t>(arrow.source), j = static_cast<std::size_t>(arrow.target);
    const Group& Fi = *st->F.groupoids[i];
    const auto& Ff = st->F.pullbacks[static_cast<std::size_t>(f)];
    const auto& Gf = st->G.pullbacks[static_cast<std::size_t>(f)];
    const Mor e = st->adj[i].unit(Ff.on_objects(st->adj[j].v_objects(y)));
    const Mor c = st->adj[i].v_morphisms(Gf.on_morphisms(st->adj[j].counit(y)));
    return Fi.compose(e, c);
  };

  return out;
}

/// Builds v from u and the adjoint data, then checks the list below on
/// sampled data (all through the groupoids' class equality):
///   zigzag-u, zigzag-v, naturality-unit, naturality-counit,
///   v-* (check_monoidal_functor on every v_i), unit-monoidal,
///   counit-monoidal, middle-square, cell-naturality, cell-monoidal,
///   cell-unit, modification-unit, modification-counit,
///   cell-composition, cell-identity, strict-diagram.
/// Throws ZigZagError, naming the object, if the supplied data fails a
/// zig-zag identity.
template <class Obj, class Mor>
WeakInverse<Obj, Mor> weak_inverse(const StrictDiagram<Obj, Mor>& F, const StrictDiagram<Obj, Mor>& G,
                                   const StrictTransformation<Obj, Mor>& u,
                                   const std::vector<AdjointEquivalenceData<Obj, Mor>>& adj,
                                   const CoherenceOptions& opt) {
  const std::size_t count = F.groupoids.size();
  using Group = MonoidalGroupoid<Obj, Mor>;
  if (G.groupoids.size() != count || u.components.size() != count || adj.size() != count) {
    throw std::invalid_argument("weak_inverse: diagram, transformation and adjoint data sizes differ");
  }
  // Zig-zag identities of the supplied data, before anything is built.
  {
    std::mt19937_64 rng(opt.seed ^ 0x5a5aULL);
    for (std::size_t i = 0; i < count; ++i) {
      const Group& Fi = *F.groupoids[i];
      const Group& Gi = *G.groupoids[i];
      const auto& ui = u.components[i];
      const auto& a = adj[i];
      for (int t = 0; t < opt.trials; ++t) {
        const Obj x = Fi.sample_object(rng);
        const Obj ux = ui.on_objects(x);
        if (!Gi.equal(Gi.compose(ui.on_morphisms(a.unit(x)), a.counit(ux)), Gi.identity(ux))) {
          throw ZigZagError(static_cast<int>(i), Fi.describe(x), "u eps ; eta u = 1");
        }
        const Obj y = Gi.sample_object(rng);
        const Obj vy = a.v_objects(y);
        if (!Fi.equal(Fi.compose(a.unit(vy), a.v_morphisms(a.counit(y))), Fi.identity(vy))) {
          throw ZigZagError(static_cast<int>(i), Gi.describe(y), "eps v ; v eta = 1");
        }
      }
    }
  }

  WeakInverse<Obj, Mor> out = build_weak_inverse(F, G, u, adj);
  // Post-hoc verification.
  std::vector<detail::AxiomRecorder> rec;
  auto slot = [&](const std::string& axiom) -> detail::AxiomRecorder& {
    for (auto& r : rec) {
      if (r.result.axiom == axiom) return r;
    }
    rec.push_back({AxiomResult{axiom, true, 0, {}, {}, nullptr}, opt.keep_evidence});
    return rec.back();
  };
  auto literal = [](bool ok) {
    Decision d;
    d.equal = ok;
    d.evidence = {{"kind", "literal"}};
    return d;
  };
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Group& Fi = *F.groupoids[i];
    const Group& Gi = *G.groupoids[i];
    const auto& ui = u.components[i];
    const auto& vi = out.components[i];
    const auto& d = adj[i];
    auto fc = [&](const Mor& a, const Mor& b) { return Fi.compose(a, b); };
    auto gc = [&](const Mor& a, const Mor& b) { return Gi.compose(a, b); };

    CoherenceOptions vopt = opt;
    vopt.seed = opt.seed + 7919 * (i + 1);
    for (auto& ax : check_monoidal_functor(vi, vopt, "v").axioms) {
      auto& s = slot("v-" + ax.axiom);
      s.result.trials += ax.trials;
      if (!ax.pass && s.result.pass) {
        s.result.pass = false;
        s.result.counterexample = "index " + std::to_string(i) + ": " + ax.counterexample;
      }
    }
    for (int t = 0; t < opt.trials; ++t) {
      const Obj x = Fi.sample_object(rng), x2 = Fi.sample_object(rng);
      const Mor h = Fi.sample_morphism(x, rng);
      const Obj y = Gi.sample_object(rng), y2 = Gi.sample_object(rng);
      const Mor k = Gi.sample_morphism(y, rng);
      const std::string where = "index " + std::to_string(i) + " trial " + std::to_string(t) + " (x=" +
                                Fi.describe(x) + ", y=" + Gi.describe(y) + ")";
      auto at = [&where] { return where; };
      const Obj ux = ui.on_objects(x), vy = d.v_objects(y);
      slot("zigzag-u").record(Gi.decide(gc(ui.on_morphisms(d.unit(x)), d.counit(ux)), Gi.identity(ux)), at);
      slot("zigzag-v").record(Fi.decide(fc(d.unit(vy), d.v_morphisms(d.counit(y))), Fi.identity(vy)), at);
      slot("naturality-unit")
          .record(Fi.decide(fc(h, d.unit(Fi.target(h))), fc(d.unit(x), d.v_morphisms(ui.on_morphisms(h)))), at);
      slot("naturality-counit")
          .record(Gi.decide(gc(ui.on_morphisms(d.v_morphisms(k)), d.counit(Gi.target(k))), gc(d.counit(y), k)), at);
      // eps is monoidal: (eps x eps) ; nu_{ux,ux2} ; v(mu_u) = eps_{x x2}.
      slot("unit-monoidal")
          .record(Fi.decide(fc(fc(Fi.tensor_morphisms(d.unit(x), d.unit(x2)), vi.mu(ux, ui.on_objects(x2))),
                               d.v_morphisms(ui.mu(x, x2))),
                            d.unit(Fi.tensor(x, x2))),
                  at);
      // eta is monoidal: mu_u(vy, vy2) ; u(nu) ; eta = eta x eta.
      slot("counit-monoidal")
          .record(Gi.decide(gc(gc(ui.mu(vy, d.v_objects(y2)), ui.on_morphisms(vi.mu(y, y2))), d.counit(Gi.tensor(y, y2))),
                            Gi.tensor_morphisms(d.counit(y), d.counit(y2))),
                  at);
    }
    auto at_unit = [i] { return "index " + std::to_string(i) + " unit object"; };
    slot("unit-monoidal").record(Fi.decide(d.unit(Fi.unit()), fc(vi.epsilon(), d.v_morphisms(ui.epsilon()))), at_unit);
    slot("counit-monoidal")
        .record(Gi.decide(gc(gc(ui.epsilon(), ui.on_morphisms(vi.epsilon())), d.counit(Gi.unit())), Gi.identity(Gi.unit())),
                at_unit);
  }

  for (std::size_t f = 0; f < F.arrows.size(); ++f) {
    const auto i = static_cast<std::size_t>(F.arrows[f].source), j = static_cast<std::size_t>(F.arrows[f].target);
    const Group& Fi = *F.groupoids[i];
    const Group& Fj = *F.groupoids[j];
    const Group& Gj = *G.groupoids[j];
    const auto& Ff = F.pullbacks[f];
    const auto& Gf = G.pullbacks[f];
    const auto& vi = out.components[i];
    const auto& vj = out.components[j];
    auto fc = [&](const Mor& a, const Mor& b) { return Fi.compose(a, b); };
    const auto& Gi = *G.groupoids[i];
    auto cell = [&](const Obj& y) { return out.cell(static_cast<int>(f), y); };
    for (int t = 0; t < opt.trials; ++t) {
      const Obj x = Fj.sample_object(rng);
      const Mor h = Fj.sample_morphism(x, rng);
      const Obj y = Gj.sample_object(rng), y2 = Gj.sample_object(rng);
      const Mor k = Gj.sample_morphism(y, rng);
      const std::string where = "arrow " + F.arrows[f].name + " trial " + std::to_string(t) + " (x=" +
                                Fj.describe(x) + ", y=" + Gj.describe(y) + ")";
      auto at = [&where] { return where; };

      const bool square_obj = Gi.same_object(Gf.on_objects(u.components[j].on_objects(x)),
                                             u.components[i].on_objects(Ff.on_objects(x)));
      slot("middle-square").record(literal(square_obj), at);
      slot("middle-square")
          .record(Gi.decide(Gf.on_morphisms(u.components[j].on_morphisms(h)),
                            u.components[i].on_morphisms(Ff.on_morphisms(h))),
                  at);
      slot("cell-naturality")
          .record(Fi.decide(fc(Ff.on_morphisms(vj.on_morphisms(k)), cell(Gj.target(k))),
                            fc(cell(y), vi.on_morphisms(Gf.on_morphisms(k)))),
                  at);
      // F(f) v_j (monoidal by composition) -> v_i G(f) (likewise).
      const Obj vy = vj.on_objects(y), vy2 = vj.on_objects(y2);
      const Mor left = fc(fc(Ff.mu(vy, vy2), Ff.on_morphisms(vj.mu(y, y2))), cell(Gj.tensor(y, y2)));
      const Mor right = fc(fc(Fi.tensor_morphisms(cell(y), cell(y2)), vi.mu(Gf.on_objects(y), Gf.on_objects(y2))),
                           vi.on_morphisms(Gf.mu(y, y2)));
      slot("cell-monoidal").record(Fi.decide(left, right), at);
      slot("modification-counit")
          .record(Gi.decide(Gi.compose(u.components[i].on_morphisms(cell(y)), adj[i].counit(Gf.on_objects(y))),
                            Gf.on_morphisms(adj[j].counit(y))),
                  at);
      slot("modification-unit")
          .record(Fi.decide(fc(Ff.on_morphisms(adj[j].unit(x)), cell(u.components[j].on_objects(x))),
                            adj[i].unit(Ff.on_objects(x))),
                  at);
    }
    const auto where_unit = "arrow " + F.arrows[f].name + " unit object";
    slot("cell-unit").record(Fi.decide(fc(fc(Ff.epsilon(), Ff.on_morphisms(vj.epsilon())), cell(Gj.unit())),
                                       fc(vi.epsilon(), vi.on_morphisms(Gf.epsilon()))),
                             [&where_unit] { return where_unit; });
  }

  for (const auto& cp : F.composites) {
    const auto f = static_cast<std::size_t>(cp.first), g = static_cast<std::size_t>(cp.second);
    const auto gf = static_cast<std::size_t>(cp.composite);
    const auto i = static_cast<std::size_t>(F.arrows[f].source), k = static_cast<std::size_t>(F.arrows[g].target);
    const Group& Fi = *F.groupoids[i];
    const Group& Fk = *F.groupoids[k];
    const Group& Gk = *G.groupoids[k];
    for (int t = 0; t < opt.trials; ++t) {
      const Obj y = Gk.sample_object(rng);
      const Obj x = Fk.sample_object(rng);
      const std::string where = "composite " + F.arrows[gf].name + " trial " + std::to_string(t) + " (y=" +
                                Gk.describe(y) + ")";
      auto at = [&where] { return where; };
      slot("strict-diagram")
          .record(literal(Fi.same_object(F.pullbacks[gf].on_objects(x),
                                         F.pullbacks[f].on_objects(F.pullbacks[g].on_objects(x))) &&
                          G.groupoids[i]->same_object(G.pullbacks[gf].on_objects(y),
                                                      G.pullbacks[f].on_objects(G.pullbacks[g].on_objects(y)))),
                  at);
      slot("cell-composition")
          .record(Fi.decide(out.cell(static_cast<int>(gf), y),
                            Fi.compose(F.pullbacks[f].on_morphisms(out.cell(static_cast<int>(g), y)),
                                       out.cell(static_cast<int>(f), G.pullbacks[g].on_objects(y)))),
                  at);
    }
  }
  for (int f : F.identities) {
    const auto j = static_cast<std::size_t>(F.arrows.at(static_cast<std::size_t>(f)).target);
    const Group& Gj = *G.groupoids[j];
    const Group& Fj = *F.groupoids[j];
    for (int t = 0; t < opt.trials; ++t) {
      const Obj y = Gj.sample_object(rng);
      const std::string where = "identity " + F.arrows[static_cast<std::size_t>(f)].name + " (y=" + Gj.describe(y) + ")";
      slot("cell-identity")
          .record(Fj.decide(out.cell(f, y), Fj.identity(out.components[j].on_objects(y))), [&where] { return where; });
    }
  }
  out.report.instance = "weak inverse";
  for (auto& r : rec) out.report.axioms.push_back(std::move(r.result));
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic skeletal instances

/// Skeletal monoidal groupoid with objects Z/m, automorphism groups Z/k,
/// associator omega(x, y, z) and braiding c(x, y), both in Z/k.
class SkeletalGroupoid : public MonoidalGroupoid<int, std::pair<int, int>> {
 public:
  using Table3 = std::function<int(int, int, int)>;
  using Table2 = std::function<int(int, int)>;

  SkeletalGroupoid(std::string name, int objects, int automorphisms, Table3 omega, Table2 braid = {});

  /// Z/2 objects and Z/2 automorphisms with omega(x, y, z) = xyz, not braided.
  static SkeletalGroupoid cubic_cocycle();
  /// Z/2 objects with a non-cocycle associator omega = xy(1 - z).
  static SkeletalGroupoid broken_cocycle();
  /// Z/2 objects, Z/2 automorphisms, trivial omega, c(x, y) = xy: symmetric.
  static SkeletalGroupoid symmetric_sign();
  /// Z/2 objects, Z/4 automorphisms, omega = 2xyz, c = xy: braided, not symmetric.
  static SkeletalGroupoid semion();

  /// Exhaustive delta omega = 0 test.
  bool omega_is_cocycle() const;

  std::string name() const override { return name_; }
  int source(const std::pair<int, int>& m) const override { return m.first; }
  int target(const std::pair<int, int>& m) const override { return m.first; }
  bool same_object(const int& a, const int& b) const override { return a == b; }
  std::pair<int, int> identity(const int& a) const override { return {a, 0}; }
  std::pair<int, int> compose(const std::pair<int, int>& a, const std::pair<int, int>& b) const override;
  std::pair<int, int> inverse(const std::pair<int, int>& m) const override { return {m.first, mod(-m.second, k_)}; }
  Decision decide(const std::pair<int, int>& a, const std::pair<int, int>& b) const override;
  int unit() const override { return 0; }
  int tensor(const int& a, const int& b) const override { return mod(a + b, m_); }
  std::pair<int, int> tensor_morphisms(const std::pair<int, int>& a, const std::pair<int, int>& b) const override {
    return {tensor(a.first, b.first), mod(a.second + b.second, k_)};
  }
  std::pair<int, int> left_unitor(const int& a) const override { return {a, 0}; }
  std::pair<int, int> right_unitor(const int& a) const override { return {a, 0}; }
  std::pair<int, int> associator(const int& a, const int& b, const int& c) const override {
    return {tensor(tensor(a, b), c), mod(omega_(a, b, c), k_)};
  }
  bool braided() const override { return static_cast<bool>(braid_); }
  std::pair<int, int> braiding(const int& a, const int& b) const override;
  int sample_object(std::mt19937_64& rng) const override { return static_cast<int>(rng() % static_cast<unsigned>(m_)); }
  std::pair<int, int> sample_morphism(const int& from, std::mt19937_64& rng) const override {
    return {from, static_cast<int>(rng() % static_cast<unsigned>(k_))};
  }
  std::string describe(const int& a) const override { return std::to_string(a); }

 private:
  static int mod(int v, int k) { return ((v % k) + k) % k; }
  std::string name_;
  int m_, k_;
  Table3 omega_;
  Table2 braid_;
};

}  // namespace simdiff
