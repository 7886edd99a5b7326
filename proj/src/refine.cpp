#include "simdiff/refine.hpp"

#include "simdiff/io.hpp"

namespace simdiff {

namespace {

std::vector<Integer> random_coords(const IntegerCohomology& h, std::mt19937_64& rng) {
  std::vector<Integer> k;
  for (std::size_t i = 0; i < h.summands(); ++i) {
    const Integer ord = h.orders()[i];
    const Integer z = static_cast<long>(rng() % 5) - 2;
    k.push_back(ord == 0 ? z : Integer(mod_floor(z, ord)));
  }
  return k;
}

/// A sample with a spread of integral classes, not only those reached by
/// random cocycles.
HatClass sample_spread(const HatTheory& t, std::mt19937_64& rng) {
  const HatClass x = t.sample(rng);
  return t.add(x, t.lift_class(random_coords(t.top_cohomology(), rng)));
}

Integer coord(const std::vector<Integer>& v, std::size_t i) { return i < v.size() ? v[i] : Integer(0); }

}  // namespace

// ---------------------------------------------------------------------------
// TildeGroupoid

std::string TildeGroupoid::name() const { return "tilde(" + t_->model().name() + ", " + t_->complex()->name() + ")"; }

std::optional<TildeMorphism> TildeGroupoid::hom(const HatClass& x, const HatClass& y) const {
  const auto alpha = t_->preimage_a(t_->sub(y, x));
  if (!alpha) return std::nullopt;
  return TildeMorphism{x, y, *alpha};
}

bool TildeGroupoid::is_morphism(const TildeMorphism& m) const {
  return t_->equal(t_->add(m.source, t_->a(m.eta)), m.target);
}

bool TildeGroupoid::exact(const Cochain& eta) const {
  if (eta.degree() == 0) return eta.is_zero();
  return solve_coboundary(eta, Coefficients::rationals()).solvable;
}

TildeMorphism TildeGroupoid::identity(const HatClass& a) const { return {a, a, Cochain(t_->forms_complex(), t_->degree() - 1)}; }

TildeMorphism TildeGroupoid::compose(const TildeMorphism& first, const TildeMorphism& second) const {
  if (!same_object(first.target, second.source)) throw Error("tilde: composing non-composable morphisms");
  return {first.source, second.target, first.eta + second.eta};
}

TildeMorphism TildeGroupoid::inverse(const TildeMorphism& m) const { return {m.target, m.source, -m.eta}; }

Decision TildeGroupoid::decide(const TildeMorphism& a, const TildeMorphism& b) const {
  const Cochain d = a.eta - b.eta;
  if (d.degree() == 0) return {d.is_zero(), d.is_zero() ? nlohmann::json() : nlohmann::json{{"difference", cochain_to_json(d)}}};
  const auto sol = solve_coboundary(d, Coefficients::rationals());
  if (sol.solvable) return {true, {{"primitive", cochain_to_json(sol.eta)}}};
  return {false, {{"difference", cochain_to_json(d)}, {"functional", rationals_to_json(sol.certificate)}}};
}

TildeMorphism TildeGroupoid::tensor_morphisms(const TildeMorphism& a, const TildeMorphism& b) const {
  return {tensor(a.source, b.source), tensor(a.target, b.target), a.eta + b.eta};
}

// Addition is a strict group law on classes, so every structure cell is an
// identity.
TildeMorphism TildeGroupoid::structural(const HatClass& from, const HatClass& to) const {
  return {from, to, Cochain(t_->forms_complex(), t_->degree() - 1)};
}

TildeMorphism TildeGroupoid::left_unitor(const HatClass& a) const { return structural(tensor(unit(), a), a); }
TildeMorphism TildeGroupoid::right_unitor(const HatClass& a) const { return structural(tensor(a, unit()), a); }
TildeMorphism TildeGroupoid::associator(const HatClass& a, const HatClass& b, const HatClass& c) const {
  return structural(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));
}
TildeMorphism TildeGroupoid::braiding(const HatClass& a, const HatClass& b) const {
  return structural(tensor(a, b), tensor(b, a));
}

HatClass TildeGroupoid::sample_object(std::mt19937_64& rng) const { return sample_spread(*t_, rng); }

TildeMorphism TildeGroupoid::sample_morphism(const HatClass& from, std::mt19937_64& rng) const {
  Cochain eta = random_cochain(t_->forms_complex(), t_->degree() - 1, rng, -2, 2);
  eta *= Rational(1, 1 + static_cast<long>(rng() % 3));
  return {from, t_->add(from, t_->a(eta)), eta};
}

CheckList check_tilde(const TildeGroupoid& g, int trials, std::uint64_t seed) {
  const HatTheory& t = g.theory();
  CheckList out = from_report(check_coherence(g, {trials, seed, false, true}), "tilde-");
  std::mt19937_64 rng(seed ^ 0x7ab1e);
  const HatClass zero = t.zero();
  // End(0) is exactly the lattice im ch.
  for (const auto& k : t.kernel_generators()) {
    const bool endo = g.is_morphism({zero, zero, k});
    const bool image = t.lattice_solve(t.image_generators(), k).solvable;
    out.record("end-unit-is-im-ch", "End(0) = ker a = im ch", endo && image, {{"eta", cochain_to_json(k)}});
  }
  for (const auto& w : t.image_generators()) {
    out.record("end-unit-is-im-ch", "End(0) = ker a = im ch", g.is_morphism({zero, zero, w}), {{"eta", cochain_to_json(w)}});
  }
  if (t.kernel_generators().empty()) out.record("end-unit-is-im-ch", "End(0) = ker a = im ch", true, {{"lattice", "trivial"}});

  for (int i = 0; i < trials; ++i) {
    const HatClass x = g.sample_object(rng);
    const HatClass y = g.sample_object(rng);
    const TildeMorphism m = g.sample_morphism(x, rng);
    const TildeMorphism m2 = g.sample_morphism(m.target, rng);
    const bool valid = g.is_morphism(m) && g.is_morphism(g.compose(m, m2)) && g.is_morphism(g.inverse(m)) &&
                       g.is_morphism(g.tensor_morphisms(m, m2));
    out.record("morphisms-valid", "a(eta) = y - x for sampled, composed, inverted and tensored morphisms", valid, nullptr);

    const auto h = g.hom(x, y);
    const bool same_i = t.I(x) == t.I(y);
    const bool ok = h.has_value() == same_i && (!h || g.is_morphism(*h));
    out.record("hom-iff-I", "Hom(x, y) is nonempty iff I(x) = I(y)", ok, {{"I(x)", cochain_to_json(t.groupoid().cocycle_of(x.c))}});
    const auto h2 = g.hom(x, m.target);
    out.record("hom-iff-I", "Hom(x, y) is nonempty iff I(x) = I(y)", h2.has_value() && g.is_morphism(*h2), nullptr);

    // Aut(x) = Aut(0): membership is decided by the same lattice.
    const Cochain probe = (i % 2 == 0 && !t.kernel_generators().empty())
                              ? t.kernel_generators()[static_cast<std::size_t>(i) % t.kernel_generators().size()]
                              : m.eta;
    out.record("aut-independent", "eta in Aut(x) iff eta in Aut(0)",
               g.is_morphism({x, x, probe}) == g.is_morphism({zero, zero, probe}), nullptr);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maps between models

RefinementMap identity_map(const HatTheory& a, const HatTheory& b) {
  RefinementMap phi;
  phi.name = "id";
  phi.source = &a;
  phi.target = &b;
  phi.on_classes = [](const HatClass& x) { return x; };
  phi.on_forms = [](const Cochain& w) { return w; };
  phi.on_curvature = [](const Cochain& w) { return w; };
  return phi;
}

RefinementMap alt_iota_map(const HatTheory& strict, const HatTheory& alt) {
  const auto* model = dynamic_cast<const AltIotaModel*>(&alt.model());
  if (model == nullptr) throw Error("alt_iota_map: target is not an alt-iota model");
  RefinementMap phi = identity_map(strict, alt);
  phi.name = "beta";
  const ComplexPtr m = strict.complex();
  const ChernModel* src = &strict.model();
  phi.on_classes = [model, src, m](const HatClass& x) {
    return HatClass{x.c, x.omega - model->beta(m, src->ch_object(m, x.c))};
  };
  return phi;
}

RefinementMap subdivision_map(const HatTheory& strict, const HatTheory& sub) {
  const auto* model = dynamic_cast<const SubdividedModel*>(&sub.model());
  if (model == nullptr) throw Error("subdivision_map: target is not a subdivided model");
  RefinementMap phi;
  phi.name = "lambda";
  phi.source = &strict;
  phi.target = &sub;
  const ComplexPtr m = strict.complex();
  const ChernModel* src = &strict.model();
  const SubdivisionComparison* cmp = &model->comparison();
  const Subdivision* sd = &cmp->subdivision(m);
  phi.on_classes = [cmp, sd, src, m](const HatClass& x) {
    return HatClass{x.c, sd->refine(x.omega) - cmp->twist(m, src->ch_object(m, x.c))};
  };
  phi.on_forms = [sd](const Cochain& w) { return sd->refine(w); };
  phi.on_curvature = phi.on_forms;
  return phi;
}

RefinementMap canonical_map(const HatTheory& a, const HatTheory& b) {
  if (!same_complex(a.complex(), b.complex())) throw Error("canonical_map: models over different complexes");
  if (&a.model() == &b.model()) return identity_map(a, b);
  if (dynamic_cast<const StrictModel*>(&a.model()) != nullptr) {
    if (dynamic_cast<const AltIotaModel*>(&b.model()) != nullptr) return alt_iota_map(a, b);
    if (dynamic_cast<const SubdividedModel*>(&b.model()) != nullptr) return subdivision_map(a, b);
    if (dynamic_cast<const StrictModel*>(&b.model()) != nullptr) return identity_map(a, b);
  }
  throw Error("canonical_map: no comparison from " + a.model().name() + " to " + b.model().name());
}

RefinementMap quadratic_shift(const RefinementMap& phi, const Cochain& rho) {
  RefinementMap out = phi;
  out.name = phi.name + "+q";
  const HatTheory* src = phi.source;
  const HatTheory* dst = phi.target;
  const auto base = phi.on_classes;
  out.on_classes = [=](const HatClass& x) {
    const Integer m = coord(src->I(x), 0);
    return dst->add(base(x), dst->a(Rational(m * m) * rho));
  };
  return out;
}

std::string to_string(BDefect d) {
  switch (d) {
    case BDefect::none:
      return "none";
    case BDefect::cocycle:
      return "cocycle";
    case BDefect::symmetry:
      return "symmetry";
    case BDefect::unit:
      return "unit";
  }
  return "none";
}

BDefect parse_defect(const std::string& s) {
  for (BDefect d : {BDefect::none, BDefect::cocycle, BDefect::symmetry, BDefect::unit}) {
    if (s == to_string(d)) return d;
  }
  throw Error("unknown B defect '" + s + "' (expected none, cocycle, symmetry or unit)");
}

Cochain defect_form(const HatTheory& t) {
  const ComplexPtr& y = t.forms_complex();
  const int d = t.degree() - 1;
  for (std::size_t i = 0; i < y->count(d); ++i) {
    Cochain e(y, d);
    e.at(i) = 1;
    if (!coboundary(e).is_zero()) return e;
  }
  throw Error("defect_form: every (n-1)-form on " + y->name() + " is closed");
}

// ---------------------------------------------------------------------------
// B

BObstruction::BObstruction(RefinementMap phi, BDefect defect, Cochain rho)
    : phi_(std::move(phi)), defect_(defect), rho_(std::move(rho)) {
  if (defect_ != BDefect::none && rho_.size() == 0) rho_ = defect_form(*phi_.target);
}

Cochain BObstruction::operator()(const HatClass& u, const HatClass& v) const {
  const HatTheory& s = *phi_.source;
  const HatTheory& t = *phi_.target;
  const HatClass d = t.sub(phi_.on_classes(s.add(u, v)), t.add(phi_.on_classes(u), phi_.on_classes(v)));
  auto alpha = t.preimage_a(d);
  if (!alpha) throw Error("B: Phi(u + v) - Phi(u) - Phi(v) has nonzero I; Phi is not compatible with I");
  if (defect_ == BDefect::none) return *alpha;
  const auto iu = s.I(u), iv = s.I(v);
  Rational k = 0;
  switch (defect_) {
    case BDefect::symmetry:
      k = Rational(coord(iu, 0) * coord(iv, 1));
      break;
    case BDefect::unit:
      k = 1;
      break;
    case BDefect::cocycle: {
      const Integer mu = coord(iu, 0), mv = coord(iv, 0);
      k = Rational(mu * mu * mv * mv);
      break;
    }
    case BDefect::none:
      break;
  }
  return *alpha + k * rho_;
}

bool BObstruction::trivial(const Cochain& w) const {
  const HatTheory& t = *phi_.target;
  return t.equal(t.a(w), t.zero());
}

CheckList derive_B(const BObstruction& b, int trials, std::uint64_t seed) {
  const RefinementMap& phi = b.map();
  const HatTheory& s = *phi.source;
  const HatTheory& t = *phi.target;
  CheckList out;
  std::mt19937_64 rng(seed);
  const HatClass zero = s.zero();
  for (int i = 0; i < trials; ++i) {
    const HatClass u = sample_spread(s, rng), v = sample_spread(s, rng), w = sample_spread(s, rng);
    const nlohmann::json where{{"trial", i}};
    const Cochain cocycle = b(u, s.add(v, w)) + b(v, w) - b(u, v) - b(s.add(u, v), w);
    out.record("B-cocycle", "B(u, v + w) + B(v, w) = B(u, v) + B(u + v, w) in Omega/im ch", b.trivial(cocycle),
               {{"trial", i}, {"residual", cochain_to_json(cocycle)}});
    const Cochain sym = b(u, v) - b(v, u);
    out.record("B-symmetry", "B(u, v) = B(v, u) in Omega/im ch", b.trivial(sym),
               {{"trial", i}, {"residual", cochain_to_json(sym)}});
    const Cochain l = b(u, zero), r = b(zero, u);
    out.record("B-unit", "B(u, 0) = 0 = B(0, u) in Omega/im ch", b.trivial(l) && b.trivial(r),
               {{"trial", i}, {"B(u,0)", cochain_to_json(l)}, {"B(0,u)", cochain_to_json(r)}});
    Cochain beta = random_cochain(s.forms_complex(), s.degree() - 1, rng, -2, 2);
    beta *= Rational(1, 1 + static_cast<long>(rng() % 3));
    const bool nat = t.equal(phi.on_classes(s.add(v, s.a(beta))), t.add(phi.on_classes(v), t.a(phi.on_forms(beta))));
    out.record("translation-naturality", "Phi(v + a(beta)) = Phi(v) + a(beta)", nat,
               {{"trial", i}, {"beta", cochain_to_json(beta)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence

CheckList check_equivalence(const BObstruction& b, int trials, std::uint64_t seed) {
  const RefinementMap& phi = b.map();
  const HatTheory& s = *phi.source;
  const HatTheory& t = *phi.target;
  CheckList out;
  std::mt19937_64 rng(seed);

  for (int i = 0; i < trials; ++i) {
    const HatClass x = sample_spread(s, rng);
    const HatClass fx = phi.on_classes(x);
    out.record("compat-I", "I(Phi x) = I(x)", t.I(fx) == s.I(x), {{"trial", i}});
    const Cochain rs = phi.on_curvature(s.R(x)), rt = t.R(fx);
    out.record("compat-R", "R(Phi x) = R(x)", rs == rt, {{"trial", i}, {"difference", cochain_to_json(rt - rs)}});
    Cochain w = random_cochain(s.forms_complex(), s.degree() - 1, rng, -2, 2);
    out.record("compat-a", "Phi(a(w)) = a(w)", t.equal(phi.on_classes(s.a(w)), t.a(phi.on_forms(w))),
               {{"w", cochain_to_json(w)}});
    const MapMorphism h = s.groupoid().sample_morphism(x.c, rng);
    const HatClass moved{h.target, x.omega - s.model().ch_morphism(s.complex(), h)};
    out.record("well-defined", "x ~ x' implies Phi x ~ Phi x'", t.equal(fx, phi.on_classes(moved)), {{"trial", i}});

    // Morphisms go to morphisms.
    const TildeGroupoid ta(s), tb(t);
    const TildeMorphism m = ta.sample_morphism(x, rng);
    out.record("functor-on-morphisms", "eta: x -> y gives Phi eta: Phi x -> Phi y",
               tb.is_morphism({fx, phi.on_classes(m.target), phi.on_forms(m.eta)}), {{"trial", i}});

    // Essentially surjective: y ~ Phi[c, 0] + a(alpha).
    const HatClass y = sample_spread(t, rng);
    const HatClass x0{y.c, Cochain(s.forms_complex(), s.degree() - 1)};
    const auto e = tb.hom(phi.on_classes(x0), y);
    const bool ess = e.has_value() && tb.is_morphism(*e);
    out.record("essentially-surjective", "every y is isomorphic to Phi[c_y, 0]", ess,
               e ? nlohmann::json{{"alpha", cochain_to_json(e->eta)}} : nlohmann::json{{"reason", "I differs"}});
  }

  // Fully faithful: Hom sets are torsors over the lattices ker a, so the
  // claim is that on_forms maps one lattice onto the other with equal rank.
  std::vector<Cochain> image;
  for (const auto& g : s.kernel_generators()) image.push_back(phi.on_forms(g));
  bool into = true, onto = true;
  for (const auto& g : image) into = into && t.lattice_solve(t.kernel_generators(), g).solvable;
  for (const auto& g : t.kernel_generators()) onto = onto && t.lattice_solve(image, g).solvable;
  const std::size_t ra = s.lattice_rank(s.kernel_generators()), rb = t.lattice_rank(image);
  out.record("faithful", "Phi is injective on Hom sets (rank of the lattice is preserved)", ra == rb,
             {{"rank_source", ra}, {"rank_image", rb}});
  out.record("full", "Phi is surjective on Hom sets (lattice maps onto lattice)", into && onto,
             {{"into", into}, {"onto", onto}});

  // Monoidal structure with mu = B.
  const TildeGroupoid ta(s), tb(t);
  MonFunctor<TildeGroupoid, TildeGroupoid> f;
  f.source = &ta;
  f.target = &tb;
  f.on_objects = phi.on_classes;
  f.on_morphisms = [&](const TildeMorphism& m) {
    return TildeMorphism{phi.on_classes(m.source), phi.on_classes(m.target), phi.on_forms(m.eta)};
  };
  f.mu = [&](const HatClass& u, const HatClass& v) {
    return TildeMorphism{t.add(phi.on_classes(u), phi.on_classes(v)), phi.on_classes(s.add(u, v)), b(u, v)};
  };
  f.epsilon = [&] {
    const auto e = tb.hom(t.zero(), phi.on_classes(s.zero()));
    if (!e) throw Error("check_equivalence: Phi(0) is not in the identity component");
    return *e;
  };
  CheckList mon = from_report(check_monoidal_functor(f, {trials, seed ^ 0x3c, false, true}, "Phi"), "monoidal-");
  for (auto& c : mon.checks) out.checks.push_back(std::move(c));
  return out;
}

CheckList check_refinement_naturality(const ChernModel& a, const ChernModel& b, const MapDiagram& d, int trials,
                                      std::uint64_t seed) {
  struct Site {
    std::unique_ptr<HatTheory> ta, tb;
    std::unique_ptr<BObstruction> bo;
  };
  std::vector<Site> sites;
  for (const auto& x : d.objects) {
    Site site;
    site.ta = std::make_unique<HatTheory>(a, x);
    site.tb = std::make_unique<HatTheory>(b, x);
    site.bo = std::make_unique<BObstruction>(canonical_map(*site.ta, *site.tb));
    sites.push_back(std::move(site));
  }
  auto at = [&](const ComplexPtr& x) -> const Site& {
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
      if (d.objects[i] == x) return sites[i];
    }
    throw Error("refinement naturality: complex not in the diagram");
  };
  CheckList out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    for (std::size_t k = 0; k < d.maps.size(); ++k) {
      const SimplicialMap& f = d.maps[k];
      const Site& sm = at(f.source());
      const Site& sn = at(f.target());
      const RefinementMap& pm = sm.bo->map();
      const RefinementMap& pn = sn.bo->map();
      const HatClass x = sample_spread(*sn.ta, rng), y = sample_spread(*sn.ta, rng);
      const std::string arrow = d.arrows[k].name;
      out.record("phi-natural", "Phi_M(f^* x) = f^* Phi_N(x)",
                 sm.tb->equal(pm.on_classes(sm.ta->pullback(f, x)), sm.tb->pullback(f, pn.on_classes(x))),
                 {{"arrow", arrow}});
      const Cochain lhs = (*sm.bo)(sm.ta->pullback(f, x), sm.ta->pullback(f, y));
      const Cochain rhs = b.pullback_forms(f, (*sn.bo)(x, y));
      out.record("B-natural", "B_M(f^* u, f^* v) = f^* B_N(u, v) in Omega/im ch", sm.bo->trivial(lhs - rhs),
                 {{"arrow", arrow}, {"residual", cochain_to_json(lhs - rhs)}});
    }
  }
  return out;
}

}  // namespace simdiff
