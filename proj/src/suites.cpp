#include "simdiff/suites.hpp"

#include <chrono>
#include <map>
#include <thread>

#include "simdiff/cohomology.hpp"
#include "simdiff/diffhat.hpp"
#include "simdiff/em.hpp"
#include "simdiff/fixtures.hpp"
#include "simdiff/io.hpp"
#include "simdiff/linalg.hpp"
#include "simdiff/refine.hpp"

namespace simdiff {

namespace {

constexpr const char* kVersion = "1.0.0";

template <class F>
CheckList timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckList out = f();
  out.stamp(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return out;
}

std::string tag(const ComplexPtr& x, int n) { return x->name() + "/n" + std::to_string(n) + "/"; }

nlohmann::json presentation_json(const GroupPresentation& p) {
  nlohmann::json torsion = nlohmann::json::array();
  for (const auto& t : p.torsion) torsion.push_back(t.get_str());
  return {{"group", p.to_string()},
          {"free_rank", p.free_rank},
          {"torsion", torsion},
          {"divisible_rank", p.divisible_rank},
          {"circle_rank", p.lattice_quotients}};
}

std::size_t rank_of(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return smith_normal_form(to_dense(m)).rank;
}

Integer free_coordinate(const IntegerCohomology& h, const std::vector<Integer>& coords) {
  for (std::size_t i = 0; i < h.summands(); ++i) {
    if (h.orders()[i] == 0) return coords[i];
  }
  return 0;
}

/// E(X, n) with its associator composed with the loop m_a m_b m_c^2 u, u a
/// free generator of H^{n-1}: delta(m_a m_b m_c^2) = -2 m_a m_b m_c m_d != 0.
class TwistedAssociator : public MonoidalGroupoid<Cochain, MapMorphism> {
 public:
  TwistedAssociator(const MappingGroupoid& g, const ComplexPtr& x, int n)
      : g_(g), top_(x, n), lower_(x, n - 1), u_(x, n - 1) {
    for (std::size_t i = 0; i < lower_.summands(); ++i) {
      if (lower_.orders()[i] == 0) {
        u_ = lower_.generator(i);
        break;
      }
    }
  }
  std::string name() const override { return g_.name() + " with twisted associator"; }
  Cochain source(const MapMorphism& m) const override { return g_.source(m); }
  Cochain target(const MapMorphism& m) const override { return g_.target(m); }
  bool same_object(const Cochain& a, const Cochain& b) const override { return g_.same_object(a, b); }
  MapMorphism identity(const Cochain& a) const override { return g_.identity(a); }
  MapMorphism compose(const MapMorphism& a, const MapMorphism& b) const override { return g_.compose(a, b); }
  MapMorphism inverse(const MapMorphism& m) const override { return g_.inverse(m); }
  Decision decide(const MapMorphism& a, const MapMorphism& b) const override { return g_.decide(a, b); }
  Cochain unit() const override { return g_.unit(); }
  Cochain tensor(const Cochain& a, const Cochain& b) const override { return g_.tensor(a, b); }
  MapMorphism tensor_morphisms(const MapMorphism& a, const MapMorphism& b) const override {
    return g_.tensor_morphisms(a, b);
  }
  MapMorphism left_unitor(const Cochain& a) const override { return g_.left_unitor(a); }
  MapMorphism right_unitor(const Cochain& a) const override { return g_.right_unitor(a); }
  MapMorphism associator(const Cochain& a, const Cochain& b, const Cochain& c) const override {
    const Integer w = m(a) * m(b) * m(c) * m(c);
    return g_.twist(g_.associator(a, b, c), Rational(w) * u_);
  }
  bool braided() const override { return g_.braided(); }
  MapMorphism braiding(const Cochain& a, const Cochain& b) const override { return g_.braiding(a, b); }
  Cochain sample_object(std::mt19937_64& rng) const override { return g_.sample_object(rng); }
  MapMorphism sample_morphism(const Cochain& from, std::mt19937_64& rng) const override {
    return g_.sample_morphism(from, rng);
  }
  std::string describe(const Cochain& a) const override { return g_.describe(a); }

 private:
  Integer m(const Cochain& a) const { return free_coordinate(top_, top_.class_of(g_.cocycle_of(a))); }
  const MappingGroupoid& g_;
  IntegerCohomology top_, lower_;
  Cochain u_;
};

CoherenceOptions options(int trials, std::uint64_t seed) { return {trials, seed, false, true}; }

}  // namespace

const std::vector<std::string>& injections() {
  static const std::vector<std::string> names{"pentagon", "iota", "mu", "zigzag", "B-cocycle", "B-symmetry", "B-unit"};
  return names;
}

std::unique_ptr<ChernModel> make_model(const std::string& name, int n, const std::string& inject) {
  if (name == "strict") return std::make_unique<StrictModel>(n, inject == "iota" ? 2 : 1);
  if (name == "subdivided" || name == "sd") return std::make_unique<SubdividedModel>(n, 17);
  if (name == "alt-iota" || name == "alt") return std::make_unique<AltIotaModel>(n, 23);
  throw Error("unknown model '" + name + "' (expected strict, subdivided or alt-iota)");
}

const std::vector<std::string>& builtin_fixture_names() {
  static const std::vector<std::string> names{"pt", "s1", "s2", "t2", "rp2"};
  return names;
}

ComplexPtr builtin_fixture(const std::string& name) {
  if (name == "pt") return point();
  if (name == "s1") return circle(3);
  if (name == "s2") return sphere2();
  if (name == "t2") return torus();
  if (name == "rp2") return rp2();
  throw Error("unknown fixture '" + name + "' (expected pt, s1, s2, t2 or rp2)");
}

GroupPresentation snf_oracle(const ComplexPtr& x, int n) {
  GroupPresentation p;
  if (n < 0 || n > x->dimension()) return p;
  const std::size_t rank_n = n < x->dimension() ? rank_of(coboundary_matrix(*x, n)) : 0;
  std::size_t rank_below = 0;
  if (n > 0) {
    const IntMatrix d = coboundary_matrix(*x, n - 1);
    if (d.rows() > 0 && d.cols() > 0) {
      const SmithForm s = smith_normal_form(to_dense(d));
      rank_below = s.rank;
      for (const auto& v : s.diagonal) {
        if (v > 1) p.torsion.push_back(v);
      }
    }
  }
  p.free_rank = x->count(n) - rank_n - rank_below;
  return p;
}

// ---------------------------------------------------------------------------
// Suites

CheckList suite_complex(const ComplexPtr& x) {
  return timed([&] {
    CheckList out;
    nlohmann::json counts = nlohmann::json::array();
    for (int d = 0; d <= x->dimension(); ++d) counts.push_back(x->count(d));
    bool ok = true;
    std::string why;
    try {
      x->check_identities();
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    out.record("simplicial-identities", "d_i d_j = d_{j-1} d_i and the face/degeneracy identities hold", ok,
               ok ? nlohmann::json{{"cells", counts}} : nlohmann::json{{"error", why}});
    const nlohmann::json j = complex_to_json(*x);
    const bool round = complex_to_json(*complex_from_json(j)) == j;
    out.record("json-round-trip", "the JSON form reloads to the same complex", round, {{"generators", j["generators"].size()}});
    long chi_cells = 0, chi_betti = 0;
    for (int d = 0; d <= x->dimension(); ++d) {
      const long sign = d % 2 == 0 ? 1 : -1;
      chi_cells += sign * static_cast<long>(x->count(d));
      chi_betti += sign * static_cast<long>(IntegerCohomology(x, d).presentation().free_rank);
    }
    out.record("euler-characteristic", "alternating cell count equals alternating Betti sum", chi_cells == chi_betti,
               {{"cells", chi_cells}, {"betti", chi_betti}});
    return out;
  });
}

CheckList suite_cohomology(const ComplexPtr& x, int n, const Coefficients& coeffs) {
  return timed([&] {
    CheckList out;
    const GroupPresentation p = cohomology(x, n, coeffs);
    out.record("presentation", "H^" + std::to_string(n) + "(" + x->name() + "; " + coeffs.name() + ")", true,
               presentation_json(p));
    if (coeffs.kind == CoeffKind::Integers) {
      const IntegerCohomology h(x, n);
      const GroupPresentation oracle = snf_oracle(x, n);
      out.record("snf-oracle", "agrees with an independent Smith form of the coboundaries",
                 oracle.free_rank == h.presentation().free_rank && oracle.torsion == h.presentation().torsion,
                 {{"computed", presentation_json(h.presentation())}, {"oracle", presentation_json(oracle)}});
      bool gens = true;
      for (std::size_t i = 0; i < h.summands(); ++i) {
        std::vector<Integer> e(h.summands());
        e[i] = 1;
        gens = gens && h.class_of(h.generator(i)) == e && coboundary(h.generator(i)).is_zero();
      }
      out.record("generators", "each generator is a cocycle with unit coordinates", gens, {{"summands", h.summands()}});
    }
    return out;
  });
}

CheckList suite_iota(int n, const Coefficients& coeffs, int truncation, const std::string& inject) {
  return timed([&] {
    CheckList out;
    EMSpace en(n, coeffs), en1(n + 1, coeffs);
    const Integer scale = inject == "iota" ? 2 : 1;
    const IotaReport r = check_iota_compatibility(en, {&en}, {&en1, scale}, truncation);
    out.record("iota-compatibility",
               "int_I eps^* iota_" + std::to_string(n + 1) + " = iota_" + std::to_string(n) + " through level " +
                   std::to_string(truncation),
               r.pass,
               r.pass ? nlohmann::json{{"checked", r.checked}, {"truncation", truncation}}
                      : nlohmann::json{{"level", r.level}, {"simplex", r.simplex}, {"message", r.message}});
    return out;
  });
}

bool injection_applies(const std::string& inject, const ComplexPtr& x, int n) {
  if (inject == "mu") return n >= 1 && snf_oracle(x, n).free_rank > 0 && snf_oracle(x, n - 1).free_rank > 0;
  if (inject.rfind("B-", 0) == 0) {
    if (n < 1 || snf_oracle(x, n).free_rank == 0) return false;
    if (inject == "B-symmetry" && snf_oracle(x, n).free_rank < 2) return false;
    for (std::size_t i = 0; i < x->count(n - 1); ++i) {
      Cochain e(x, n - 1);
      e.at(i) = 1;
      if (!coboundary(e).is_zero()) return true;
    }
    return false;
  }
  return true;
}

CheckList suite_groupoid(const ComplexPtr& x, int n, int trials, std::uint64_t seed, const std::string& inject,
                         std::uint64_t perturb_seed) {
  return timed([&] {
    MappingGroupoid g(x, n, Coefficients::integers(), perturb_seed);
    if (inject == "pentagon") return from_report(check_coherence(TwistedAssociator(g, x, n), options(trials, seed)), "");
    return from_report(check_coherence(g, options(trials, seed)), "");
  });
}

const std::vector<std::string>& moncat_instances() {
  static const std::vector<std::string> names{"cubic-cocycle", "broken-cocycle", "symmetric-sign", "semion",
                                              "synthetic",     "subdivision"};
  return names;
}

namespace {

CheckList synthetic_iff(int trials, std::uint64_t seed) {
  // Z/3 objects, Z/3 automorphisms, normalized omega. Cocycles: coboundaries
  // of normalized 2-cochains plus multiples of abc. Non-cocycles: random
  // tables, classified by the exhaustive test.
  CheckList out;
  std::mt19937_64 rng(seed);
  auto table = [](std::vector<int> v) {
    return [v](int a, int b, int c) { return (a == 0 || b == 0 || c == 0) ? 0 : v[static_cast<std::size_t>((a - 1) * 4 + (b - 1) * 2 + (c - 1))]; };
  };
  const int samples = std::max(trials, 12);
  for (int s = 0; s < samples; ++s) {
    std::vector<int> v(8);
    std::string kind;
    if (s % 3 == 0) {
      std::vector<int> beta(4);
      for (auto& e : beta) e = static_cast<int>(rng() % 3);
      auto bt = [beta](int a, int b) { return (a % 3 == 0 || b % 3 == 0) ? 0 : beta[static_cast<std::size_t>((a % 3 - 1) * 2 + (b % 3 - 1))]; };
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          for (int c = 1; c <= 2; ++c)
            v[static_cast<std::size_t>((a - 1) * 4 + (b - 1) * 2 + (c - 1))] =
                ((bt(b, c) - bt(a + b, c) + bt(a, b + c) - bt(a, b)) % 3 + 3) % 3;
      kind = "coboundary";
    } else if (s % 3 == 1) {
      const int k = 1 + static_cast<int>(rng() % 2);
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          for (int c = 1; c <= 2; ++c) v[static_cast<std::size_t>((a - 1) * 4 + (b - 1) * 2 + (c - 1))] = (k * a * b * c) % 3;
      kind = "trilinear";
    } else {
      for (auto& e : v) e = static_cast<int>(rng() % 3);
      kind = "random";
    }
    const SkeletalGroupoid g("omega-" + std::to_string(s), 3, 3, table(v));
    const bool cocycle = g.omega_is_cocycle();
    // 81 quadruples; 1000 samples miss a given one with probability < 1e-5.
    const CoherenceReport r = check_coherence(g, options(1000, seed + static_cast<std::uint64_t>(s)));
    const bool pentagon = r.find("pentagon")->pass;
    nlohmann::json ev{{"omega", v}, {"kind", kind}, {"cocycle", cocycle}, {"pentagon", pentagon}};
    if (!pentagon) ev["counterexample"] = r.find("pentagon")->counterexample;
    out.record(cocycle ? "pentagon-holds-for-cocycles" : "pentagon-fails-for-non-cocycles",
               cocycle ? "delta omega = 0 implies the pentagon holds" : "delta omega != 0 implies the pentagon fails",
               pentagon == cocycle, ev);
  }
  const SkeletalGroupoid good = SkeletalGroupoid::cubic_cocycle(), bad = SkeletalGroupoid::broken_cocycle();
  const CoherenceReport rg = check_coherence(good, options(trials, seed)), rb = check_coherence(bad, options(trials, seed));
  out.record("pentagon-holds-for-cocycles", "delta omega = 0 implies the pentagon holds",
             good.omega_is_cocycle() && rg.pass(), {{"instance", good.name()}});
  out.record("pentagon-fails-for-non-cocycles", "delta omega != 0 implies the pentagon fails",
             !bad.omega_is_cocycle() && !rb.find("pentagon")->pass,
             {{"instance", bad.name()}, {"counterexample", rb.find("pentagon")->counterexample}});
  return out;
}

}  // namespace

CheckList suite_moncat(const std::string& instance, int n, int trials, std::uint64_t seed, const std::string& inject) {
  return timed([&] {
    if (instance == "cubic-cocycle") return from_report(check_coherence(SkeletalGroupoid::cubic_cocycle(), options(trials, seed)), "");
    if (instance == "broken-cocycle") return from_report(check_coherence(SkeletalGroupoid::broken_cocycle(), options(trials, seed)), "");
    if (instance == "symmetric-sign") return from_report(check_coherence(SkeletalGroupoid::symmetric_sign(), options(trials, seed)), "");
    if (instance == "semion") return from_report(check_coherence(SkeletalGroupoid::semion(), options(trials, seed)), "");
    if (instance == "synthetic") return synthetic_iff(trials, seed);
    if (instance == "subdivision") {
      SubdivisionComparison cmp(n, 17, inject == "zigzag");
      try {
        return from_report(check_subdivision_inverse(cmp, MapDiagram::standard(), options(trials, seed)), "");
      } catch (const ZigZagError& e) {
        CheckList out;
        out.record("zigzag", "the supplied adjoint data satisfies both zig-zag identities", false, {{"violation", e.what()}});
        return out;
      }
    }
    throw Error("unknown moncat instance '" + instance + "'");
  });
}

CheckList suite_chern(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                      const std::string& inject) {
  return timed([&] {
    const auto m = make_model(model, n, inject);
    CheckList out;
    if (inject == "mu") {
      if (!injection_applies(inject, x, n)) throw InapplicableInjection(inject, x->name(), n);
      const auto* strict = dynamic_cast<const StrictModel*>(m.get());
      if (strict == nullptr) throw Error("--inject mu needs the strict model");
      out.append(from_report(check_monoidal_functor(corrupted_chern(*strict, x), options(trials, seed), "ch"), ""), "functor/");
    } else {
      out.append(from_report(check_monoidal_functor(m->functor(x), options(trials, seed), "ch"), ""), "functor/");
    }
    if (const auto* strict = dynamic_cast<const StrictModel*>(m.get())) {
      out.append(from_report(check_chern_witnesses(*strict, x, trials, seed), ""), "witness/");
      out.append(from_report(check_loop_consistency(*strict, x, trials, seed), ""), "loop/");
    }
    return out;
  });
}

CheckList suite_chern_diagram(int n, const std::string& model, int trials, std::uint64_t seed) {
  return timed([&] {
    const auto m = make_model(model, n);
    return from_report(check_pullback_corrections(*m, MapDiagram::standard(), trials, seed), "");
  });
}

CheckList suite_hat_group(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                          const std::string& inject) {
  return timed([&] {
    const auto m = make_model(model, n, inject);
    const HatTheory h(*m, x);
    HatGroup g = h.group(trials, seed);
    CheckList out = std::move(g.verification);
    nlohmann::json ev = presentation_json(g.presentation);
    nlohmann::json circles = nlohmann::json::array();
    for (const auto& l : g.circle_forms) circles.push_back(cochain_to_json(l));
    ev["circle_forms"] = circles;
    nlohmann::json sections = nlohmann::json::array();
    for (const auto& s : g.integral_sections) sections.push_back(cochain_to_json(h.groupoid().cocycle_of(s.c)));
    ev["integral_sections"] = sections;
    out.record("presentation", "E^" + std::to_string(n) + "(" + x->name() + ") as an abelian group", true, ev);
    const GroupPresentation oracle = snf_oracle(x, n);
    out.record("I-matches-snf-oracle", "the integral part is H^n(M; Z) computed independently",
               oracle.free_rank == g.presentation.free_rank && oracle.torsion == g.presentation.torsion,
               {{"oracle", presentation_json(oracle)}});
    return out;
  });
}

CheckList suite_hat_exactness(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                              const std::string& inject) {
  return timed([&] {
    const auto m = make_model(model, n, inject);
    return HatTheory(*m, x).exactness_certificate(trials, seed);
  });
}

CheckList suite_hat_naturality(int n, const std::string& model, int trials, std::uint64_t seed) {
  return timed([&] {
    const auto m = make_model(model, n);
    return check_hat_naturality(*m, MapDiagram::standard(), trials, seed);
  });
}

CheckList suite_refine(const ComplexPtr& x, int n, const std::string& model_a, const std::string& model_b, int trials,
                       std::uint64_t seed, const std::string& inject) {
  return timed([&] {
    const auto ma = make_model(model_a, n), mb = make_model(model_b, n);
    const HatTheory ta(*ma, x), tb(*mb, x);
    BDefect defect = BDefect::none;
    if (inject.rfind("B-", 0) == 0) {
      if (!injection_applies(inject, x, n)) throw InapplicableInjection(inject, x->name(), n);
      defect = parse_defect(inject.substr(2));
    }
    CheckList out;
    out.append(check_tilde(TildeGroupoid(tb), trials, seed), "tilde/");
    const BObstruction b(canonical_map(ta, tb), defect);
    out.append(check_equivalence(b, trials, seed), "equivalence/");
    out.append(derive_B(b, trials, seed), "B/");
    if (!tb.image_generators().empty() && defect == BDefect::none) {
      const BObstruction q(quadratic_shift(canonical_map(ta, tb), Rational(1, 3) * tb.image_generators().front()));
      out.append(derive_B(q, trials, seed + 1), "B-quadratic/");
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Everything

std::vector<CheckList> run_tasks(const std::vector<std::function<CheckList()>>& tasks, int jobs) {
  std::vector<CheckList> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int width = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < width; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

namespace {

/// One check: `r` fails exactly `id` and nothing else.
CheckList expect_only(const CheckList& r, const std::string& id, const std::string& claim) {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& c : r.checks) {
    if (!c.pass) failed.push_back(c.id);
  }
  CheckList out;
  out.record("fails-only-" + id, claim, failed == nlohmann::json::array({id}),
             {{"failed", failed}, {"checks", r.checks.size()}});
  out.stamp(r.checks.empty() ? 0.0 : r.checks.front().seconds);
  return out;
}

}  // namespace

CheckList suite_all(const AllConfig& cfg) {
  std::vector<ComplexPtr> xs = cfg.complexes;
  if (xs.empty()) {
    for (const auto& name : builtin_fixture_names()) xs.push_back(builtin_fixture(name));
  }
  auto small = [&](const ComplexPtr& x) { return x->name() == "circle3" || x->name() == "torus"; };
  auto trials = [&](int fallback) { return cfg.trials > 0 ? cfg.trials : fallback; };
  std::vector<int> low, all;
  int top = 0;
  for (int n : cfg.degrees) {
    top = std::max(top, n);
    if (n >= 1) all.push_back(n);
    if (n >= 1 && n <= 2) low.push_back(n);
  }
  const std::string inj = cfg.inject;
  const std::uint64_t seed = cfg.seed;

  // Local injections go only where the defect can exist at all.
  bool applied = inj.empty() || (inj != "mu" && inj.rfind("B-", 0) != 0);
  auto local = [&](const ComplexPtr& x, int n) {
    if (!injection_applies(inj, x, n)) return std::string();
    applied = true;
    return inj;
  };

  std::vector<std::pair<std::string, std::function<CheckList()>>> tasks;
  auto add = [&](std::string prefix, std::function<CheckList()> f) { tasks.emplace_back(std::move(prefix), std::move(f)); };

  for (const auto& x : xs) {
    add("complex/" + x->name() + "/", [x] { return suite_complex(x); });
    for (int n = 0; n <= std::max(top, 2); ++n) {
      for (const auto& c : {Coefficients::integers(), Coefficients::modular(2)}) {
        add("cohomology/" + x->name() + "/n" + std::to_string(n) + "/" + c.name() + "/",
            [x, n, c] { return suite_cohomology(x, n, c); });
      }
    }
  }
  for (int n = 0; n <= top; ++n) {
    for (const auto& c : {Coefficients::integers(), Coefficients::modular(2)}) {
      add("iota/n" + std::to_string(n) + "/" + c.name() + "/", [n, c, inj] { return suite_iota(n, c, n + 3, inj); });
    }
  }
  for (const auto& x : xs) {
    if (!small(x)) continue;
    for (int n : low) {
      const std::string li = local(x, n);
      add("groupoid/" + tag(x, n), [=] { return suite_groupoid(x, n, trials(4), seed, inj); });
      add("groupoid-perturbed/" + tag(x, n), [=] { return suite_groupoid(x, n, trials(4), seed, inj, 99); });
      for (const char* model : {"strict", "subdivided", "alt-iota"}) {
        add(std::string("chern/") + model + "/" + tag(x, n),
            [=] { return suite_chern(x, n, model, trials(3), seed, std::string(model) == "strict" ? li : ""); });
      }
      add("refine/strict-alt-iota/" + tag(x, n),
          [=] { return suite_refine(x, n, "strict", "alt-iota", trials(3), seed, li); });
      add("refine/strict-subdivided/" + tag(x, n),
          [=] { return suite_refine(x, n, "strict", "subdivided", trials(3), seed, li); });
    }
  }
  for (const char* inst : {"synthetic", "symmetric-sign", "cubic-cocycle"}) {
    add(std::string("moncat/") + inst + "/", [=] { return suite_moncat(inst, 1, trials(40), seed, inj); });
  }
  // Negative controls: these instances must fail exactly one axiom.
  add("moncat/semion/", [=] {
    return expect_only(suite_moncat("semion", 1, trials(40), seed, inj), "symmetry", "braided but not symmetric");
  });
  add("moncat/broken-cocycle/", [=] {
    return expect_only(suite_moncat("broken-cocycle", 1, trials(40), seed, inj), "pentagon",
                       "omega is not a 3-cocycle, so only the pentagon fails");
  });
  for (int n : low) {
    add("moncat/subdivision/n" + std::to_string(n) + "/", [=] { return suite_moncat("subdivision", n, trials(2), seed, inj); });
    for (const char* model : {"strict", "subdivided", "alt-iota"}) {
      add(std::string("chern-diagram/") + model + "/n" + std::to_string(n) + "/",
          [=] { return suite_chern_diagram(n, model, trials(6), seed); });
    }
  }
  for (const auto& x : xs) {
    for (int n : all) {
      add("hat-group/" + tag(x, n), [=] { return suite_hat_group(x, n, "strict", trials(3), seed, inj); });
      add("hat-exactness/" + tag(x, n), [=] { return suite_hat_exactness(x, n, "strict", trials(3), seed, inj); });
    }
  }
  if (!low.empty()) add("hat-naturality/n1/", [=] { return suite_hat_naturality(1, "strict", trials(1), seed); });

  std::vector<std::function<CheckList()>> fs;
  for (const auto& t : tasks) fs.push_back(t.second);
  if (!applied) throw Error("--inject " + inj + " cannot be realized on any selected complex and degree");
  std::vector<CheckList> results = run_tasks(fs, cfg.jobs);
  CheckList out;
  for (std::size_t i = 0; i < tasks.size(); ++i) out.append(std::move(results[i]), tasks[i].first);
  out.sort();
  return out;
}

nlohmann::json make_certificate(const std::string& command, const nlohmann::json& config, CheckList checks) {
  checks.sort();
  return {{"tool", "simdiff"},
          {"version", kVersion},
          {"command", command},
          {"config", config},
          {"status", checks.pass() ? "pass" : "fail"},
          {"summary", {{"checks", checks.checks.size()}, {"failed", checks.failures()}}},
          {"checks", checks.to_json()}};
}

nlohmann::json strip_timing(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace simdiff
