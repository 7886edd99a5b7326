#include "simdiff/chern.hpp"

#include <tuple>

#include <algorithm>
#include <optional>
#include <sstream>

#include "simdiff/fixtures.hpp"
#include "simdiff/linalg.hpp"

namespace simdiff {

namespace {

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t complex_seed(std::uint64_t seed, const SimplicialSet& x) {
  return seed ^ fnv(x.name()) ^ (static_cast<std::uint64_t>(x.size()) << 32);
}

/// Up to two n-generators g_j and (n-1)-cochains b_j on `on`, drawn from the
/// seed; the map is w -> sum_j w(g_j) b_j.
struct LinearTwist {
  std::vector<std::pair<std::size_t, Cochain>> terms;

  LinearTwist() = default;
  LinearTwist(std::uint64_t seed, const SimplicialSet& x, int n, const ComplexPtr& on) {
    if (seed == 0 || n < 1) return;
    std::mt19937_64 rng(complex_seed(seed, x));
    const std::size_t count = x.count(n);
    if (count == 0) return;
    const std::size_t picks = std::min<std::size_t>(2, count);
    std::vector<std::size_t> used;
    while (used.size() < picks) {
      const std::size_t idx = rng() % count;
      if (std::find(used.begin(), used.end(), idx) != used.end()) continue;
      used.push_back(idx);
      Cochain b = random_cochain(on, n - 1, rng, -2, 2);
      if (b.is_zero()) b.at(0) = 1;
      terms.emplace_back(idx, std::move(b));
    }
  }

  Cochain operator()(const Cochain& w, const ComplexPtr& on, int degree) const {
    Cochain out(on, degree);
    for (const auto& [idx, b] : terms) out += w.at(idx) * b;
    return out;
  }
};

Decision literal(bool ok, const std::string& kind) {
  Decision d;
  d.equal = ok;
  d.evidence = {{"kind", kind}};
  return d;
}

Decision exact_decision(const ExactnessTest& t, const Cochain& w) {
  Decision d;
  d.equal = t.exact(w);
  if (d.equal) {
    d.evidence = {{"kind", "coboundary-test"}, {"annihilators", t.annihilators().size()}};
  } else {
    nlohmann::json psi = nlohmann::json::array();
    for (const auto& v : t.obstruction(w)) psi.push_back(format_rational(v));
    d.evidence = {{"kind", "obstruction"}, {"functional", psi}};
  }
  return d;
}

struct Recorder {
  std::vector<detail::AxiomRecorder> rec;
  bool keep = false;

  detail::AxiomRecorder& operator()(const std::string& name) {
    for (auto& r : rec) {
      if (r.result.axiom == name) return r;
    }
    rec.push_back({AxiomResult{name, true, 0, {}, {}, nullptr}, keep});
    return rec.back();
  }
  CoherenceReport finish(std::string instance) {
    CoherenceReport out{std::move(instance), {}};
    for (auto& r : rec) out.axioms.push_back(std::move(r.result));
    return out;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// ExactnessTest

ExactnessTest::ExactnessTest(ComplexPtr x, int degree) : x_(std::move(x)), degree_(degree) {
  if (degree_ < 0) throw Error("exactness test needs a nonnegative degree");
  if (degree_ == 0) return;
  // Rows annihilating im delta_{d-1}: the kernel of its transpose.
  const IntMatrix d = coboundary_matrix(*x_, degree_ - 1);
  RatMatrix t(d.cols(), d.rows());
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (const auto& [c, v] : d.row(r)) t.add(c, r, Rational(v));
  }
  t.finalize();
  rows_ = rational_kernel(t);
}

bool ExactnessTest::exact(const Cochain& w) const { return obstruction(w).empty(); }

std::vector<Rational> ExactnessTest::obstruction(const Cochain& w) const {
  if (w.degree() != degree_ || !same_complex(w.complex(), x_)) {
    throw Error("exactness test: cochain of degree " + std::to_string(w.degree()) + " on " + w.complex()->name() +
                ", expected degree " + std::to_string(degree_) + " on " + x_->name());
  }
  if (degree_ == 0) {
    return w.is_zero() ? std::vector<Rational>{} : w.values();
  }
  for (const auto& row : rows_) {
    Rational s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * w.at(i);
    if (s != 0) return row;
  }
  return {};
}

// ---------------------------------------------------------------------------
// CocycleGroupoid

CocycleGroupoid::CocycleGroupoid(ComplexPtr x, int n) : x_(std::move(x)), n_(n) {
  if (n_ < 1) throw ConstructionError("cocycle groupoid needs n >= 1");
  exact_ = std::make_unique<ExactnessTest>(x_, n_ - 1);
  const IntegerCohomology h(x_, n_);
  for (std::size_t i = 0; i < h.cocycle_rank(); ++i) basis_.push_back(h.cocycle_basis(i));
}

bool CocycleGroupoid::is_object(const Cochain& w) const {
  return w.degree() == n_ && same_complex(w.complex(), x_) && coboundary(w).is_zero();
}

bool CocycleGroupoid::is_morphism(const CochainMorphism& m) const {
  return is_object(m.source) && is_object(m.target) && m.eta.degree() == n_ - 1 &&
         same_complex(m.eta.complex(), x_) && coboundary(m.eta) == m.target - m.source;
}

CochainMorphism CocycleGroupoid::morphism(const Cochain& source, const Cochain& eta) const {
  return {source, source + coboundary(eta), eta};
}

CochainMorphism CocycleGroupoid::zero_morphism(const Cochain& source, const Cochain& target) const {
  return {source, target, Cochain(x_, n_ - 1)};
}

std::string CocycleGroupoid::name() const { return "Z^" + std::to_string(n_) + "(" + x_->name() + "; Q)"; }

CochainMorphism CocycleGroupoid::identity(const Cochain& a) const { return zero_morphism(a, a); }

CochainMorphism CocycleGroupoid::compose(const CochainMorphism& first, const CochainMorphism& second) const {
  if (first.target != second.source) throw Error("compose: target of the first morphism is not the source of the second");
  return {first.source, second.target, first.eta + second.eta};
}

CochainMorphism CocycleGroupoid::inverse(const CochainMorphism& m) const { return {m.target, m.source, -m.eta}; }

Decision CocycleGroupoid::decide(const CochainMorphism& a, const CochainMorphism& b) const {
  if (a.source != b.source || a.target != b.target) return literal(false, "endpoints differ");
  return exact_decision(*exact_, a.eta - b.eta);
}

CochainMorphism CocycleGroupoid::tensor_morphisms(const CochainMorphism& a, const CochainMorphism& b) const {
  return {a.source + b.source, a.target + b.target, a.eta + b.eta};
}

CochainMorphism CocycleGroupoid::associator(const Cochain& a, const Cochain& b, const Cochain& c) const {
  return identity(a + b + c);
}

CochainMorphism CocycleGroupoid::braiding(const Cochain& a, const Cochain& b) const { return identity(a + b); }

Cochain CocycleGroupoid::sample_object(std::mt19937_64& rng) const {
  Cochain w(x_, n_);
  for (const auto& b : basis_) {
    Rational q(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 2));
    q.canonicalize();
    w += q * b;
  }
  w += coboundary(random_cochain(x_, n_ - 1, rng, -2, 2));
  return w;
}

CochainMorphism CocycleGroupoid::sample_morphism(const Cochain& from, std::mt19937_64& rng) const {
  Cochain eta = random_cochain(x_, n_ - 1, rng, -2, 2);
  if (rng() % 2 == 0) eta *= Rational(1, 2);
  return morphism(from, eta);
}

std::string CocycleGroupoid::describe(const Cochain& w) const {
  std::ostringstream os;
  os << "[";
  const std::size_t shown = std::min<std::size_t>(w.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) os << (i ? " " : "") << format_rational(w.at(i));
  if (shown < w.size()) os << " ...";
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// MapDiagram

MapDiagram MapDiagram::standard() {
  MapDiagram d;
  const auto c6 = circle(6), c3 = circle(3), pt = point();
  const auto t = make_product(c3, c3, "torus");
  const auto p2 = rp2();
  d.objects = {c6, c3, pt, t->complex(), p2};
  auto add = [&d](int s, int tg, SimplicialMap f, std::string name) {
    d.maps.push_back(std::move(f));
    d.arrows.push_back({s, tg, std::move(name)});
    return static_cast<int>(d.arrows.size()) - 1;
  };
  const int cover = add(0, 1, circle_cover(c6, c3), "cover");
  const int crush = add(1, 2, collapse_to_point(c3), "circle3->pt");
  const int crush6 = add(0, 2, compose_maps(d.maps[cover], d.maps[crush]), "circle6->pt");
  const int base = add(2, 1, point_inclusion(c3, 0), "v0");
  const int id_pt = add(2, 2, compose_maps(d.maps[base], d.maps[crush]), "id_pt");
  const int id_c3 = add(1, 1, SimplicialMap::identity(c3), "id_circle3");
  const int proj = add(3, 1, t->projection_left(), "torus->circle3");
  const int crush_t = add(3, 2, compose_maps(d.maps[proj], d.maps[crush]), "torus->pt");
  const int constant = add(1, 1, compose_maps(d.maps[crush], d.maps[base]), "constant");
  add(4, 2, collapse_to_point(p2), "rp2->pt");
  d.composites = {{cover, crush, crush6}, {base, crush, id_pt}, {proj, crush, crush_t},
                  {crush, base, constant}, {cover, id_c3, cover}, {id_c3, id_c3, id_c3}};
  d.identities = {id_pt, id_c3};
  return d;
}

int MapDiagram::find(const std::string& arrow) const {
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i].name == arrow) return static_cast<int>(i);
  }
  throw Error("diagram has no arrow named " + arrow);
}

// ---------------------------------------------------------------------------
// SubdivisionComparison

struct SubdivisionComparison::Site {
  ComplexPtr x;
  SubdivisionPtr sd;
  std::unique_ptr<CocycleGroupoid> fine, coarse;
  LinearTwist twist;
  /// A closed, non-exact (n-1)-cochain on sd X added to the unit when the
  /// zig-zag identities are broken on purpose; zero otherwise.
  Cochain defect;
};

SubdivisionComparison::SubdivisionComparison(int n, std::uint64_t twist_seed, bool break_zigzag)
    : n_(n), twist_seed_(twist_seed), break_zigzag_(break_zigzag) {
  if (n < 1) throw ConstructionError("subdivision comparison needs n >= 1");
}

SubdivisionComparison::~SubdivisionComparison() = default;

const SubdivisionComparison::Site& SubdivisionComparison::site(const ComplexPtr& x) const {
  std::lock_guard lock(mutex_);
  auto& slot = sites_[x.get()];
  if (slot) return *slot;
  auto s = std::make_unique<Site>();
  s->x = x;
  s->sd = subdivision_of(x);
  s->fine = std::make_unique<CocycleGroupoid>(s->sd->complex(), n_);
  s->coarse = std::make_unique<CocycleGroupoid>(x, n_);
  s->twist = LinearTwist(twist_seed_, *x, n_, s->sd->complex());
  s->defect = Cochain(s->sd->complex(), n_ - 1);
  if (break_zigzag_) {
    const IntegerCohomology h(x, n_ - 1);
    for (std::size_t i = 0; i < h.summands(); ++i) {
      if (h.orders()[i] == 0) {
        s->defect = s->sd->refine(h.generator(i));
        break;
      }
    }
  }
  slot = std::move(s);
  return *slot;
}

const Subdivision& SubdivisionComparison::subdivision(const ComplexPtr& x) const { return *site(x).sd; }
const CocycleGroupoid& SubdivisionComparison::fine(const ComplexPtr& x) const { return *site(x).fine; }
const CocycleGroupoid& SubdivisionComparison::coarse(const ComplexPtr& x) const { return *site(x).coarse; }

Cochain SubdivisionComparison::twist(const ComplexPtr& x, const Cochain& y) const {
  const Site& s = site(x);
  return s.twist(y, s.sd->complex(), n_ - 1);
}

Cochain SubdivisionComparison::v_object(const ComplexPtr& x, const Cochain& y) const {
  return subdivision(x).refine(y) + coboundary(twist(x, y));
}

CochainMorphism SubdivisionComparison::v_morphism(const ComplexPtr& x, const CochainMorphism& m) const {
  return {v_object(x, m.source), v_object(x, m.target),
          subdivision(x).refine(m.eta) + twist(x, m.target) - twist(x, m.source)};
}

SubdivisionComparison::Endo SubdivisionComparison::u(const ComplexPtr& x) const {
  const Site& s = site(x);
  const Subdivision* sd = s.sd.get();
  const CocycleGroupoid* coarse = s.coarse.get();
  Endo e;
  e.source = s.fine.get();
  e.target = s.coarse.get();
  e.on_objects = [sd](const Cochain& y) { return sd->collapse(y); };
  e.on_morphisms = [sd](const CochainMorphism& m) {
    return CochainMorphism{sd->collapse(m.source), sd->collapse(m.target), sd->collapse(m.eta)};
  };
  e.mu = [sd, coarse](const Cochain& a, const Cochain& b) { return coarse->identity(sd->collapse(a + b)); };
  e.epsilon = [coarse] { return coarse->identity(coarse->unit()); };
  return e;
}

SubdivisionComparison::Adjoint SubdivisionComparison::adjoint(const ComplexPtr& x) const {
  const Site& s = site(x);
  Adjoint a;
  a.v_objects = [this, x](const Cochain& y) { return v_object(x, y); };
  a.v_morphisms = [this, x](const CochainMorphism& m) { return v_morphism(x, m); };
  const Site* sp = &s;
  // eps_z: z -> v u z, eta = D z + k(sd^* z).
  a.unit = [this, x, sp](const Cochain& z) {
    const Cochain uz = sp->sd->collapse(z);
    return CochainMorphism{z, v_object(x, uz), sp->sd->homotopy(z) + twist(x, uz) + sp->defect};
  };
  // eta_y: u v y = y + delta sd^* k(y) -> y.
  a.counit = [this, x, sp](const Cochain& y) {
    const Cochain k = sp->sd->collapse(twist(x, y));
    return CochainMorphism{y + coboundary(k), y, -k};
  };
  return a;
}

SubdivisionComparison::Endo SubdivisionComparison::v(const ComplexPtr& x) const {
  StrictDiagram<Cochain, CochainMorphism> F, G;
  F.groupoids = {&fine(x)};
  G.groupoids = {&coarse(x)};
  StrictTransformation<Cochain, CochainMorphism> tr{{u(x)}};
  return build_weak_inverse(F, G, tr, {adjoint(x)}).components.at(0);
}

namespace {

SubdivisionComparison::Endo pullback_endo(const CocycleGroupoid* source, const CocycleGroupoid* target,
                                          std::shared_ptr<const SimplicialMap> f) {
  SubdivisionComparison::Endo e;
  e.source = source;
  e.target = target;
  e.on_objects = [f](const Cochain& w) { return pullback(*f, w); };
  e.on_morphisms = [f](const CochainMorphism& m) {
    return CochainMorphism{pullback(*f, m.source), pullback(*f, m.target), pullback(*f, m.eta)};
  };
  e.mu = [f, target](const Cochain& a, const Cochain& b) { return target->identity(pullback(*f, a + b)); };
  e.epsilon = [target] { return target->identity(target->unit()); };
  return e;
}

}  // namespace

SubdivisionComparison::Endo SubdivisionComparison::fine_pullback(const SimplicialMap& f) const {
  const Site& m = site(f.source());
  const Site& n = site(f.target());
  auto sdf = std::make_shared<const SimplicialMap>(subdivide_map(*m.sd, *n.sd, f));
  return pullback_endo(n.fine.get(), m.fine.get(), std::move(sdf));
}

SubdivisionComparison::Endo SubdivisionComparison::coarse_pullback(const SimplicialMap& f) const {
  const Site& m = site(f.source());
  const Site& n = site(f.target());
  return pullback_endo(n.coarse.get(), m.coarse.get(), std::make_shared<const SimplicialMap>(f));
}

SubdivisionComparison::Diagrams SubdivisionComparison::diagrams(const MapDiagram& d) const {
  Diagrams out;
  for (const auto& x : d.objects) {
    out.F.groupoids.push_back(&fine(x));
    out.G.groupoids.push_back(&coarse(x));
    out.u.components.push_back(u(x));
    out.adjoint.push_back(adjoint(x));
  }
  for (std::size_t i = 0; i < d.maps.size(); ++i) {
    out.F.pullbacks.push_back(fine_pullback(d.maps[i]));
    out.G.pullbacks.push_back(coarse_pullback(d.maps[i]));
  }
  out.F.arrows = out.G.arrows = d.arrows;
  out.F.composites = out.G.composites = d.composites;
  out.F.identities = out.G.identities = d.identities;
  return out;
}

CochainMorphism SubdivisionComparison::cell(const SimplicialMap& f, const Cochain& y) const {
  MapDiagram d;
  d.objects = {f.source(), f.target()};
  d.maps = {f};
  d.arrows = {{0, 1, "f"}};
  const Diagrams dg = diagrams(d);
  return build_weak_inverse(dg.F, dg.G, dg.u, dg.adjoint).cell(0, y);
}

CoherenceReport check_subdivision_inverse(const SubdivisionComparison& cmp, const MapDiagram& d,
                                          const CoherenceOptions& opt) {
  const auto dg = cmp.diagrams(d);
  CoherenceReport r = weak_inverse(dg.F, dg.G, dg.u, dg.adjoint, opt).report;
  r.instance = "subdivision comparison, n=" + std::to_string(cmp.degree());
  return r;
}

// ---------------------------------------------------------------------------
// ChernModel

ChernModel::ChernModel(int n, std::uint64_t perturb_seed) : n_(n), perturb_seed_(perturb_seed) {
  if (n < 1) throw ConstructionError("Chern model needs n >= 1");
}

// E(X, n) depends only on (X, n, perturb_seed), so every model shares one
// instance and objects can move between models unchanged.
const MappingGroupoid& ChernModel::groupoid(const ComplexPtr& x) const {
  static std::mutex registry_mutex;
  static std::map<std::tuple<const SimplicialSet*, int, std::uint64_t>,
                  std::pair<ComplexPtr, std::unique_ptr<MappingGroupoid>>>
      registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[{x.get(), n_, perturb_seed_}];
  if (!slot.second) {
    slot.first = x;
    slot.second = std::make_unique<MappingGroupoid>(x, n_, Coefficients::integers(), perturb_seed_);
  }
  return *slot.second;
}

const CocycleGroupoid& ChernModel::forms(const ComplexPtr& x) const {
  const ComplexPtr fx = forms_complex(x);
  std::lock_guard lock(mutex_);
  auto& slot = forms_[fx.get()];
  if (!slot.second) {
    slot.first = fx;
    slot.second = std::make_unique<CocycleGroupoid>(fx, n_);
  }
  return *slot.second;
}

Cochain ChernModel::fiber_integral(const ComplexPtr& x, const Cochain& c, int level) const {
  const auto& mc = groupoid(x).mapping_complex();
  if (c.degree() < level) return Cochain(x, 0);
  return fiber_integrate(c, *mc.level(level));
}

Cochain ChernModel::pull_object(const SimplicialMap& f, const Cochain& c) const {
  const auto& src = *groupoid(f.source()).mapping_complex().level(1)->product;
  const auto& dst = *groupoid(f.target()).mapping_complex().level(1)->product;
  return pullback(product_map(src, dst, f, SimplicialMap::identity(standard_simplex(1))), c);
}

MapMorphism ChernModel::pull_morphism(const SimplicialMap& f, const MapMorphism& h) const {
  const auto& src = *groupoid(f.source()).mapping_complex().level(2)->product;
  const auto& dst = *groupoid(f.target()).mapping_complex().level(2)->product;
  const SimplicialMap map = product_map(src, dst, f, SimplicialMap::identity(standard_simplex(2)));
  return {pull_object(f, h.source), pull_object(f, h.target), pullback(map, h.data)};
}

MonFunctor<MappingGroupoid, CocycleGroupoid> ChernModel::functor(const ComplexPtr& x) const {
  MonFunctor<MappingGroupoid, CocycleGroupoid> F;
  F.source = &groupoid(x);
  F.target = &forms(x);
  const MappingGroupoid* g = F.source;
  const CocycleGroupoid* t = F.target;
  F.on_objects = [this, x](const Cochain& c) { return ch_object(x, c); };
  F.on_morphisms = [this, x](const MapMorphism& h) {
    return CochainMorphism{ch_object(x, h.source), ch_object(x, h.target), ch_morphism(x, h)};
  };
  F.mu = [this, x, g](const Cochain& a, const Cochain& b) {
    return CochainMorphism{ch_object(x, a) + ch_object(x, b), ch_object(x, g->tensor(a, b)), ch_plus(x, a, b)};
  };
  F.epsilon = [this, x, g, t] { return t->zero_morphism(t->unit(), ch_object(x, g->unit())); };
  return F;
}

// ---------------------------------------------------------------------------
// StrictModel

StrictModel::StrictModel(int n, Integer iota_scale, std::uint64_t perturb_seed)
    : ChernModel(n, perturb_seed), scale_(std::move(iota_scale)) {}

std::string StrictModel::name() const {
  return scale_ == 1 ? "strict" : "strict(iota scale " + scale_.get_str() + ")";
}

Cochain StrictModel::ch_object(const ComplexPtr& x, const Cochain& c) const {
  return Rational(scale_) * fiber_integral(x, c, 1);
}

Cochain StrictModel::ch_morphism(const ComplexPtr& x, const MapMorphism& h) const {
  return Rational(scale_) * fiber_integral(x, h.data, 2);
}

Cochain StrictModel::ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const {
  return Rational(scale_) * fiber_integral(x, groupoid(x).sigma(a, b), 2);
}

Cochain StrictModel::ch_lower(const ComplexPtr&, const Cochain& z) const { return z; }

Cochain StrictModel::pullback_forms(const SimplicialMap& f, const Cochain& w) const { return pullback(f, w); }

Cochain StrictModel::pullback_correction(const SimplicialMap& f, const Cochain&) const {
  return Cochain(f.source(), n_ - 1);
}

Cochain StrictModel::rham(const ComplexPtr&, const Cochain& w) const { return w; }

// ---------------------------------------------------------------------------
// SubdividedModel

SubdividedModel::SubdividedModel(int n, std::uint64_t twist_seed, std::uint64_t perturb_seed)
    : ChernModel(n, perturb_seed), cmp_(n, twist_seed) {}

std::string SubdividedModel::name() const { return "subdivided"; }

ComplexPtr SubdividedModel::forms_complex(const ComplexPtr& x) const { return cmp_.subdivision(x).complex(); }

Cochain SubdividedModel::ch_object(const ComplexPtr& x, const Cochain& c) const {
  return cmp_.v_object(x, fiber_integral(x, c, 1));
}

Cochain SubdividedModel::ch_morphism(const ComplexPtr& x, const MapMorphism& h) const {
  const CochainMorphism m{fiber_integral(x, h.source, 1), fiber_integral(x, h.target, 1), fiber_integral(x, h.data, 2)};
  return cmp_.v_morphism(x, m).eta;
}

Cochain SubdividedModel::ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const {
  const Cochain wa = fiber_integral(x, a, 1), wb = fiber_integral(x, b, 1);
  const Cochain wab = fiber_integral(x, groupoid(x).tensor(a, b), 1);
  const CochainMorphism mu{wa + wb, wab, fiber_integral(x, groupoid(x).sigma(a, b), 2)};
  return cmp_.v(x).mu(wa, wb).eta + cmp_.v_morphism(x, mu).eta;
}

Cochain SubdividedModel::ch_lower(const ComplexPtr& x, const Cochain& z) const {
  return cmp_.subdivision(x).refine(z);
}

Cochain SubdividedModel::pullback_forms(const SimplicialMap& f, const Cochain& w) const {
  return pullback(subdivide_map(cmp_.subdivision(f.source()), cmp_.subdivision(f.target()), f), w);
}

Cochain SubdividedModel::pullback_correction(const SimplicialMap& f, const Cochain& c) const {
  return -cmp_.cell(f, fiber_integral(f.target(), c, 1)).eta;
}

Cochain SubdividedModel::rham(const ComplexPtr& x, const Cochain& w) const { return cmp_.subdivision(x).collapse(w); }

// ---------------------------------------------------------------------------
// AltIotaModel

AltIotaModel::AltIotaModel(int n, std::uint64_t beta_seed, std::uint64_t perturb_seed)
    : ChernModel(n, perturb_seed), beta_seed_(beta_seed) {
  if (beta_seed == 0) throw ConstructionError("the alternative fundamental cocycle needs a nonzero seed");
}

std::string AltIotaModel::name() const { return "alt-iota"; }

Cochain AltIotaModel::beta(const ComplexPtr& x, const Cochain& w) const {
  return LinearTwist(beta_seed_, *x, n_, x)(w, x, n_ - 1);
}

Cochain AltIotaModel::ch_object(const ComplexPtr& x, const Cochain& c) const {
  const Cochain w = fiber_integral(x, c, 1);
  return w + coboundary(beta(x, w));
}

Cochain AltIotaModel::ch_morphism(const ComplexPtr& x, const MapMorphism& h) const {
  return fiber_integral(x, h.data, 2) + beta(x, fiber_integral(x, h.target, 1)) -
         beta(x, fiber_integral(x, h.source, 1));
}

Cochain AltIotaModel::ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const {
  const Cochain wa = fiber_integral(x, a, 1), wb = fiber_integral(x, b, 1);
  const Cochain wab = fiber_integral(x, groupoid(x).tensor(a, b), 1);
  return fiber_integral(x, groupoid(x).sigma(a, b), 2) + beta(x, wab) - beta(x, wa) - beta(x, wb);
}

Cochain AltIotaModel::ch_lower(const ComplexPtr&, const Cochain& z) const { return z; }

Cochain AltIotaModel::pullback_forms(const SimplicialMap& f, const Cochain& w) const { return pullback(f, w); }

Cochain AltIotaModel::pullback_correction(const SimplicialMap& f, const Cochain& c) const {
  const Cochain wn = fiber_integral(f.target(), c, 1);
  const Cochain wm = fiber_integral(f.source(), pull_object(f, c), 1);
  return pullback(f, beta(f.target(), wn)) - beta(f.source(), wm);
}

Cochain AltIotaModel::rham(const ComplexPtr&, const Cochain& w) const { return w; }

// ---------------------------------------------------------------------------
// Checks

CoherenceReport check_chern_witnesses(const StrictModel& model, const ComplexPtr& x, int trials,
                                      std::uint64_t seed) {
  const MappingGroupoid& g = model.groupoid(x);
  const int n = model.degree();
  const Rational s(model.scale());
  auto chm = [&](const MapMorphism& h) { return model.ch_morphism(x, h); };
  auto mu = [&](const Cochain& a, const Cochain& b) { return model.ch_plus(x, a, b); };
  auto w3 = [&](const Cochain& filler) { return s * model.fiber_integral(x, filler, 3); };
  // The defect must be delta W; below degree 0 the witness is empty and
  // the defect must vanish.
  auto witnessed = [&](const Cochain& defect, const Cochain& w) {
    Decision d;
    d.equal = n >= 2 ? defect == coboundary(w) : defect.is_zero();
    d.evidence = {{"kind", "fiber-integral witness"}, {"degree", n - 2}};
    return d;
  };
  auto right_filler = [&](const Cochain& a) {
    const OplusResult a_unit = g.oplus(a, g.zero_object());
    return g.inverse_data({a, a_unit.object, a_unit.sigma}).fillers.at(0);
  };

  Recorder slot;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Cochain a = g.sample_object(rng), b = g.sample_object(rng), c = g.sample_object(rng);
    const MapMorphism h = g.sample_morphism(a, rng);
    const MapMorphism h2 = g.sample_morphism(h.target, rng);
    const MapMorphism k = g.sample_morphism(b, rng);
    const std::string where = "trial " + std::to_string(t) + " (a=" + g.describe(a) + ", b=" + g.describe(b) + ")";
    auto at = [&where] { return where; };

    slot("preserves-identity").record(literal(chm(g.identity(a)).is_zero(), "degenerate"), at);

    const FilledMorphism comp = g.compose_data(h, h2);
    slot("preserves-composition")
        .record(witnessed(chm(comp.morphism) - chm(h) - chm(h2), w3(comp.fillers[0])), at);

    const FilledMorphism sum = g.oplus_data(h, k);
    slot("naturality-mu")
        .record(witnessed(chm(h) + chm(k) + mu(h.target, k.target) - mu(a, b) - chm(sum.morphism),
                          w3(sum.fillers[1]) - w3(sum.fillers[0])),
                at);

    const FilledMorphism assoc = g.associator_data(a, b, c);
    slot("associativity-mu")
        .record(witnessed(mu(a, b) + mu(g.tensor(a, b), c) + chm(assoc.morphism) - mu(b, c) - mu(a, g.tensor(b, c)),
                          -w3(assoc.fillers[0] + assoc.fillers[1])),
                at);

    const FilledMorphism rho = g.rho_data(a);
    slot("left-unit-mu").record(witnessed(mu(g.unit(), a) + chm(rho.morphism), -w3(rho.fillers[0])), at);
    slot("right-unit-mu").record(witnessed(mu(a, g.unit()) + chm(g.right_unitor(a)), -w3(right_filler(a))), at);

    slot("symmetry-mu")
        .record(witnessed(mu(a, b) + chm(g.braiding(a, b)) - mu(b, a),
                          -w3(g.rho_data(b).fillers[0]) - w3(right_filler(a))),
                at);
  }
  return slot.finish("Chern witnesses on " + x->name() + ", n=" + std::to_string(n));
}

CoherenceReport check_loop_consistency(const StrictModel& model, const ComplexPtr& x, int trials,
                                       std::uint64_t seed) {
  const MappingGroupoid& g = model.groupoid(x);
  const CylinderModel cyl(g);
  const ExactnessTest& exact = model.forms(x).exactness();
  const IntegerCohomology lower(x, model.degree() - 1);
  const Rational s(model.scale());
  Recorder slot;
  std::mt19937_64 rng(seed);
  const Cochain zero = g.zero_object();
  for (int t = 0; t < trials; ++t) {
    Cochain u(x, model.degree() - 1);
    for (std::size_t i = 0; i < lower.cocycle_rank(); ++i) {
      u += Rational(static_cast<long>(rng() % 5) - 2) * lower.cocycle_basis(i);
    }
    const MapMorphism k = g.sample_morphism(zero, rng);
    const MapMorphism loop = g.compose(g.compose(g.twist(g.identity(zero), u), k), g.inverse(k));
    const Cochain from_triangle = model.ch_morphism(x, loop);
    const Cochain from_cylinder = s * cyl.loop_class(cyl.from_triangle(loop));
    const std::string where = "trial " + std::to_string(t);
    slot("loop-class").record(exact_decision(exact, from_triangle + from_cylinder), [&where] { return where; });
    slot("loop-recovers-twist").record(exact_decision(exact, from_triangle - s * u), [&where] { return where; });
  }
  return slot.finish("loop consistency on " + x->name());
}

MonFunctor<MappingGroupoid, CocycleGroupoid> corrupted_chern(const StrictModel& model, const ComplexPtr& x) {
  auto F = model.functor(x);
  auto top = std::make_shared<const IntegerCohomology>(x, model.degree());
  const IntegerCohomology lower(x, model.degree() - 1);
  std::optional<std::size_t> coord;
  for (std::size_t i = 0; i < top->summands(); ++i) {
    if (top->orders()[i] == 0) {
      coord = i;
      break;
    }
  }
  std::optional<Cochain> zeta;
  for (std::size_t i = 0; i < lower.summands(); ++i) {
    if (lower.orders()[i] == 0) {
      zeta = lower.generator(i);
      break;
    }
  }
  if (!coord || !zeta) throw Error("corrupted_chern: " + x->name() + " needs free classes in degrees n and n-1");
  const MappingGroupoid* g = F.source;
  auto base = F.mu;
  F.mu = [base, top, g, i = *coord, z = *zeta](const Cochain& a, const Cochain& b) {
    CochainMorphism m = base(a, b);
    m.eta += Rational(top->class_of(g->cocycle_of(a)).at(i)) * z;
    return m;
  };
  return F;
}

CoherenceReport check_pullback_corrections(const ChernModel& model, const MapDiagram& d, int trials,
                                           std::uint64_t seed) {
  Recorder slot;
  std::mt19937_64 rng(seed);
  auto ch_f = [&](int arrow, const Cochain& c) {
    return model.pullback_correction(d.maps[static_cast<std::size_t>(arrow)], c);
  };
  const std::size_t arrows = d.arrows.size();
  for (int t = 0; t < trials; ++t) {
    const int a = static_cast<int>(static_cast<std::size_t>(t) % arrows);
    const SimplicialMap& f = d.maps[static_cast<std::size_t>(a)];
    const ComplexPtr m = f.source(), n = f.target();
    const MappingGroupoid& gn = model.groupoid(n);
    const Cochain c = gn.sample_object(rng);
    const MapMorphism h = gn.sample_morphism(c, rng);
    const std::string where = "arrow " + d.arrows[static_cast<std::size_t>(a)].name + " trial " + std::to_string(t) +
                              " (c=" + gn.describe(c) + ")";
    auto at = [&where] { return where; };

    const Cochain lhs1 = coboundary(ch_f(a, c));
    const Cochain rhs1 = model.pullback_forms(f, model.ch_object(n, c)) - model.ch_object(m, model.pull_object(f, c));
    slot("eq1-coboundary").record(literal(lhs1 == rhs1, "literal"), at);

    const Cochain eq2 = model.pullback_forms(f, model.ch_morphism(n, h)) + ch_f(a, c) - ch_f(a, h.target) -
                        model.ch_morphism(m, model.pull_morphism(f, h));
    slot("eq2-naturality").record(exact_decision(model.forms(m).exactness(), eq2), at);

    if (!d.composites.empty()) {
      const auto& cp = d.composites[static_cast<std::size_t>(t) % d.composites.size()];
      const SimplicialMap& first = d.maps[static_cast<std::size_t>(cp.first)];
      const SimplicialMap& second = d.maps[static_cast<std::size_t>(cp.second)];
      const ComplexPtr k = second.target();
      const MappingGroupoid& gk = model.groupoid(k);
      const Cochain ck = gk.sample_object(rng);
      const Cochain eq3 = ch_f(cp.composite, ck) - ch_f(cp.first, model.pull_object(second, ck)) -
                          model.pullback_forms(first, ch_f(cp.second, ck));
      const std::string w3 = "composite " + d.arrows[static_cast<std::size_t>(cp.composite)].name + " trial " +
                             std::to_string(t);
      slot("eq3-composition").record(exact_decision(model.forms(first.source()).exactness(), eq3), [&w3] { return w3; });
    }
    if (!d.identities.empty()) {
      const int id = d.identities[static_cast<std::size_t>(t) % d.identities.size()];
      const ComplexPtr y = d.maps[static_cast<std::size_t>(id)].target();
      const Cochain cy = model.groupoid(y).sample_object(rng);
      const std::string w4 = "identity " + d.arrows[static_cast<std::size_t>(id)].name + " trial " + std::to_string(t);
      slot("eq4-identity").record(exact_decision(model.forms(y).exactness(), ch_f(id, cy)), [&w4] { return w4; });
    }
  }
  return slot.finish("pullback corrections, " + model.name() + " model, n=" + std::to_string(model.degree()));
}

CoherenceReport check_iota_modification(const AltIotaModel& alt, const MapDiagram& d, int trials,
                                        std::uint64_t seed) {
  Recorder slot;
  std::mt19937_64 rng(seed);
  auto strict_ch = [&](const ComplexPtr& x, const Cochain& c) { return alt.fiber_integral(x, c, 1); };
  auto theta = [&](const ComplexPtr& x, const Cochain& c) { return alt.beta(x, strict_ch(x, c)); };
  for (const auto& x : d.objects) {
    const MappingGroupoid& g = alt.groupoid(x);
    const ExactnessTest& exact = alt.forms(x).exactness();
    for (int t = 0; t < trials; ++t) {
      const Cochain a = g.sample_object(rng), b = g.sample_object(rng);
      const MapMorphism h = g.sample_morphism(a, rng);
      const std::string where = x->name() + " trial " + std::to_string(t);
      auto at = [&where] { return where; };
      slot("theta-component")
          .record(literal(coboundary(theta(x, a)) == alt.ch_object(x, a) - strict_ch(x, a), "literal"), at);
      const Cochain strict_h = alt.fiber_integral(x, h.data, 2);
      slot("theta-natural")
          .record(exact_decision(exact, strict_h + theta(x, h.target) - theta(x, a) - alt.ch_morphism(x, h)), at);
      const Cochain strict_mu = alt.fiber_integral(x, g.sigma(a, b), 2);
      slot("theta-monoidal")
          .record(exact_decision(exact, strict_mu + theta(x, g.tensor(a, b)) - theta(x, a) - theta(x, b) -
                                       alt.ch_plus(x, a, b)),
                  at);
    }
  }
  for (std::size_t i = 0; i < d.maps.size(); ++i) {
    const SimplicialMap& f = d.maps[i];
    const MappingGroupoid& gn = alt.groupoid(f.target());
    for (int t = 0; t < trials; ++t) {
      const Cochain c = gn.sample_object(rng);
      const Cochain expected = pullback(f, theta(f.target(), c)) - theta(f.source(), alt.pull_object(f, c));
      const std::string where = "arrow " + d.arrows[i].name + " trial " + std::to_string(t);
      slot("theta-corrections")
          .record(exact_decision(alt.forms(f.source()).exactness(), alt.pullback_correction(f, c) - expected),
                  [&where] { return where; });
    }
  }
  return slot.finish("iota modification, n=" + std::to_string(alt.degree()));
}

}  // namespace simdiff
