#include "simdiff/groupoid.hpp"

#include <sstream>

#include "simdiff/fixtures.hpp"

namespace simdiff {

namespace {

bool is_coboundary_or_zero(const Cochain& d, const Coefficients& coeffs) {
  const Cochain c = normalize(d, coeffs);
  if (c.degree() == 0) return c.is_zero();
  return solve_coboundary(c, coeffs).solvable;
}

std::uint64_t digest(const Cochain& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& v : c.values()) {
    for (char ch : v.get_str()) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    h = (h ^ 0x3b) * 1099511628211ULL;
  }
  return h;
}

std::size_t support(const Cochain& c) {
  std::size_t k = 0;
  for (const auto& v : c.values()) k += v != 0 ? 1 : 0;
  return k;
}

// Collapse Delta^1 x Delta^1 -> Delta^2 sending (s, t) to 0, 1, 0, 2.
int collapse(int s, int t) { return s == 0 ? 0 : (t == 0 ? 1 : 2); }

SimplicialMap collapse_map(const MappingComplex& cylinder, const MappingComplex& triangle) {
  const auto& outer = *cylinder.level(1)->product;  // (X x Delta^1) x Delta^1
  const auto& inner = *triangle.level(1)->product;  // X x Delta^1
  const auto& target = *triangle.level(2)->product;
  const auto& x = *inner.left();
  const auto& d1 = *inner.right();
  std::vector<Simplex> images;
  images.reserve(outer.complex()->size());
  for (std::uint32_t gen = 0; gen < outer.complex()->size(); ++gen) {
    const auto& [a, b] = outer.components(gen);
    const auto& [xs, ss] = inner.components(a.gen);
    const Simplex xsimp = x.apply(xs, a.map);
    const auto s = delta_vertices(d1.apply(ss, a.map));
    const auto t = delta_vertices(b);
    std::vector<int> q(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) q[i] = collapse(s[i], t[i]);
    images.push_back(target.simplex_of(xsimp, delta_simplex(2, q)));
  }
  return SimplicialMap(outer.complex(), target.complex(), std::move(images));
}

}  // namespace

nlohmann::json StrictnessReport::to_json() const {
  return {{"samples", samples},
          {"unit_left_strict", unit_left_strict},
          {"unit_right_strict", unit_right_strict},
          {"associative_strict", associative_strict},
          {"unitors_trivial", unitors_trivial},
          {"associator_trivial", associator_trivial},
          {"braiding_trivial", braiding_trivial}};
}

MappingGroupoid::MappingGroupoid(ComplexPtr base, int n, Coefficients coeffs, std::uint64_t perturb_seed)
    : n_(n), mc_(base, n + 1, std::move(coeffs), 3), perturb_seed_(perturb_seed) {
  if (n < 1) throw ConstructionError("mapping groupoid needs n >= 1");
  IntegerCohomology hn(base, n), hn1(base, n - 1);
  for (std::size_t i = 0; i < hn.cocycle_rank(); ++i) basis_n_.push_back(hn.cocycle_basis(i));
  for (std::size_t i = 0; i < hn1.cocycle_rank(); ++i) basis_n1_.push_back(hn1.cocycle_basis(i));
}

std::string MappingGroupoid::name() const {
  return "E(" + mc_.base()->name() + ", n=" + std::to_string(n_) + ", " + coeffs().name() + ")";
}

Cochain MappingGroupoid::object_from_cocycle(const Cochain& w) const {
  return mc_.normalize(suspend(w, *mc_.level(1)));
}

Cochain MappingGroupoid::cocycle_of(const Cochain& f) const { return mc_.normalize(loop(f, *mc_.level(1))); }

bool MappingGroupoid::is_object(const Cochain& f) const {
  return f.degree() == n_ + 1 && f.complex() == mc_.level(1)->complex() && mc_.is_cocycle(f) &&
         mc_.face(f, 0).is_zero() && mc_.face(f, 1).is_zero();
}

bool MappingGroupoid::is_morphism(const MapMorphism& h) const {
  return h.data.complex() == mc_.level(2)->complex() && mc_.is_cocycle(h.data) && mc_.face(h.data, 2) == h.source &&
         mc_.face(h.data, 1) == h.target && mc_.face(h.data, 0).is_zero();
}

Cochain MappingGroupoid::fill3(int k, std::vector<Cochain> faces) const {
  return mc_.moore_fill_unchecked(3, k, faces, perturb_seed_);
}

Cochain MappingGroupoid::sigma(const Cochain& f, const Cochain& g) const {
  return mc_.moore_fill_unchecked(2, 1, {g, Cochain(), f});
}

OplusResult MappingGroupoid::oplus(const Cochain& f, const Cochain& g) const {
  Cochain s = sigma(f, g);
  Cochain obj = mc_.face(s, 1);
  return {std::move(obj), std::move(s)};
}

MapMorphism MappingGroupoid::identity(const Cochain& f) const { return {f, f, mc_.degeneracy(f, 1)}; }

FilledMorphism MappingGroupoid::compose_data(const MapMorphism& first, const MapMorphism& second) const {
  if (first.target != second.source) throw Error("compose: target of the first morphism is not the source of the second");
  // Horn on vertices 0..3 missing (0,1,3): (1,2,3) = *, (0,2,3) = second, (0,1,2) = first.
  Cochain g = fill3(2, {mc_.zero(2), second.data, Cochain(), first.data});
  MapMorphism m{first.source, second.target, mc_.face(g, 2)};
  return {std::move(m), {std::move(g)}};
}

MapMorphism MappingGroupoid::compose(const MapMorphism& first, const MapMorphism& second) const {
  return compose_data(first, second).morphism;
}

MapMorphism MappingGroupoid::inverse(const MapMorphism& m) const { return inverse_data(m).morphism; }

FilledMorphism MappingGroupoid::inverse_data(const MapMorphism& m) const {
  // (1,2,3) = *, (0,1,3) = s_1 f, (0,1,2) = H; the face (0,2,3) runs g -> f.
  Cochain g = fill3(1, {mc_.zero(2), Cochain(), mc_.degeneracy(m.source, 1), m.data});
  MapMorphism inv{m.target, m.source, mc_.face(g, 1)};
  return {std::move(inv), {std::move(g)}};
}

FilledMorphism MappingGroupoid::oplus_data(const MapMorphism& h0, const MapMorphism& h1) const {
  const OplusResult f = oplus(h0.source, h1.source);
  const OplusResult g = oplus(h0.target, h1.target);
  // Vertices: 0 -f0-> 1 -f1-> 2, 0 -g0-> 3 -g1-> 4, with 1 -g1-> 4.
  // A = (0,1,3,4): (1,3,4) = s_0 g1, (0,3,4) = sigma(g0, g1), (0,1,3) = H0.
  Cochain a = fill3(2, {mc_.degeneracy(h1.target, 0), g.sigma, Cochain(), h0.data});
  // B = (0,1,2,4): (1,2,4) = H1, (0,1,4) = d_2 A, (0,1,2) = sigma(f0, f1).
  Cochain b = fill3(1, {h1.data, Cochain(), mc_.face(a, 2), f.sigma});
  MapMorphism m{f.object, g.object, mc_.face(b, 1)};
  return {std::move(m), {std::move(a), std::move(b)}};
}

MapMorphism MappingGroupoid::tensor_morphisms(const MapMorphism& a, const MapMorphism& b) const {
  return oplus_data(a, b).morphism;
}

FilledMorphism MappingGroupoid::rho_data(const Cochain& f) const {
  const OplusResult unit_f = oplus(zero_object(), f);
  // (1,2,3) = s_1 f, (0,1,3) = s_0 f, (0,1,2) = sigma(*, f).
  Cochain tau = fill3(1, {mc_.degeneracy(f, 1), Cochain(), mc_.degeneracy(f, 0), unit_f.sigma});
  MapMorphism m{unit_f.object, f, mc_.face(tau, 1)};
  return {std::move(m), {std::move(tau)}};
}

MapMorphism MappingGroupoid::right_unitor(const Cochain& f) const {
  const OplusResult f_unit = oplus(f, zero_object());
  return inverse({f, f_unit.object, f_unit.sigma});
}

FilledMorphism MappingGroupoid::associator_data(const Cochain& h, const Cochain& g, const Cochain& f) const {
  const OplusResult hg = oplus(h, g);
  const OplusResult gf = oplus(g, f);
  const OplusResult hg_f = oplus(hg.object, f);
  const OplusResult h_gf = oplus(h, gf.object);
  // tau = (0,1,2,3) with 0 -h-> 1 -g-> 2 -f-> 3; its face (0,1,3) runs
  // h then g (+) f with long edge (h (+) g) (+) f.
  Cochain tau = fill3(2, {gf.sigma, hg_f.sigma, Cochain(), hg.sigma});
  // kappa = (0,1,3,4) with 3 -*-> 4 and 0 -> 4 = h (+) (g (+) f).
  Cochain kappa = fill3(1, {mc_.degeneracy(gf.object, 1), Cochain(), h_gf.sigma, mc_.face(tau, 2)});
  MapMorphism m{hg_f.object, h_gf.object, mc_.face(kappa, 1)};
  return {std::move(m), {std::move(tau), std::move(kappa)}};
}

MapMorphism MappingGroupoid::associator(const Cochain& a, const Cochain& b, const Cochain& c) const {
  return associator_data(a, b, c).morphism;
}

MapMorphism MappingGroupoid::pointwise_sum(const MapMorphism& a, const MapMorphism& b) const {
  return {mc_.normalize(a.source + b.source), mc_.normalize(a.target + b.target), mc_.normalize(a.data + b.data)};
}

MapMorphism MappingGroupoid::braiding(const Cochain& a, const Cochain& b) const {
  // a (+) b = (* (+) b) + (a (+) *) -> b + a = b (+) a.
  MapMorphism m = pointwise_sum(left_unitor(b), right_unitor(a));
  if (m.source != tensor(a, b) || m.target != tensor(b, a)) {
    throw Error("braiding: the two concatenations do not interchange on these objects");
  }
  return m;
}

ClassEquality MappingGroupoid::class_equal(const MapMorphism& a, const MapMorphism& b) const {
  if (a.source != b.source || a.target != b.target) throw Error("class equality of non-parallel morphisms");
  ClassEquality out;
  auto r = mc_.extend(3, {b.data, a.data, mc_.degeneracy(a.target, 0), mc_.degeneracy(a.source, 0)});
  out.equal = r.exists;
  if (r.exists) {
    out.witness = std::move(r.filler);
  } else {
    out.certificate = std::move(r.certificate);
  }
  const Cochain diff = fiber_integrate(b.data - a.data, *mc_.level(2));
  out.integral_agrees = is_coboundary_or_zero(diff, coeffs()) == out.equal;
  return out;
}

Decision MappingGroupoid::decide(const MapMorphism& a, const MapMorphism& b) const {
  ClassEquality c = class_equal(a, b);
  Decision d;
  d.equal = c.equal && c.integral_agrees;
  if (c.equal) {
    d.evidence = {{"kind", "witness"},
                  {"support", support(c.witness)},
                  {"digest", digest(c.witness)},
                  {"integral_agrees", c.integral_agrees}};
  } else {
    nlohmann::json cert = nlohmann::json::array();
    for (std::size_t i = 0; i < c.certificate.size(); ++i) {
      if (c.certificate[i] != 0) cert.push_back({i, format_rational(c.certificate[i])});
    }
    d.evidence = {{"kind", "obstruction"}, {"certificate", cert}, {"integral_agrees", c.integral_agrees}};
  }
  return d;
}

std::optional<MapMorphism> MappingGroupoid::connect(const Cochain& f, const Cochain& g) const {
  auto r = mc_.extend(2, {mc_.zero(1), g, f});
  if (!r.exists) return std::nullopt;
  return MapMorphism{f, g, std::move(r.filler)};
}

MapMorphism MappingGroupoid::twist(const MapMorphism& h, const Cochain& u) const {
  return {h.source, h.target, mc_.normalize(h.data + cross(*mc_.level(2)->product, top_indicator(2), u))};
}

Cochain MappingGroupoid::random_cocycle(int degree, std::mt19937_64& rng) const {
  const auto& basis = degree == n_ ? basis_n_ : basis_n1_;
  Cochain z(mc_.base(), degree);
  for (const auto& b : basis) z += Rational(static_cast<long>(rng() % 5) - 2) * b;
  if (degree >= 1) z += coboundary(random_cochain(mc_.base(), degree - 1, rng, -2, 2));
  return mc_.normalize(z);
}

Cochain MappingGroupoid::random_interior(int level, std::mt19937_64& rng) const {
  auto prism = mc_.level(level);
  const unsigned full = (1u << (level + 1)) - 1;
  Cochain beta(prism->complex(), n_);
  const auto gens = prism->complex()->generators_of_dim(n_);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (delta_leg_mask(*prism, gens[i]) == full) beta.at(i) = static_cast<long>(rng() % 5) - 2;
  }
  return beta;
}

Cochain MappingGroupoid::sample_object(std::mt19937_64& rng) const {
  return mc_.normalize(object_from_cocycle(random_cocycle(n_, rng)) + coboundary(random_interior(1, rng)));
}

MapMorphism MappingGroupoid::sample_morphism(const Cochain& from, std::mt19937_64& rng) const {
  const Cochain to = mc_.normalize(from + coboundary(random_interior(1, rng)));
  auto h = connect(from, to);
  if (!h) throw Error("sample_morphism: could not connect cohomologous objects");
  MapMorphism m = twist(*h, random_cocycle(n_ - 1, rng));
  m.data = mc_.normalize(m.data + coboundary(random_interior(2, rng)));
  return m;
}

std::string MappingGroupoid::describe(const Cochain& f) const {
  const Cochain w = cocycle_of(f);
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w.at(i).get_str();
  os << "]";
  return os.str();
}

StrictnessReport MappingGroupoid::strictness(int samples, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  StrictnessReport r;
  r.samples = samples;
  const Cochain unit = zero_object();
  for (int i = 0; i < samples; ++i) {
    const Cochain f = sample_object(rng), g = sample_object(rng), h = sample_object(rng);
    r.unit_left_strict = r.unit_left_strict && tensor(unit, f) == f;
    r.unit_right_strict = r.unit_right_strict && tensor(f, unit) == f;
    r.associative_strict = r.associative_strict && tensor(tensor(h, g), f) == tensor(h, tensor(g, f));
    if (r.unit_left_strict && r.unit_right_strict) {
      r.unitors_trivial = r.unitors_trivial && equal(left_unitor(f), identity(f)) && equal(right_unitor(f), identity(f));
    } else {
      r.unitors_trivial = false;
    }
    if (r.associative_strict) {
      r.associator_trivial = r.associator_trivial && equal(associator(h, g, f), identity(tensor(tensor(h, g), f)));
    } else {
      r.associator_trivial = false;
    }
    const MapMorphism gamma = braiding(f, g);
    r.braiding_trivial = r.braiding_trivial && gamma.source == gamma.target && equal(gamma, identity(gamma.source));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cylinder model

CylinderModel::CylinderModel(const MappingGroupoid& g)
    : g_(&g),
      mc_(g.mapping_complex().level(1)->complex(), g.degree() + 1, g.coeffs(), 2),
      q_(collapse_map(mc_, g.mapping_complex())) {}

Cochain CylinderModel::from_triangle(const MapMorphism& h) const { return mc_.normalize(pullback(q_, h.data)); }

bool CylinderModel::is_morphism(const Cochain& c, const Cochain& f, const Cochain& g) const {
  if (c.complex() != mc_.level(1)->complex() || !mc_.is_cocycle(c)) return false;
  if (mc_.to_base(mc_.face(c, 1)) != f || mc_.to_base(mc_.face(c, 0)) != g) return false;
  const auto& outer = *mc_.level(1)->product;
  const auto& inner = *g_->mapping_complex().level(1)->product;
  const auto gens = outer.complex()->generators_of_dim(c.degree());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (c.at(i) == 0) continue;
    const auto& a = outer.components(gens[i]).first;
    const auto s = delta_vertices(inner.right()->apply(inner.components(a.gen).second, a.map));
    if (s.front() == s.back()) return false;
  }
  return true;
}

Cochain CylinderModel::compose(const Cochain& first, const Cochain& second) const {
  return mc_.face(mc_.moore_fill(2, 1, {second, Cochain(), first}), 1);
}

bool CylinderModel::equal(const Cochain& a, const Cochain& b) const {
  return is_coboundary_or_zero(loop_class(a - b), g_->coeffs());
}

Cochain CylinderModel::loop_class(const Cochain& c) const {
  const Cochain once = fiber_integrate(c, *mc_.level(1));
  return fiber_integrate(once, *g_->mapping_complex().level(1));
}

MapMorphism CylinderModel::to_triangle(const Cochain& c, const Cochain& f, const Cochain& g) const {
  auto h0 = g_->connect(f, g);
  if (!h0) throw Error("cylinder morphism between non-isomorphic objects");
  const Cochain once = fiber_integrate(c - from_triangle(*h0), *mc_.level(1));
  const Cochain u = fiber_integrate(once, *g_->mapping_complex().level(1));
  for (const Rational& sign : {Rational(1), Rational(-1)}) {
    MapMorphism h = g_->twist(*h0, sign * u);
    if (equal(from_triangle(h), c)) return h;
  }
  throw Error("cylinder class is not realized by a triangle morphism");
}

}  // namespace simdiff
