#include "simdiff/em.hpp"

#include <bit>
#include <random>
#include <sstream>

#include "simdiff/fixtures.hpp"

namespace simdiff {

namespace {

std::uint32_t top_generator(int m) { return (1u << (m + 1)) - 2; }

std::string describe_vertices(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// All injective monotone maps [a] -> [m], as vertex lists.
std::vector<OrdMap> injections(int a, int m) {
  std::vector<OrdMap> out;
  for (unsigned mask = 0; mask < (1u << (m + 1)); ++mask) {
    if (std::popcount(mask) != a + 1) continue;
    OrdMap th;
    for (int v = 0; v <= m; ++v) {
      if (mask & (1u << v)) th.push_back(static_cast<std::uint8_t>(v));
    }
    out.push_back(std::move(th));
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_cochain(const Cochain& c, std::uint64_t h) {
  for (const auto& v : c.values()) {
    for (char ch : v.get_str()) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    h = (h ^ 0x2c) * 1099511628211ULL;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// EMSpace

EMSpace::EMSpace(int n, Coefficients coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 0) throw ConstructionError("EM space degree must be >= 0");
  if (coeffs_.kind != CoeffKind::Integers && coeffs_.kind != CoeffKind::Modular) {
    throw ConstructionError("EM spaces support Z and Z/k coefficients");
  }
}

const std::vector<Cochain>& EMSpace::level_basis(int m) const {
  std::lock_guard lock(mutex_);
  auto it = bases_.find(m);
  if (it != bases_.end()) return it->second;
  auto d = standard_simplex(m);
  std::vector<Cochain> basis;
  if (n_ <= m) {
    const IntegerKernel k = integer_kernel(to_dense(coboundary_matrix(*d, n_)));
    for (std::size_t j = 0; j < k.basis.cols(); ++j) {
      Cochain c(d, n_);
      for (std::size_t r = 0; r < c.size(); ++r) c.at(r) = Rational(k.basis(r, j));
      basis.push_back(simdiff::normalize(c, coeffs_));
    }
  }
  return bases_.emplace(m, std::move(basis)).first->second;
}

Cochain EMSpace::basepoint(int m) const { return Cochain(standard_simplex(m), n_); }

bool EMSpace::contains(const Cochain& y) const {
  if (y.degree() != n_) return false;
  const int m = y.complex()->dimension();
  if (!same_complex(y.complex(), standard_simplex(m))) return false;
  for (const auto& v : y.values()) {
    if (!is_integral(v) || coeffs_.normalize(v) != v) return false;
  }
  return simdiff::normalize(coboundary(y), coeffs_).is_zero();
}

Cochain EMSpace::apply(const Cochain& y, const OrdMap& theta) const {
  const int m = y.complex()->dimension();
  return simdiff::normalize(pullback(simplex_operator_map(theta, m), y), coeffs_);
}

Cochain EMSpace::face(const Cochain& y, int i) const { return apply(y, coface(y.complex()->dimension(), i)); }

Cochain EMSpace::degeneracy(const Cochain& y, int j) const {
  return apply(y, codegeneracy(y.complex()->dimension(), j));
}

void EMSpace::check_identities(int max_level, unsigned seed) const {
  std::mt19937_64 rng(seed);
  for (int m = 1; m <= max_level; ++m) {
    const Cochain y = random_simplex(m, rng);
    if (!contains(y)) throw ConstructionError("random simplex is not a cocycle at level " + std::to_string(m));
    for (int j = 1; j <= m && m >= 2; ++j) {
      for (int i = 0; i < j; ++i) {
        if (face(face(y, j), i) != face(face(y, i), j - 1)) {
          throw ConstructionError("K(A,n): d_i d_j identity fails at level " + std::to_string(m));
        }
      }
    }
    for (int j = 0; j <= m; ++j) {
      const Cochain s = degeneracy(y, j);
      if (!contains(s)) throw ConstructionError("degeneracy leaves K(A,n)");
      for (int i = 0; i <= m + 1; ++i) {
        Cochain expected = (i == j || i == j + 1) ? y
                           : i < j                ? degeneracy(face(y, i), j - 1)
                                                  : degeneracy(face(y, i - 1), j);
        if (face(s, i) != expected) {
          throw ConstructionError("K(A,n): d_" + std::to_string(i) + " s_" + std::to_string(j) +
                                  " identity fails at level " + std::to_string(m));
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Fundamental cocycle and maps

Rational FundamentalCocycle::evaluate(const Cochain& y) const {
  const int n = space->degree();
  if (y.degree() != n || y.complex()->dimension() != n) throw Error("iota evaluated off level n");
  return space->coeffs().normalize(Rational(scale) * y.value(top_generator(n)));
}

Rational FundamentalCocycle::coboundary_at(const Cochain& y) const {
  const int m = y.complex()->dimension();
  Rational v = 0;
  for (int i = 0; i <= m; ++i) {
    const Rational f = evaluate(space->face(y, i));
    v += i % 2 == 0 ? f : -f;
  }
  return space->coeffs().normalize(v);
}

EMMap::EMMap(ComplexPtr source, const EMSpace& target, std::vector<Cochain> images)
    : source_(std::move(source)), target_(&target), images_(std::move(images)) {
  if (images_.size() != source_->size()) throw ConstructionError("EM map: wrong number of images");
  for (std::uint32_t g = 0; g < images_.size(); ++g) {
    if (images_[g].complex()->dimension() != source_->generator(g).dim || !target.contains(images_[g])) {
      throw ConstructionError("EM map: image of generator " + std::to_string(g) + " is not a simplex of K(A,n)");
    }
  }
}

Cochain EMMap::image_of(const Simplex& s) const { return target_->apply(images_.at(s.gen), s.map); }

void EMMap::check() const {
  for (std::uint32_t g = 0; g < images_.size(); ++g) {
    const auto& faces = source_->generator(g).faces;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (target_->face(images_[g], static_cast<int>(i)) != image_of(faces[i])) {
        throw ConstructionError("EM map does not commute with d_" + std::to_string(i) + " on generator " +
                                std::to_string(g));
      }
    }
  }
}

Cochain map_to_cocycle(const EMMap& f, const FundamentalCocycle& iota) {
  const int n = f.target().degree();
  Cochain z(f.source(), n);
  const auto gens = f.source()->generators_of_dim(n);
  for (std::size_t i = 0; i < gens.size(); ++i) z.at(i) = iota.evaluate(f.image(gens[i]));
  return z;
}

EMMap cocycle_to_map(const Cochain& z, const EMSpace& target) {
  const int n = target.degree();
  if (z.degree() != n) throw Error("cocycle_to_map: degree mismatch");
  const auto& x = *z.complex();
  std::vector<Cochain> images;
  images.reserve(x.size());
  for (std::uint32_t g = 0; g < x.size(); ++g) {
    const int m = x.generator(g).dim;
    auto d = standard_simplex(m);
    Cochain y(d, n);
    const auto faces = d->generators_of_dim(n);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      OrdMap theta;
      for (int v : delta_vertices(d->simplex(faces[i]))) theta.push_back(static_cast<std::uint8_t>(v));
      y.at(i) = z.evaluate(x.apply(x.simplex(g), theta));
    }
    images.push_back(normalize(y, target.coeffs()));
  }
  return EMMap(z.complex(), target, std::move(images));
}

EMMap precompose(const SimplicialMap& f, const EMMap& g) {
  if (!same_complex(f.target(), g.source())) throw ConstructionError("precompose: map targets do not match");
  std::vector<Cochain> images;
  for (const auto& im : f.images()) images.push_back(g.image_of(im));
  return EMMap(f.source(), g.target(), std::move(images));
}

ComplexPtr em_skeleton(const EMSpace& e, const std::vector<Integer>& values) {
  const int n = e.degree();
  if (n < 1) throw ConstructionError("em_skeleton needs n >= 1");
  std::vector<Generator> gens{Generator{0, {}, "*"}};
  for (const auto& v : values) {
    Generator g{n, {}, v.get_str()};
    for (int i = 0; i <= n; ++i) g.faces.push_back(Simplex{0, OrdMap(static_cast<std::size_t>(n), 0)});
    gens.push_back(std::move(g));
  }
  return std::make_shared<SimplicialSet>("K" + std::to_string(n) + "-skeleton", std::move(gens));
}

EMMap tautological_map(const ComplexPtr& skeleton, const EMSpace& e, const std::vector<Integer>& values) {
  const int n = e.degree();
  std::vector<Cochain> images{e.basepoint(0)};
  for (const auto& v : values) {
    Cochain y = e.basepoint(n);
    y.set(top_generator(n), Rational(v));
    images.push_back(normalize(y, e.coeffs()));
  }
  return EMMap(skeleton, e, std::move(images));
}

// ---------------------------------------------------------------------------
// Loop identification and structure map

Cochain suspend(const Cochain& w, const PrismComplex& prism1) {
  if (prism1.k() != 1) throw Error("suspend needs X x Delta^1");
  return cross(*prism1.product, top_indicator(1), w);
}

Cochain loop(const Cochain& z, const PrismComplex& prism1) {
  if (prism1.k() != 1) throw Error("loop needs X x Delta^1");
  return fiber_integrate(z, prism1);
}

bool end_trivial(const Cochain& z, const PrismTower& tower) {
  return pullback(tower.face_map(1, 0), z).is_zero() && pullback(tower.face_map(1, 1), z).is_zero();
}

namespace {

PrismPtr simplex_prism(int p) {
  static std::mutex mutex;
  static std::map<int, PrismPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = product_with_simplex(standard_simplex(p), 1);
  return slot;
}

}  // namespace

Cochain structure_map(const Cochain& w, const OrdMap& t) {
  const int p = w.complex()->dimension();
  if (static_cast<int>(t.size()) != p + 1) throw Error("structure_map: t has wrong length");
  auto prism = simplex_prism(p);
  const Cochain ew = cross(*prism->product, top_indicator(1), w);
  auto d = standard_simplex(p);
  std::vector<Simplex> images;
  images.reserve(d->size());
  for (std::uint32_t g = 0; g < d->size(); ++g) {
    const Simplex s = d->simplex(g);
    std::vector<int> ts;
    for (int v : delta_vertices(s)) ts.push_back(t[static_cast<std::size_t>(v)]);
    images.push_back(prism->product->simplex_of(s, delta_simplex(1, ts)));
  }
  return pullback(SimplicialMap(d, prism->complex(), std::move(images)), ew);
}

IotaReport check_iota_compatibility(const EMSpace& en, const FundamentalCocycle& iota_n,
                                    const FundamentalCocycle& iota_n1, int truncation) {
  const int n = en.degree();
  const EMSpace& en1 = *iota_n1.space;
  if (en1.degree() != n + 1 || !(en1.coeffs() == en.coeffs())) throw Error("iota check: spaces do not match");
  IotaReport report;
  auto fail = [&](int level, std::string simplex, std::string message) {
    report.pass = false;
    report.level = level;
    report.simplex = std::move(simplex);
    report.message = std::move(message);
    return report;
  };
  const auto& coeffs = en.coeffs();
  auto prism_n = simplex_prism(n);
  const auto& cells = prism_n->decomposition.cells[top_generator(n)];

  // (int eps^* iota_{n+1})(y) as a sum over the shuffle cells of y x Delta^1.
  auto integrated = [&](const Cochain& y) {
    Rational v = 0;
    for (const auto& cell : cells) {
      const auto& [a, b] = prism_n->product->components(cell.simplex.gen);
      OrdMap t;
      for (int vtx : delta_vertices(b)) t.push_back(static_cast<std::uint8_t>(vtx));
      const Rational val = iota_n1.evaluate(structure_map(en.apply(y, a.map), t));
      v += cell.sign > 0 ? val : -val;
    }
    return coeffs.normalize(v);
  };

  for (int p = n; p <= truncation; ++p) {
    const auto& basis = en.level_basis(p);
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      const Cochain& w = basis[bi];
      const std::string where = "basis element " + std::to_string(bi) + " of level " + std::to_string(p);
      for (int cut = 0; cut <= p + 1; ++cut) {
        OrdMap t(static_cast<std::size_t>(p + 1));
        for (int v = 0; v <= p; ++v) t[v] = v >= cut ? 1 : 0;
        const Cochain s = structure_map(w, t);
        ++report.checked;
        if (!en1.contains(s)) return fail(p, where, "structure map leaves K(A,n+1)");
        for (int i = 0; i <= p && p >= 1; ++i) {
          if (en1.face(s, i) != structure_map(en.face(w, i), compose(t, coface(p, i)))) {
            return fail(p, where, "structure map does not commute with d_" + std::to_string(i));
          }
        }
      }
      for (const auto& theta : injections(n, p)) {
        const Cochain y = en.apply(w, theta);
        const Rational lhs = integrated(y);
        const Rational rhs = iota_n.evaluate(y);
        ++report.checked;
        if (lhs != rhs) {
          std::vector<int> verts(theta.begin(), theta.end());
          return fail(p, where + ", face " + describe_vertices(verts),
                      "int eps^* iota_{n+1} = " + format_rational(lhs) + " but iota_n = " + format_rational(rhs));
        }
      }
    }
  }
  for (const auto& y : en.level_basis(n + 1)) {
    ++report.checked;
    if (iota_n.coboundary_at(y) != 0) return fail(n + 1, "basis element", "iota_n is not closed");
  }
  for (const auto& y : en1.level_basis(n + 2)) {
    ++report.checked;
    if (iota_n1.coboundary_at(y) != 0) return fail(n + 2, "basis element", "iota_{n+1} is not closed");
  }
  if (iota_n.evaluate(en.basepoint(n)) != 0 || iota_n1.evaluate(en1.basepoint(n + 1)) != 0) {
    return fail(n, "basepoint", "iota is not reduced");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Mapping complex

unsigned delta_leg_mask(const PrismComplex& prism, std::uint32_t gen) {
  const auto& b = prism.product->components(gen).second;
  unsigned mask = 0;
  for (int v : delta_vertices(b)) mask |= 1u << v;
  return mask;
}

MappingComplex::MappingComplex(ComplexPtr base, int degree, Coefficients coeffs, int max_level)
    : degree_(degree), coeffs_(std::move(coeffs)), tower_(std::move(base), max_level) {
  if (coeffs_.kind != CoeffKind::Integers && coeffs_.kind != CoeffKind::Modular) {
    throw ConstructionError("mapping complexes support Z and Z/k coefficients");
  }
}

namespace {

int level_of(const PrismTower& tower, const Cochain& y) {
  for (int p = 0; p <= tower.max_level(); ++p) {
    if (tower.level(p)->complex() == y.complex()) return p;
  }
  throw Error("cochain does not live on the prism tower");
}

}  // namespace

Cochain MappingComplex::zero(int p) const { return Cochain(tower_.level(p)->complex(), degree_); }

Cochain MappingComplex::from_base(const Cochain& z) const { return pullback(tower_.projection(0), z); }

Cochain MappingComplex::to_base(const Cochain& y) const { return pullback(tower_.base_iso(), y); }

Cochain MappingComplex::face(const Cochain& y, int i) const {
  return normalize(pullback(tower_.face_map(level_of(tower_, y), i), y));
}

Cochain MappingComplex::degeneracy(const Cochain& y, int j) const {
  return normalize(pullback(tower_.degeneracy_map(level_of(tower_, y), j), y));
}

Cochain MappingComplex::apply(const Cochain& y, const OrdMap& theta) const {
  return normalize(pullback(tower_.operator_map(theta, level_of(tower_, y)), y));
}

bool MappingComplex::is_cocycle(const Cochain& y) const { return normalize(coboundary(y)).is_zero(); }

std::optional<std::string> MappingComplex::horn_violation(int m, int k, const std::vector<Cochain>& faces) const {
  if (static_cast<int>(faces.size()) != m + 1) return "horn needs " + std::to_string(m + 1) + " face slots";
  for (int j = 0; j <= m; ++j) {
    if (j == k) continue;
    if (!is_cocycle(faces[static_cast<std::size_t>(j)])) return "face " + std::to_string(j) + " is not a cocycle";
    for (int i = 0; i < j; ++i) {
      if (i == k) continue;
      if (face(faces[static_cast<std::size_t>(j)], i) != face(faces[static_cast<std::size_t>(i)], j - 1)) {
        return "d_" + std::to_string(i) + " y_" + std::to_string(j) + " != d_" + std::to_string(j - 1) + " y_" +
               std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

Cochain MappingComplex::moore_fill(int m, int k, const std::vector<Cochain>& faces, std::uint64_t perturb_seed) const {
  if (m < 1 || k < 0 || k > m) throw Error("moore_fill: bad horn shape");
  if (auto bad = horn_violation(m, k, faces)) throw Error("incompatible horn: " + *bad);
  return moore_fill_unchecked(m, k, faces, perturb_seed);
}

Cochain MappingComplex::moore_fill_unchecked(int m, int k, const std::vector<Cochain>& faces,
                                             std::uint64_t perturb_seed) const {
  if (m < 1 || k < 0 || k > m || static_cast<int>(faces.size()) != m + 1) throw Error("moore_fill: bad horn shape");
  Cochain w = zero(m);
  auto y = [&](int i) -> const Cochain& { return faces[static_cast<std::size_t>(i)]; };
  for (int i = 0; i < k; ++i) {
    w += degeneracy(y(i) - face(w, i), i);
    w = normalize(std::move(w));
  }
  for (int i = m; i > k; --i) {
    w += degeneracy(y(i) - face(w, i), i - 1);
    w = normalize(std::move(w));
  }
  if (perturb_seed != 0 && degree_ >= 1) {
    std::uint64_t state = perturb_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(m * 31 + k);
    for (int i = 0; i <= m; ++i) {
      if (i != k) state = hash_cochain(y(i), state ^ 0xcbf29ce484222325ULL);
    }
    auto prism = tower_.level(m);
    const unsigned full = (1u << (m + 1)) - 1;
    const unsigned needed = full & ~(1u << k);
    Cochain beta(prism->complex(), degree_ - 1);
    const auto gens = prism->complex()->generators_of_dim(degree_ - 1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((delta_leg_mask(*prism, gens[i]) & needed) != needed) continue;
      beta.at(i) = static_cast<long>(splitmix(state) % 5) - 2;
    }
    w = normalize(w + coboundary(beta));
  }
  return w;
}

const MappingComplex::Split& MappingComplex::split(int p, unsigned mask) const {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(p, mask);
  auto it = splits_.find(key);
  if (it != splits_.end()) return it->second;
  auto prism = tower_.level(p);
  const auto& x = *prism->complex();
  Split s;
  auto on_prescribed_face = [&](std::uint32_t g) { return (~delta_leg_mask(*prism, g) & mask) != 0; };
  s.unknown_index.assign(x.count(degree_), -1);
  for (auto g : x.generators_of_dim(degree_)) {
    if (on_prescribed_face(g)) continue;
    s.unknown_index[x.index_in_dim(g)] = static_cast<std::int64_t>(s.unknown_gens.size());
    s.unknown_gens.push_back(g);
  }
  for (auto g : x.generators_of_dim(degree_ + 1)) {
    if (!on_prescribed_face(g)) s.equation_gens.push_back(g);
  }
  return splits_.emplace(key, std::move(s)).first->second;
}

ExtensionResult MappingComplex::extend(int p, const std::vector<std::optional<Cochain>>& faces) const {
  if (static_cast<int>(faces.size()) != p + 1) throw Error("extend: need one slot per face");
  unsigned mask = 0;
  for (int j = 0; j <= p; ++j) {
    if (faces[static_cast<std::size_t>(j)]) mask |= 1u << j;
  }
  auto prism = tower_.level(p);
  const auto& x = *prism->complex();
  const Split& s = split(p, mask);
  Cochain g(prism->complex(), degree_);
  if (p >= 1) {
    auto lower = tower_.level(p - 1);
    const auto gens = x.generators_of_dim(degree_);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (s.unknown_index[i] >= 0) continue;
      const unsigned leg = delta_leg_mask(*prism, gens[i]);
      int j = 0;
      while (!((mask >> j) & 1u) || (leg >> j) & 1u) ++j;
      const auto& [a, b] = prism->product->components(gens[i]);
      std::vector<int> seq;
      for (int v : delta_vertices(b)) seq.push_back(v > j ? v - 1 : v);
      g.at(i) = faces[static_cast<std::size_t>(j)]->evaluate(lower->product->simplex_of(a, delta_simplex(p - 1, seq)));
    }
  }
  ExtensionResult out;
  out.unknowns = s.unknown_gens.size();
  out.equations = s.equation_gens.size();
  IntMatrix a(s.equation_gens.size(), s.unknown_gens.size());
  std::vector<Integer> rhs(s.equation_gens.size());
  for (std::size_t r = 0; r < s.equation_gens.size(); ++r) {
    const Simplex tau = x.simplex(s.equation_gens[r]);
    Rational known = 0;
    for (int i = 0; i <= degree_ + 1; ++i) {
      const Simplex f = x.face(tau, i);
      if (f.degenerate()) continue;
      const std::int64_t u = s.unknown_index[x.index_in_dim(f.gen)];
      const int sign = i % 2 == 0 ? 1 : -1;
      if (u >= 0) {
        a.add(r, static_cast<std::size_t>(u), sign);
      } else {
        known += sign * g.evaluate(f);
      }
    }
    if (!is_integral(known)) throw Error("extend: non-integral boundary data");
    rhs[r] = -known.get_num();
  }
  a.finalize();
  const Integer modulus = coeffs_.kind == CoeffKind::Modular ? coeffs_.modulus : Integer(0);
  auto sol = solve_integer(a, rhs, modulus);
  if (!sol.solvable) {
    out.certificate = std::move(sol.certificate);
    return out;
  }
  for (std::size_t u = 0; u < s.unknown_gens.size(); ++u) g.set(s.unknown_gens[u], Rational(sol.x[u]));
  g = normalize(g);
  for (int j = 0; j <= p; ++j) {
    if (faces[static_cast<std::size_t>(j)] && face(g, j) != normalize(*faces[static_cast<std::size_t>(j)])) {
      throw Error("extend: incompatible boundary data on face " + std::to_string(j));
    }
  }
  out.exists = true;
  out.filler = std::move(g);
  return out;
}

}  // namespace simdiff
