#include "simdiff/fixtures.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

#include "simdiff/product.hpp"

namespace simdiff {

FixtureKind parse_fixture_kind(const std::string& text) {
  if (text == "pt" || text == "point") return FixtureKind::Point;
  if (text == "delta" || text == "delta_k" || text == "simplex") return FixtureKind::Simplex;
  if (text == "circle" || text == "s1") return FixtureKind::Circle;
  if (text == "sphere2" || text == "s2") return FixtureKind::Sphere2;
  if (text == "torus" || text == "t2") return FixtureKind::Torus;
  if (text == "rp2") return FixtureKind::RP2;
  throw ConstructionError("unknown fixture kind: " + text);
}

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Point: return "pt";
    case FixtureKind::Simplex: return "delta";
    case FixtureKind::Circle: return "circle";
    case FixtureKind::Sphere2: return "sphere2";
    case FixtureKind::Torus: return "torus";
    case FixtureKind::RP2: return "rp2";
  }
  return "?";
}

ComplexPtr build_standard(FixtureKind kind, int n) {
  switch (kind) {
    case FixtureKind::Point: return point();
    case FixtureKind::Simplex: return standard_simplex(n);
    case FixtureKind::Circle: return circle(n);
    case FixtureKind::Sphere2: return sphere2();
    case FixtureKind::Torus: return torus();
    case FixtureKind::RP2: return rp2();
  }
  throw ConstructionError("unknown fixture kind");
}

ComplexPtr point() {
  static const ComplexPtr pt = std::make_shared<SimplicialSet>("pt", std::vector<Generator>{Generator{0, {}, "v0"}});
  return pt;
}

ComplexPtr standard_simplex(int k) {
  if (k < 0 || k > 6) throw ConstructionError("standard simplex dimension must be in [0, 6], got " + std::to_string(k));
  static std::mutex mutex;
  static std::map<int, ComplexPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (slot) return slot;
  const unsigned full = (1u << (k + 1)) - 1;
  std::vector<Generator> gens(full);
  for (unsigned mask = 1; mask <= full; ++mask) {
    Generator& g = gens[mask - 1];
    g.dim = std::popcount(mask) - 1;
    std::vector<int> verts;
    for (int v = 0; v <= k; ++v) {
      if (mask & (1u << v)) verts.push_back(v);
    }
    for (int v : verts) g.label += std::to_string(v);
    if (g.dim > 0) {
      for (int i = 0; i <= g.dim; ++i) {
        const unsigned sub = mask & ~(1u << verts[static_cast<std::size_t>(i)]);
        g.faces.push_back(Simplex{sub - 1, identity_map(g.dim - 1)});
      }
    }
  }
  slot = std::make_shared<SimplicialSet>("D" + std::to_string(k), std::move(gens));
  return slot;
}

static ComplexPtr build_circle(int n);

ComplexPtr circle(int n) {
  static std::mutex mutex;
  static std::map<int, ComplexPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = build_circle(n);
  return slot;
}

static ComplexPtr build_circle(int n) {
  if (n < 3) throw ConstructionError("circle needs at least 3 vertices, got " + std::to_string(n));
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) gens.push_back(Generator{0, {}, "v" + std::to_string(i)});
  for (int i = 0; i < n; ++i) {
    Generator e{1, {}, "e" + std::to_string(i)};
    e.faces.push_back(Simplex{static_cast<std::uint32_t>((i + 1) % n), {0}});
    e.faces.push_back(Simplex{static_cast<std::uint32_t>(i), {0}});
    gens.push_back(std::move(e));
  }
  return std::make_shared<SimplicialSet>("circle" + std::to_string(n), std::move(gens));
}

ComplexPtr ordered_complex(std::string name, std::vector<std::vector<int>> facets) {
  std::vector<std::vector<int>> simplices;
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ConstructionError(name + ": repeated vertex in facet");
    const unsigned count = 1u << f.size();
    for (unsigned mask = 1; mask < count; ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (mask & (1u << i)) s.push_back(f[i]);
      }
      simplices.push_back(std::move(s));
    }
  }
  std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  std::map<std::vector<int>, std::uint32_t> index;
  for (std::uint32_t id = 0; id < simplices.size(); ++id) index[simplices[id]] = id;
  std::vector<Generator> gens;
  for (const auto& s : simplices) {
    Generator g;
    g.dim = static_cast<int>(s.size()) - 1;
    for (std::size_t i = 0; i < s.size(); ++i) g.label += (i ? "," : "") + std::to_string(s[i]);
    if (g.dim > 0) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto sub = s;
        sub.erase(sub.begin() + static_cast<long>(i));
        g.faces.push_back(Simplex{index.at(sub), identity_map(g.dim - 1)});
      }
    }
    gens.push_back(std::move(g));
  }
  return std::make_shared<SimplicialSet>(std::move(name), std::move(gens));
}

ComplexPtr sphere2() {
  static const ComplexPtr s = ordered_complex("sphere2", {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  return s;
}

ComplexPtr torus() {
  static const ComplexPtr t = [] {
    auto s1 = circle(3);
    return make_product(s1, s1, "torus")->complex();
  }();
  return t;
}

ComplexPtr rp2() {
  static const ComplexPtr p = ordered_complex("rp2", {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                 {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
  return p;
}

Simplex delta_simplex(int k, const std::vector<int>& vertices) {
  unsigned mask = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] > k || (i > 0 && vertices[i] < vertices[i - 1])) {
      throw Error("delta_simplex: vertex sequence must be nondecreasing in [0, k]");
    }
    mask |= 1u << vertices[i];
  }
  OrdMap map;
  for (int v : vertices) map.push_back(static_cast<std::uint8_t>(std::popcount(mask & ((1u << v) - 1))));
  return Simplex{mask - 1, std::move(map)};
}

std::vector<int> delta_vertices(const Simplex& s) {
  const unsigned mask = s.gen + 1;
  std::vector<int> verts;
  for (int v = 0; v < 32; ++v) {
    if (mask & (1u << v)) verts.push_back(v);
  }
  std::vector<int> out;
  for (auto m : s.map) out.push_back(verts.at(m));
  return out;
}

SimplicialMap simplex_operator_map(const OrdMap& theta, int b) {
  const int a = static_cast<int>(theta.size()) - 1;
  auto src = standard_simplex(a);
  auto tgt = standard_simplex(b);
  std::vector<Simplex> images;
  for (std::uint32_t g = 0; g < src->size(); ++g) {
    std::vector<int> seq;
    for (int v : delta_vertices(src->simplex(g))) seq.push_back(theta.at(static_cast<std::size_t>(v)));
    images.push_back(delta_simplex(b, seq));
  }
  return SimplicialMap(src, tgt, std::move(images));
}

SimplicialMap collapse_to_point(const ComplexPtr& complex) {
  std::vector<Simplex> images;
  for (std::uint32_t g = 0; g < complex->size(); ++g) {
    images.push_back(Simplex{0, OrdMap(static_cast<std::size_t>(complex->generator(g).dim + 1), 0)});
  }
  return SimplicialMap(complex, point(), std::move(images));
}

SimplicialMap point_inclusion(const ComplexPtr& complex, std::uint32_t vertex_gen) {
  if (complex->generator(vertex_gen).dim != 0) throw ConstructionError("point_inclusion needs a vertex");
  return SimplicialMap(point(), complex, {complex->simplex(vertex_gen)});
}

SimplicialMap circle_cover(const ComplexPtr& source, const ComplexPtr& target) {
  const auto ns = static_cast<std::uint32_t>(source->count(0));
  const auto nt = static_cast<std::uint32_t>(target->count(0));
  if (nt == 0 || ns % nt != 0 || source->count(1) != ns || target->count(1) != nt) {
    throw ConstructionError("circle_cover needs circles with target size dividing source size");
  }
  std::vector<Simplex> images;
  for (std::uint32_t i = 0; i < ns; ++i) images.push_back(Simplex{i % nt, {0}});
  for (std::uint32_t i = 0; i < ns; ++i) images.push_back(Simplex{nt + i % nt, {0, 1}});
  SimplicialMap f(source, target, std::move(images));
  f.check();
  return f;
}

}  // namespace simdiff
