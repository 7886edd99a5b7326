#include "simdiff/simplicial.hpp"

#include <algorithm>
#include <sstream>

namespace simdiff {

OrdMap identity_map(int p) {
  OrdMap m(static_cast<std::size_t>(p + 1));
  for (int k = 0; k <= p; ++k) m[k] = static_cast<std::uint8_t>(k);
  return m;
}

OrdMap coface(int p, int i) {
  OrdMap m;
  m.reserve(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) m.push_back(static_cast<std::uint8_t>(k < i ? k : k + 1));
  return m;
}

OrdMap codegeneracy(int p, int j) {
  OrdMap m;
  m.reserve(static_cast<std::size_t>(p + 2));
  for (int k = 0; k <= p + 1; ++k) m.push_back(static_cast<std::uint8_t>(k <= j ? k : k - 1));
  return m;
}

OrdMap compose(const OrdMap& outer, const OrdMap& inner) {
  OrdMap m(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) m[k] = outer.at(inner[k]);
  return m;
}

bool is_surjective(const OrdMap& map, int target_dim) {
  if (map.empty() || map.front() != 0 || map.back() != target_dim) return false;
  for (std::size_t k = 1; k < map.size(); ++k) {
    if (map[k] < map[k - 1] || map[k] > map[k - 1] + 1) return false;
  }
  return true;
}

std::vector<int> repeat_positions(const OrdMap& map) {
  std::vector<int> out;
  for (std::size_t k = 0; k + 1 < map.size(); ++k) {
    if (map[k] == map[k + 1]) out.push_back(static_cast<int>(k));
  }
  return out;
}

OrdMap surjection_from_repeats(int p, const std::vector<int>& repeats) {
  OrdMap m(static_cast<std::size_t>(p + 1));
  m[0] = 0;
  for (int k = 0; k < p; ++k) {
    const bool rep = std::find(repeats.begin(), repeats.end(), k) != repeats.end();
    m[k + 1] = static_cast<std::uint8_t>(m[k] + (rep ? 0 : 1));
  }
  return m;
}

bool Simplex::degenerate() const {
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map[k] != k) return true;
  }
  return false;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = std::hash<std::uint32_t>{}(s.gen);
  for (auto v : s.map) h = h * 1000003u ^ v;
  return h;
}

SimplicialSet::SimplicialSet(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)), generators_(std::move(generators)) {
  index_in_dim_.resize(generators_.size());
  for (std::uint32_t id = 0; id < generators_.size(); ++id) {
    const Generator& g = generators_[id];
    if (g.dim < 0) throw ConstructionError(name_ + ": generator " + std::to_string(id) + " has negative dimension");
    const std::size_t expected = g.dim == 0 ? 0 : static_cast<std::size_t>(g.dim + 1);
    if (g.faces.size() != expected) {
      throw ConstructionError(name_ + ": generator " + std::to_string(id) + " of dimension " +
                              std::to_string(g.dim) + " has " + std::to_string(g.faces.size()) +
                              " faces, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < g.faces.size(); ++i) {
      const Simplex& f = g.faces[i];
      if (f.gen >= generators_.size()) {
        throw ConstructionError(name_ + ": face " + std::to_string(i) + " of generator " + std::to_string(id) +
                                " references missing generator " + std::to_string(f.gen));
      }
      if (f.dim() != g.dim - 1) {
        throw ConstructionError(name_ + ": face " + std::to_string(i) + " of generator " + std::to_string(id) +
                                " has dimension " + std::to_string(f.dim()) + ", expected " +
                                std::to_string(g.dim - 1));
      }
      if (!is_surjective(f.map, generators_[f.gen].dim)) {
        throw ConstructionError(name_ + ": face " + std::to_string(i) + " of generator " + std::to_string(id) +
                                " carries an invalid degeneracy");
      }
    }
    if (by_dim_.size() <= static_cast<std::size_t>(g.dim)) by_dim_.resize(static_cast<std::size_t>(g.dim) + 1);
    index_in_dim_[id] = static_cast<std::uint32_t>(by_dim_[g.dim].size());
    by_dim_[g.dim].push_back(id);
  }
}

std::span<const std::uint32_t> SimplicialSet::generators_of_dim(int d) const {
  if (d < 0 || static_cast<std::size_t>(d) >= by_dim_.size()) return {};
  return by_dim_[static_cast<std::size_t>(d)];
}

Simplex SimplicialSet::simplex(std::uint32_t id) const { return Simplex{id, identity_map(generator(id).dim)}; }

Simplex SimplicialSet::face(const Simplex& s, int i) const {
  const int p = s.dim();
  if (p < 1 || i < 0 || i > p) throw Error("face index out of range");
  OrdMap theta = compose(s.map, coface(p, i));
  const int q = generator(s.gen).dim;
  if (is_surjective(theta, q)) return Simplex{s.gen, std::move(theta)};
  int missing = 0;
  {
    std::vector<bool> hit(static_cast<std::size_t>(q + 1), false);
    for (auto v : theta) hit[v] = true;
    while (hit[static_cast<std::size_t>(missing)]) ++missing;
  }
  for (auto& v : theta) {
    if (v > missing) --v;
  }
  const Simplex& gf = generator(s.gen).faces[static_cast<std::size_t>(missing)];
  return Simplex{gf.gen, compose(gf.map, theta)};
}

Simplex SimplicialSet::degeneracy(const Simplex& s, int j) const {
  const int p = s.dim();
  if (j < 0 || j > p) throw Error("degeneracy index out of range");
  return Simplex{s.gen, compose(s.map, codegeneracy(p, j))};
}

Simplex SimplicialSet::apply(const Simplex& s, const OrdMap& theta) const {
  OrdMap psi = compose(s.map, theta);
  const int q = generator(s.gen).dim;
  std::vector<bool> hit(static_cast<std::size_t>(q + 1), false);
  for (auto v : psi) hit[v] = true;
  Simplex cur = simplex(s.gen);
  for (int j = q; j >= 0; --j) {
    if (!hit[static_cast<std::size_t>(j)]) cur = face(cur, j);
  }
  std::vector<std::uint8_t> rank(static_cast<std::size_t>(q + 1), 0);
  std::uint8_t r = 0;
  for (int v = 0; v <= q; ++v) {
    rank[static_cast<std::size_t>(v)] = r;
    if (hit[static_cast<std::size_t>(v)]) ++r;
  }
  for (auto& v : psi) v = rank[v];
  return Simplex{cur.gen, compose(cur.map, psi)};
}

std::uint32_t SimplicialSet::vertex(const Simplex& s, int k) const {
  return apply(s, OrdMap{static_cast<std::uint8_t>(k)}).gen;
}

std::vector<std::uint32_t> SimplicialSet::vertices_of(std::uint32_t id) const {
  const Simplex s = simplex(id);
  std::vector<std::uint32_t> out;
  for (int k = 0; k <= s.dim(); ++k) out.push_back(vertex(s, k));
  return out;
}

long SimplicialSet::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[d].size());
  }
  return chi;
}

namespace {

std::string describe(const Simplex& s) {
  std::ostringstream os;
  os << "g" << s.gen << "[";
  for (std::size_t k = 0; k < s.map.size(); ++k) os << (k ? "," : "") << int(s.map[k]);
  os << "]";
  return os.str();
}

}  // namespace

void SimplicialSet::check_identities() const {
  for (std::uint32_t id = 0; id < generators_.size(); ++id) {
    const Simplex g = simplex(id);
    const int p = g.dim();
    for (int j = 1; j <= p && p >= 2; ++j) {
      for (int i = 0; i < j; ++i) {
        if (face(face(g, j), i) != face(face(g, i), j - 1)) {
          throw ConstructionError(name_ + ": d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                                  std::to_string(j - 1) + " d_" + std::to_string(i) + " on generator " +
                                  std::to_string(id));
        }
      }
    }
    for (int j = 0; j <= p; ++j) {
      const Simplex t = degeneracy(g, j);
      for (int i = 0; i <= p + 1; ++i) {
        Simplex expected;
        if (i < j) {
          expected = degeneracy(face(g, i), j - 1);
        } else if (i == j || i == j + 1) {
          expected = g;
        } else {
          expected = degeneracy(face(g, i - 1), j);
        }
        if (face(t, i) != expected) {
          throw ConstructionError(name_ + ": d_" + std::to_string(i) + " s_" + std::to_string(j) +
                                  " identity fails on " + describe(g));
        }
      }
    }
  }
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
  if (a.generators_.size() != b.generators_.size()) return false;
  for (std::size_t i = 0; i < a.generators_.size(); ++i) {
    if (a.generators_[i].dim != b.generators_[i].dim || a.generators_[i].faces != b.generators_[i].faces) return false;
  }
  return true;
}

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<Simplex> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw ConstructionError("simplicial map needs source and target");
  if (images_.size() != source_->size()) {
    throw ConstructionError("simplicial map " + source_->name() + " -> " + target_->name() +
                            ": wrong number of generator images");
  }
  for (std::uint32_t g = 0; g < images_.size(); ++g) {
    const Simplex& im = images_[g];
    if (im.gen >= target_->size() || im.dim() != source_->generator(g).dim ||
        !is_surjective(im.map, target_->generator(im.gen).dim)) {
      throw ConstructionError("simplicial map " + source_->name() + " -> " + target_->name() +
                              ": invalid image for generator " + std::to_string(g));
    }
  }
}

SimplicialMap SimplicialMap::identity(ComplexPtr complex) {
  std::vector<Simplex> images;
  images.reserve(complex->size());
  for (std::uint32_t g = 0; g < complex->size(); ++g) images.push_back(complex->simplex(g));
  return SimplicialMap(complex, complex, std::move(images));
}

Simplex SimplicialMap::operator()(const Simplex& s) const { return target_->apply(images_.at(s.gen), s.map); }

void SimplicialMap::check() const {
  for (std::uint32_t g = 0; g < images_.size(); ++g) {
    const Generator& gen = source_->generator(g);
    for (int i = 0; i < static_cast<int>(gen.faces.size()); ++i) {
      if (target_->face(images_[g], i) != (*this)(gen.faces[static_cast<std::size_t>(i)])) {
        throw ConstructionError("simplicial map " + source_->name() + " -> " + target_->name() +
                                " does not commute with d_" + std::to_string(i) + " on generator " +
                                std::to_string(g));
      }
    }
  }
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
  return same_complex(a.source_, b.source_) && same_complex(a.target_, b.target_) && a.images_ == b.images_;
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || (a && b && *a == *b); }

SimplicialMap compose_maps(const SimplicialMap& f, const SimplicialMap& g) {
  if (!same_complex(f.target(), g.source())) {
    throw ConstructionError("cannot compose: target " + f.target()->name() + " of first map differs from source " +
                            g.source()->name() + " of second");
  }
  std::vector<Simplex> images;
  images.reserve(f.images().size());
  for (const auto& im : f.images()) images.push_back(g(im));
  return SimplicialMap(f.source(), g.target(), std::move(images));
}

}  // namespace simdiff
