#include "simdiff/subdivision.hpp"

#include <algorithm>
#include <numeric>

namespace simdiff {

namespace {

int parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

Subdivision::Subdivision(ComplexPtr base) : base_(std::move(base)) {
  const SimplicialSet& x = *base_;
  faces_.resize(x.size());
  for (std::uint32_t g = 0; g < x.size(); ++g) {
    const int d = x.generator(g).dim;
    auto verts = x.vertices_of(g);
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
      throw ConstructionError("subdivision: generator " + x.generator(g).label + " of " + x.name() +
                              " has a repeated vertex");
    }
    const unsigned full = (1u << (d + 1)) - 1;
    faces_[g].resize(full);
    for (unsigned mask = 1; mask <= full; ++mask) {
      OrdMap theta;
      for (int i = 0; i <= d; ++i) {
        if (mask & (1u << i)) theta.push_back(static_cast<std::uint8_t>(i));
      }
      const Simplex s = x.apply(x.simplex(g), theta);
      if (s.degenerate()) throw ConstructionError("subdivision: degenerate face in " + x.name());
      faces_[g][mask - 1] = s.gen;
    }
  }

  // Chains ending at each generator, built in order of dimension.
  std::vector<std::vector<std::vector<std::uint32_t>>> ends(x.size());
  for (int d = 0; d <= x.dimension(); ++d) {
    for (std::uint32_t g : x.generators_of_dim(d)) {
      ends[g].push_back({g});
      const unsigned full = (1u << (d + 1)) - 1;
      for (unsigned mask = 1; mask < full; ++mask) {
        for (const auto& c : ends[faces_[g][mask - 1]]) {
          auto longer = c;
          longer.push_back(g);
          ends[g].push_back(std::move(longer));
        }
      }
    }
  }
  for (auto& e : ends) {
    for (auto& c : e) chains_.push_back(std::move(c));
  }
  std::stable_sort(chains_.begin(), chains_.end(),
                   [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });

  std::vector<Generator> gens;
  gens.reserve(chains_.size());
  for (std::uint32_t id = 0; id < chains_.size(); ++id) {
    const auto& c = chains_[id];
    index_.emplace(c, id);
    Generator gen{static_cast<int>(c.size()) - 1, {}, {}};
    for (std::size_t i = 0; i < c.size(); ++i) gen.label += (i ? "<" : "") + x.generator(c[i]).label;
    if (c.size() > 1) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto face = c;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        gen.faces.push_back(Simplex{index_.at(face), identity_map(static_cast<int>(face.size()) - 1)});
      }
    }
    gens.push_back(std::move(gen));
  }
  sd_ = std::make_shared<SimplicialSet>("sd(" + x.name() + ")", std::move(gens));

  std::vector<Simplex> images;
  images.reserve(chains_.size());
  for (const auto& c : chains_) {
    const auto top = x.vertices_of(c.back());
    OrdMap theta;
    for (std::uint32_t g : c) {
      const std::uint32_t last = x.vertices_of(g).back();
      theta.push_back(static_cast<std::uint8_t>(std::find(top.begin(), top.end(), last) - top.begin()));
    }
    images.push_back(x.apply(x.simplex(c.back()), theta));
  }
  lambda_ = std::make_unique<SimplicialMap>(sd_, base_, std::move(images));
}

std::int64_t Subdivision::find(const std::vector<std::uint32_t>& chain) const {
  auto it = index_.find(chain);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Subdivision::Chain Subdivision::subdivide(std::uint32_t g) const {
  const int d = base_->generator(g).dim;
  std::vector<int> perm(static_cast<std::size_t>(d + 1));
  std::iota(perm.begin(), perm.end(), 0);
  Chain out;
  do {
    std::vector<std::uint32_t> c;
    unsigned mask = 0;
    for (int p : perm) {
      mask |= 1u << p;
      c.push_back(faces_[g][mask - 1]);
    }
    out[index_.at(c)] += parity(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Cochain Subdivision::collapse(const Cochain& y) const {
  if (y.complex() != sd_) throw Error("collapse: cochain does not live on " + sd_->name());
  Cochain out(base_, y.degree());
  const auto gens = base_->generators_of_dim(y.degree());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Rational v = 0;
    for (const auto& [gen, sign] : subdivide(gens[i])) v += sign * y.value(gen);
    out.at(i) = v;
  }
  return out;
}

Cochain Subdivision::refine(const Cochain& x) const { return pullback(*lambda_, x); }

const Subdivision::Chain& Subdivision::cone_chain(std::uint32_t tau) const {
  if (auto it = cone_.find(tau); it != cone_.end()) return it->second;
  const auto& c = chains_[tau];
  const int k = static_cast<int>(c.size()) - 1;
  const std::uint32_t apex = c.back();

  // phi = sd(lambda tau) - tau - T(d tau), a cycle in sd of the closure of apex.
  Chain phi;
  const Simplex image = (*lambda_)(sd_->simplex(tau));
  if (!image.degenerate()) phi = subdivide(image.gen);
  phi[tau] -= 1;
  if (k > 0) {
    for (int i = 0; i <= k; ++i) {
      auto face = c;
      face.erase(face.begin() + i);
      const Chain& t = cone_chain(index_.at(face));
      const int sign = i % 2 == 0 ? 1 : -1;
      for (const auto& [gen, v] : t) phi[gen] -= sign * v;
    }
  }
  // Cone from the barycenter of apex: C(x) = (-1)^{k+1} x * apex, zero on
  // simplices already ending at apex, so that d C(x) = x - C(d x).
  Chain out;
  const int sign = (k + 1) % 2 == 0 ? 1 : -1;
  for (const auto& [gen, v] : phi) {
    if (v == 0) continue;
    const auto& chain = chains_[gen];
    if (chain.back() == apex) continue;
    auto longer = chain;
    longer.push_back(apex);
    out[index_.at(longer)] += sign * v;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return cone_.emplace(tau, std::move(out)).first->second;
}

Cochain Subdivision::cone_homotopy(const Cochain& y) const {
  if (y.complex() != sd_) throw Error("homotopy: cochain does not live on " + sd_->name());
  const int k = y.degree() - 1;
  Cochain out(sd_, k);
  if (k < 0) return out;
  std::lock_guard lock(mutex_);
  const auto gens = sd_->generators_of_dim(k);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Rational v = 0;
    for (const auto& [gen, coeff] : cone_chain(gens[i])) v += coeff * y.value(gen);
    out.at(i) = v;
  }
  return out;
}

Cochain Subdivision::homotopy(const Cochain& y) const {
  // P D P with P = 1 - lambda^* sd^*, the projection onto ker sd^*.
  auto project = [this](const Cochain& w) { return w - refine(collapse(w)); };
  return project(cone_homotopy(project(y)));
}

SubdivisionPtr subdivision_of(const ComplexPtr& x) {
  static std::mutex mutex;
  static std::map<const SimplicialSet*, std::pair<ComplexPtr, SubdivisionPtr>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(x.get());
  if (it != cache.end()) return it->second.second;
  auto sd = std::make_shared<const Subdivision>(x);
  cache.emplace(x.get(), std::make_pair(x, sd));
  return sd;
}

SimplicialMap subdivide_map(const Subdivision& source, const Subdivision& target, const SimplicialMap& f) {
  if (f.source() != source.base() || f.target() != target.base()) {
    throw Error("subdivide_map: map does not match the subdivisions");
  }
  const SimplicialSet& m = *source.base();
  std::vector<Simplex> images;
  images.reserve(source.complex()->size());
  for (std::uint32_t gen = 0; gen < source.complex()->size(); ++gen) {
    std::vector<std::uint32_t> chain;
    OrdMap map;
    for (std::uint32_t g : source.chain(gen)) {
      const std::uint32_t h = f(m.simplex(g)).gen;
      if (chain.empty() || chain.back() != h) chain.push_back(h);
      map.push_back(static_cast<std::uint8_t>(chain.size() - 1));
    }
    const std::int64_t id = target.find(chain);
    if (id < 0) throw Error("subdivide_map: image chain is not a chain of faces");
    images.push_back(Simplex{static_cast<std::uint32_t>(id), std::move(map)});
  }
  return SimplicialMap(source.complex(), target.complex(), std::move(images));
}

}  // namespace simdiff
