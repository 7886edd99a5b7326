#include "simdiff/product.hpp"

#include <bit>

#include "simdiff/fixtures.hpp"

namespace simdiff {

std::size_t ProductComplex::PairHash::operator()(const std::pair<Simplex, Simplex>& p) const noexcept {
  SimplexHash h;
  return h(p.first) * 31u ^ h(p.second);
}

namespace {

OrdMap map_from_mask(int p, unsigned mask) {
  std::vector<int> reps;
  for (int k = 0; k < p; ++k) {
    if (mask & (1u << k)) reps.push_back(k);
  }
  return surjection_from_repeats(p, reps);
}

// Enumerates masks over p bits with exactly r bits set.
std::vector<unsigned> masks_with(int p, int r) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << p); ++m) {
    if (std::popcount(m) == r) out.push_back(m);
  }
  return out;
}

}  // namespace

ProductComplex::ProductComplex(ComplexPtr left, ComplexPtr right, std::string name)
    : left_(std::move(left)), right_(std::move(right)) {
  if (name.empty()) name = left_->name() + "x" + right_->name();
  const int top = left_->dimension() + right_->dimension();
  for (int p = 0; p <= top; ++p) {
    for (int qx = 0; qx <= std::min(p, left_->dimension()); ++qx) {
      const int qy_min = p - qx;
      for (int qy = qy_min; qy <= std::min(p, right_->dimension()); ++qy) {
        const auto rx_masks = masks_with(p, p - qx);
        const auto ry_masks = masks_with(p, p - qy);
        for (auto gx : left_->generators_of_dim(qx)) {
          for (auto gy : right_->generators_of_dim(qy)) {
            for (auto rx : rx_masks) {
              for (auto ry : ry_masks) {
                if (rx & ry) continue;
                std::pair<Simplex, Simplex> key{Simplex{gx, map_from_mask(p, rx)}, Simplex{gy, map_from_mask(p, ry)}};
                index_.emplace(key, static_cast<std::uint32_t>(components_.size()));
                components_.push_back(std::move(key));
              }
            }
          }
        }
      }
    }
  }
  std::vector<Generator> gens(components_.size());
  for (std::uint32_t id = 0; id < components_.size(); ++id) {
    const auto& [a, b] = components_[id];
    Generator& g = gens[id];
    g.dim = a.dim();
    if (g.dim > 0) {
      for (int i = 0; i <= g.dim; ++i) g.faces.push_back(simplex_of(left_->face(a, i), right_->face(b, i)));
    }
  }
  set_ = std::make_shared<SimplicialSet>(std::move(name), std::move(gens));
}

Simplex ProductComplex::simplex_of(const Simplex& a, const Simplex& b) const {
  if (a.dim() != b.dim()) throw Error("product simplex components have different dimensions");
  const int p = a.dim();
  std::vector<int> common;
  for (int k = 0; k < p; ++k) {
    if (a.map[k] == a.map[k + 1] && b.map[k] == b.map[k + 1]) common.push_back(k);
  }
  if (common.empty()) {
    auto it = index_.find({a, b});
    if (it == index_.end()) throw Error("product simplex not found");
    return Simplex{it->second, identity_map(p)};
  }
  const OrdMap rho = surjection_from_repeats(p, common);
  const int r = rho.back();
  OrdMap ra(static_cast<std::size_t>(r + 1)), rb(static_cast<std::size_t>(r + 1));
  for (int k = 0; k <= p; ++k) {
    ra[rho[k]] = a.map[k];
    rb[rho[k]] = b.map[k];
  }
  auto it = index_.find({Simplex{a.gen, ra}, Simplex{b.gen, rb}});
  if (it == index_.end()) throw Error("product simplex not found");
  return Simplex{it->second, rho};
}

SimplicialMap ProductComplex::projection_left() const {
  std::vector<Simplex> images;
  images.reserve(components_.size());
  for (const auto& c : components_) images.push_back(c.first);
  return SimplicialMap(set_, left_, std::move(images));
}

SimplicialMap ProductComplex::projection_right() const {
  std::vector<Simplex> images;
  images.reserve(components_.size());
  for (const auto& c : components_) images.push_back(c.second);
  return SimplicialMap(set_, right_, std::move(images));
}

ProductPtr make_product(ComplexPtr left, ComplexPtr right, std::string name) {
  return std::make_shared<const ProductComplex>(std::move(left), std::move(right), std::move(name));
}

SimplicialMap product_map(const ProductComplex& source, const ProductComplex& target, const SimplicialMap& f,
                          const SimplicialMap& g) {
  if (!same_complex(f.source(), source.left()) || !same_complex(g.source(), source.right()) ||
      !same_complex(f.target(), target.left()) || !same_complex(g.target(), target.right())) {
    throw ConstructionError("product_map: factor maps do not match the products");
  }
  std::vector<Simplex> images;
  images.reserve(source.complex()->size());
  for (std::uint32_t id = 0; id < source.complex()->size(); ++id) {
    const auto& [a, b] = source.components(id);
    images.push_back(target.simplex_of(f(a), g(b)));
  }
  return SimplicialMap(source.complex(), target.complex(), std::move(images));
}

PrismPtr product_with_simplex(const ComplexPtr& base, int k) {
  if (k < 0 || k > 4) throw ConstructionError("product_with_simplex supports 0 <= k <= 4");
  auto prism = std::make_shared<PrismComplex>();
  prism->product = make_product(base, standard_simplex(k), base->name() + "xD" + std::to_string(k));
  prism->decomposition.base = base;
  prism->decomposition.k = k;
  prism->decomposition.cells.resize(base->size());
  const std::uint32_t top = (1u << (k + 1)) - 2;
  for (std::uint32_t g = 0; g < base->size(); ++g) {
    const int m = base->generator(g).dim;
    const int len = k + m;
    for (auto fiber_steps : masks_with(len, k)) {
      OrdMap xmap(static_cast<std::size_t>(len + 1)), ymap(static_cast<std::size_t>(len + 1));
      int inversions = 0;
      int base_steps_seen = 0;
      for (int t = 0; t < len; ++t) {
        const bool fiber = fiber_steps & (1u << t);
        ymap[t + 1] = static_cast<std::uint8_t>(ymap[t] + (fiber ? 1 : 0));
        xmap[t + 1] = static_cast<std::uint8_t>(xmap[t] + (fiber ? 0 : 1));
        if (fiber) {
          inversions += base_steps_seen;
        } else {
          ++base_steps_seen;
        }
      }
      PrismCell cell;
      cell.simplex = prism->product->simplex_of(Simplex{g, xmap}, Simplex{top, ymap});
      cell.sign = inversions % 2 == 0 ? 1 : -1;
      prism->decomposition.cells[g].push_back(std::move(cell));
    }
  }
  return prism;
}

PrismTower::PrismTower(ComplexPtr base, int max_level) : base_(std::move(base)), max_level_(max_level) {
  levels_.resize(static_cast<std::size_t>(max_level_ + 2));
  faces_.resize(static_cast<std::size_t>(max_level_ + 2));
  degens_.resize(static_cast<std::size_t>(max_level_ + 2));
}

PrismPtr PrismTower::level(int p) const {
  if (p < 0 || p > max_level_) throw Error("prism tower level out of range");
  std::lock_guard lock(mutex_);
  auto& slot = levels_[static_cast<std::size_t>(p)];
  if (!slot) slot = product_with_simplex(base_, p);
  return slot;
}

const SimplicialMap& PrismTower::face_map(int p, int i) const {
  std::lock_guard lock(mutex_);
  auto& row = faces_.at(static_cast<std::size_t>(p));
  if (row.empty()) row.resize(static_cast<std::size_t>(p + 1));
  auto& slot = row.at(static_cast<std::size_t>(i));
  if (!slot) slot = std::make_unique<SimplicialMap>(operator_map(coface(p, i), p));
  return *slot;
}

const SimplicialMap& PrismTower::degeneracy_map(int p, int j) const {
  std::lock_guard lock(mutex_);
  auto& row = degens_.at(static_cast<std::size_t>(p));
  if (row.empty()) row.resize(static_cast<std::size_t>(p + 1));
  auto& slot = row.at(static_cast<std::size_t>(j));
  if (!slot) slot = std::make_unique<SimplicialMap>(operator_map(codegeneracy(p, j), p));
  return *slot;
}

SimplicialMap PrismTower::operator_map(const OrdMap& theta, int b) const {
  const int a = static_cast<int>(theta.size()) - 1;
  auto src = level(a);
  auto tgt = level(b);
  return product_map(*src->product, *tgt->product, SimplicialMap::identity(base_), simplex_operator_map(theta, b));
}

const SimplicialMap& PrismTower::base_iso() const {
  std::lock_guard lock(mutex_);
  if (!iso_) {
    auto l0 = level(0);
    std::vector<Simplex> images;
    for (std::uint32_t g = 0; g < base_->size(); ++g) {
      const int d = base_->generator(g).dim;
      images.push_back(l0->product->simplex_of(base_->simplex(g), Simplex{0, OrdMap(static_cast<std::size_t>(d + 1), 0)}));
    }
    iso_ = std::make_unique<SimplicialMap>(base_, l0->complex(), std::move(images));
  }
  return *iso_;
}

SimplicialMap PrismTower::projection(int p) const { return level(p)->product->projection_left(); }

}  // namespace simdiff
