#pragma once

// Cartesian products of simplicial sets and the prism decomposition of
// X x Delta^k used by fiber integration.
//
// A p-simplex of X x Y is a pair (a, b) of p-simplices; it is
// nondegenerate iff a and b share no repeat position. Such pairs are the
// generators of the product.

#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "simdiff/simplicial.hpp"

namespace simdiff {

class ProductComplex {
 public:
  ProductComplex(ComplexPtr left, ComplexPtr right, std::string name = {});

  const ComplexPtr& left() const { return left_; }
  const ComplexPtr& right() const { return right_; }
  const ComplexPtr& complex() const { return set_; }
  const std::pair<Simplex, Simplex>& components(std::uint32_t gen) const { return components_.at(gen); }

  /// The product simplex (a, b), normalized to generator plus degeneracy.
  Simplex simplex_of(const Simplex& a, const Simplex& b) const;

  SimplicialMap projection_left() const;
  SimplicialMap projection_right() const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Simplex, Simplex>& p) const noexcept;
  };
  ComplexPtr left_;
  ComplexPtr right_;
  ComplexPtr set_;
  std::vector<std::pair<Simplex, Simplex>> components_;
  std::unordered_map<std::pair<Simplex, Simplex>, std::uint32_t, PairHash> index_;
};

using ProductPtr = std::shared_ptr<const ProductComplex>;

ProductPtr make_product(ComplexPtr left, ComplexPtr right, std::string name = {});

/// f x g between two products.
SimplicialMap product_map(const ProductComplex& source, const ProductComplex& target, const SimplicialMap& f,
                          const SimplicialMap& g);

/// One nondegenerate top cell of x x Delta^k: the shuffle simplex and the
/// sign of its shuffle (sign of the permutation sorting the interleaving,
/// with the Delta^k steps listed first).
struct PrismCell {
  Simplex simplex;
  int sign = 1;
};

/// Shuffle decomposition of X x Delta^k; cells[g] lists the C(m+k, k)
/// cells over an m-dimensional generator g of X.
struct PrismDecomposition {
  ComplexPtr base;
  int k = 0;
  std::vector<std::vector<PrismCell>> cells;
};

/// X x Delta^k together with its prism decomposition.
struct PrismComplex {
  ProductPtr product;
  PrismDecomposition decomposition;

  const ComplexPtr& complex() const { return product->complex(); }
  const ComplexPtr& base() const { return product->left(); }
  int k() const { return decomposition.k; }
};

using PrismPtr = std::shared_ptr<const PrismComplex>;

/// X x Delta^k for k in {0,...,4}. The product is ordered (X, Delta^k).
PrismPtr product_with_simplex(const ComplexPtr& base, int k);

/// Lazily built tower X x Delta^p with face inclusions id x delta_i and
/// degeneracy projections id x sigma_j. Thread-safe.
class PrismTower {
 public:
  explicit PrismTower(ComplexPtr base, int max_level = 4);

  const ComplexPtr& base() const { return base_; }
  int max_level() const { return max_level_; }
  PrismPtr level(int p) const;
  /// id x delta_i : X x Delta^{p-1} -> X x Delta^p.
  const SimplicialMap& face_map(int p, int i) const;
  /// id x sigma_j : X x Delta^{p+1} -> X x Delta^p.
  const SimplicialMap& degeneracy_map(int p, int j) const;
  /// id x theta for a monotone theta: [a] -> [b].
  SimplicialMap operator_map(const OrdMap& theta, int b) const;
  /// Isomorphism X -> X x Delta^0.
  const SimplicialMap& base_iso() const;
  /// Projection X x Delta^p -> X.
  SimplicialMap projection(int p) const;

 private:
  ComplexPtr base_;
  int max_level_;
  mutable std::recursive_mutex mutex_;
  mutable std::vector<PrismPtr> levels_;
  mutable std::vector<std::vector<std::unique_ptr<SimplicialMap>>> faces_;
  mutable std::vector<std::vector<std::unique_ptr<SimplicialMap>>> degens_;
  mutable std::unique_ptr<SimplicialMap> iso_;
};

}  // namespace simdiff
