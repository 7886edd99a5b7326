#pragma once

// Barycentric subdivision of a nonsingular simplicial set (every
// nondegenerate simplex has distinct vertices), with the last-vertex map,
// the subdivision operator and an explicit cochain homotopy between them.
//
// A simplex of sd X is a chain g_0 < g_1 < ... < g_k of generators, each a
// proper face of the next.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "simdiff/cochain.hpp"

namespace simdiff {

class Subdivision {
 public:
  explicit Subdivision(ComplexPtr base);

  const ComplexPtr& base() const { return base_; }
  const ComplexPtr& complex() const { return sd_; }
  /// The chain of base generators behind a generator of sd X.
  const std::vector<std::uint32_t>& chain(std::uint32_t sd_gen) const { return chains_.at(sd_gen); }
  /// Generator of sd X for a chain, or -1.
  std::int64_t find(const std::vector<std::uint32_t>& chain) const;

  /// lambda: sd X -> X, sending g to its last vertex.
  const SimplicialMap& last_vertex() const { return *lambda_; }
  /// sd^*: C^k(sd X) -> C^k(X), dual to the subdivision operator
  /// g -> sum over full flags of g of sign(flag) [flag].
  Cochain collapse(const Cochain& y) const;
  /// lambda^*: C^k(X) -> C^k(sd X).
  Cochain refine(const Cochain& x) const;
  /// D: C^{k+1}(sd X) -> C^k(sd X) with
  ///   lambda^* sd^* - 1 = delta D + D delta,  D lambda^* = 0,  sd^* D = 0.
  Cochain homotopy(const Cochain& y) const;
  /// The same relation from the raw cone construction, without the side
  /// conditions.
  Cochain cone_homotopy(const Cochain& y) const;

 private:
  using Chain = std::map<std::uint32_t, Rational>;
  const Chain& cone_chain(std::uint32_t sd_gen) const;
  Chain subdivide(std::uint32_t base_gen) const;

  ComplexPtr base_;
  ComplexPtr sd_;
  std::vector<std::vector<std::uint32_t>> chains_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index_;
  /// faces_[g][mask - 1] = the base generator spanned by the vertex mask.
  std::vector<std::vector<std::uint32_t>> faces_;
  std::unique_ptr<SimplicialMap> lambda_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, Chain> cone_;
};

using SubdivisionPtr = std::shared_ptr<const Subdivision>;

/// Cached subdivision of a complex (keyed by identity of the pointer).
SubdivisionPtr subdivision_of(const ComplexPtr& x);

/// sd f: sd M -> sd N.
SimplicialMap subdivide_map(const Subdivision& source, const Subdivision& target, const SimplicialMap& f);

}  // namespace simdiff
