#pragma once

// Eilenberg-MacLane spaces as simplicial abelian groups.
//
// K(A, n) has level m equal to Z^n(Delta^m; A), with faces and
// degeneracies given by restriction along coface/codegeneracy maps. Maps
// X -> K(A, n) correspond to Z^n(X; A); maps X x Delta^p -> K(A, n) form the
// mapping complex used by the groupoid constructions.
//
// Indexing: E_n = K(A, n) and E_n = Omega E_{n+1}. The loop identification
// sends an end-trivial cocycle on X x Delta^1 of degree n+1 to its fiber
// integral, with section w -> e_1 x w.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simdiff/cochain.hpp"
#include "simdiff/product.hpp"

namespace simdiff {

class EMSpace {
 public:
  EMSpace(int n, Coefficients coeffs);

  int degree() const { return n_; }
  const Coefficients& coeffs() const { return coeffs_; }

  /// Z-basis of Z^n(Delta^m; Z); reduced mod k it spans the Z/k level.
  const std::vector<Cochain>& level_basis(int m) const;
  Cochain basepoint(int m) const;
  /// Normalized A-cocycle of degree n on Delta^m.
  bool contains(const Cochain& y) const;

  /// theta^* y for a monotone theta: [a] -> [m].
  Cochain apply(const Cochain& y, const OrdMap& theta) const;
  Cochain face(const Cochain& y, int i) const;
  Cochain degeneracy(const Cochain& y, int j) const;

  template <class Rng>
  Cochain random_simplex(int m, Rng& rng, int spread = 3) const {
    Cochain y = basepoint(m);
    for (const auto& b : level_basis(m)) {
      y += Rational(static_cast<long>(rng() % static_cast<unsigned>(2 * spread + 1)) - spread) * b;
    }
    return normalize(y, coeffs_);
  }

  /// Enumerates the simplicial identities on random elements of levels
  /// 1..max_level; throws ConstructionError on violation.
  void check_identities(int max_level, unsigned seed) const;

 private:
  int n_;
  Coefficients coeffs_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<Cochain>> bases_;
};

/// iota_n: an n-simplex y of K(A, n) goes to scale * y(top simplex).
/// scale = 1 is the fundamental cocycle; other scales model perturbed
/// (non-compatible) families.
struct FundamentalCocycle {
  const EMSpace* space = nullptr;
  Integer scale = 1;

  Rational evaluate(const Cochain& y) const;
  /// The coboundary of iota evaluated on an (n+1)-simplex.
  Rational coboundary_at(const Cochain& y) const;
};

/// A simplicial map X -> K(A, n), given by the image of every generator.
class EMMap {
 public:
  EMMap(ComplexPtr source, const EMSpace& target, std::vector<Cochain> images);

  const ComplexPtr& source() const { return source_; }
  const EMSpace& target() const { return *target_; }
  const Cochain& image(std::uint32_t gen) const { return images_.at(gen); }
  /// Image of an arbitrary (possibly degenerate) simplex.
  Cochain image_of(const Simplex& s) const;
  /// Checks d_i f(g) = f(d_i g) on every generator.
  void check() const;

 private:
  ComplexPtr source_;
  const EMSpace* target_;
  std::vector<Cochain> images_;
};

/// f -> f^* iota.
Cochain map_to_cocycle(const EMMap& f, const FundamentalCocycle& iota);
/// Inverse of map_to_cocycle for iota with scale 1: generator g goes to
/// the pullback of z along its characteristic map Delta^m -> X.
EMMap cocycle_to_map(const Cochain& z, const EMSpace& target);
/// g o f for a simplicial f: X -> Y and g: Y -> K.
EMMap precompose(const SimplicialMap& f, const EMMap& g);

/// Finite piece of K(A, n): one vertex and one n-simplex per listed value.
ComplexPtr em_skeleton(const EMSpace& e, const std::vector<Integer>& values);
/// The tautological map em_skeleton -> K(A, n).
EMMap tautological_map(const ComplexPtr& skeleton, const EMSpace& e, const std::vector<Integer>& values);

/// Section of the loop identification: w -> e_1 x w on X x Delta^1.
Cochain suspend(const Cochain& w, const PrismComplex& prism1);
/// Loop identification: fiber integral over Delta^1.
Cochain loop(const Cochain& z, const PrismComplex& prism1);
bool end_trivial(const Cochain& z, const class PrismTower& tower);

/// Structure map K(A, n) x Delta^1 -> K(A, n+1) on level p:
/// S(w, t) = (id, t)^*(e_1 x w), for t: [p] -> [1].
Cochain structure_map(const Cochain& w, const OrdMap& t);

struct IotaReport {
  bool pass = true;
  int level = -1;
  std::string simplex;
  std::string message;
  std::size_t checked = 0;
};

/// Verifies int_I eps^* iota_{n+1} = iota_n on every n-face of a basis of
/// each level n..truncation of K(A, n), together with closedness of both
/// cocycles and simpliciality of the structure map on those levels.
IotaReport check_iota_compatibility(const EMSpace& en, const FundamentalCocycle& iota_n,
                                    const FundamentalCocycle& iota_n1, int truncation);

/// Result of extending boundary data to X x Delta^p.
struct ExtensionResult {
  bool exists = false;
  Cochain filler;
  /// When no extension exists: an integer-solver certificate over the
  /// interior equations (see solve_integer).
  std::vector<Rational> certificate;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

/// The simplicial abelian group p -> Z^d(X x Delta^p; A).
class MappingComplex {
 public:
  MappingComplex(ComplexPtr base, int degree, Coefficients coeffs, int max_level = 4);

  const ComplexPtr& base() const { return tower_.base(); }
  int degree() const { return degree_; }
  const Coefficients& coeffs() const { return coeffs_; }
  const PrismTower& tower() const { return tower_; }
  PrismPtr level(int p) const { return tower_.level(p); }

  Cochain zero(int p) const;
  /// A cocycle on X as a vertex (level 0) and back.
  Cochain from_base(const Cochain& z) const;
  Cochain to_base(const Cochain& y) const;
  Cochain face(const Cochain& y, int i) const;
  Cochain degeneracy(const Cochain& y, int j) const;
  /// Pullback along id x theta.
  Cochain apply(const Cochain& y, const OrdMap& theta) const;
  bool is_cocycle(const Cochain& y) const;
  Cochain normalize(Cochain y) const { return simdiff::normalize(std::move(y), coeffs_); }

  /// Fills the horn with the given faces (faces[k] ignored) by the Moore
  /// algorithm. When perturb_seed is nonzero a deterministic pseudo-random
  /// coboundary supported off the horn is added. Throws Error naming the
  /// first violated compatibility d_i y_j = d_{j-1} y_i.
  Cochain moore_fill(int m, int k, const std::vector<Cochain>& faces, std::uint64_t perturb_seed = 0) const;
  /// moore_fill without the compatibility check, for horns assembled from
  /// fillers the caller already trusts.
  Cochain moore_fill_unchecked(int m, int k, const std::vector<Cochain>& faces, std::uint64_t perturb_seed = 0) const;
  /// Checks horn compatibility; returns a description of the first
  /// violation, if any.
  std::optional<std::string> horn_violation(int m, int k, const std::vector<Cochain>& faces) const;

  /// Extends prescribed faces (nullopt = free) to a cocycle on X x Delta^p.
  ExtensionResult extend(int p, const std::vector<std::optional<Cochain>>& faces) const;

 private:
  struct Split {
    std::vector<std::uint32_t> unknown_gens;               // degree-d generators off the prescribed faces
    std::vector<std::int64_t> unknown_index;               // by index_in_dim, -1 if prescribed
    std::vector<std::uint32_t> equation_gens;              // (d+1)-generators off the prescribed faces
  };
  const Split& split(int p, unsigned prescribed_mask) const;

  int degree_;
  Coefficients coeffs_;
  PrismTower tower_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, unsigned>, Split> splits_;
};

/// Vertex mask of the Delta-leg of a generator of X x Delta^p.
unsigned delta_leg_mask(const PrismComplex& prism, std::uint32_t gen);

}  // namespace simdiff
