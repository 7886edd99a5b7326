#pragma once

// The groupoid of based loops X x (Delta^1, dDelta^1) -> K(A, n), with
// morphisms given by 2-simplices of the mapping complex and composition,
// tensor and structure cells built from Moore horn fillers.
//
// Simplex conventions (vertices 0 < 1 < 2 of a morphism H: f -> g):
//   d_2 H = f, d_1 H = g, d_0 H = *,
// and H0, H1: f -> g are equal when some G on X x Delta^3 has
//   d_0 G = H1, d_1 G = H0, d_2 G = s_0 g, d_3 G = s_0 f.

#include <cstdint>
#include <random>

#include "simdiff/cohomology.hpp"
#include "simdiff/em.hpp"
#include "simdiff/moncat.hpp"

namespace simdiff {

/// A morphism f -> g: a cocycle on X x Delta^2 with the face conditions
/// above.
struct MapMorphism {
  Cochain source;
  Cochain target;
  Cochain data;
};

struct ClassEquality {
  bool equal = false;
  /// G on X x Delta^3 when equal.
  Cochain witness;
  /// Relative-solver certificate when not equal.
  std::vector<Rational> certificate;
  /// Whether the independent test "int_{Delta^2}(H1 - H0) is a coboundary"
  /// reached the same verdict.
  bool integral_agrees = false;
};

struct OplusResult {
  Cochain object;
  Cochain sigma;
};

/// A structure morphism with the 3-simplices its construction filled.
struct FilledMorphism {
  MapMorphism morphism;
  std::vector<Cochain> fillers;
};

struct StrictnessReport {
  bool unit_left_strict = true;    // * (+) f == f as data
  bool unit_right_strict = true;   // f (+) * == f
  bool associative_strict = true;  // (h (+) g) (+) f == h (+) (g (+) f)
  bool unitors_trivial = true;     // unitor classes are identities
  bool associator_trivial = true;
  bool braiding_trivial = true;
  int samples = 0;
  nlohmann::json to_json() const;
};

class MappingGroupoid : public MonoidalGroupoid<Cochain, MapMorphism> {
 public:
  /// Objects are degree-(n+1) cocycles on X x Delta^1 vanishing on both
  /// ends. Nonzero perturb_seed adds pseudo-random relative coboundaries
  /// to every 3-dimensional filler.
  MappingGroupoid(ComplexPtr base, int n, Coefficients coeffs, std::uint64_t perturb_seed = 0);

  const MappingComplex& mapping_complex() const { return mc_; }
  int degree() const { return n_; }
  const Coefficients& coeffs() const { return mc_.coeffs(); }
  std::uint64_t perturb_seed() const { return perturb_seed_; }

  /// The loop identification between objects and Z^n(X; A).
  Cochain object_from_cocycle(const Cochain& w) const;
  Cochain cocycle_of(const Cochain& f) const;
  bool is_object(const Cochain& f) const;
  bool is_morphism(const MapMorphism& h) const;
  Cochain zero_object() const { return mc_.zero(1); }

  /// Canonical filler of the 2-horn (f, g) and f (+) g = d_1 sigma(f, g).
  Cochain sigma(const Cochain& f, const Cochain& g) const;
  OplusResult oplus(const Cochain& f, const Cochain& g) const;
  /// H0 (+) H1 from two 3-dimensional fills on vertices 0..4.
  FilledMorphism oplus_data(const MapMorphism& h0, const MapMorphism& h1) const;
  /// rho_f: * (+) f -> f, the d_1 face of a filled 3-horn.
  FilledMorphism rho_data(const Cochain& f) const;
  /// alpha_{h,g,f}: (h (+) g) (+) f -> h (+) (g (+) f) with fillers tau, kappa.
  FilledMorphism associator_data(const Cochain& h, const Cochain& g, const Cochain& f) const;
  /// Pointwise sum of morphisms, the second concatenation.
  MapMorphism pointwise_sum(const MapMorphism& a, const MapMorphism& b) const;
  /// The composite filler for compose(first, second).
  FilledMorphism compose_data(const MapMorphism& first, const MapMorphism& second) const;
  /// The inverse with the 3-simplex it was read off from.
  FilledMorphism inverse_data(const MapMorphism& m) const;

  /// Decides class equality of parallel morphisms.
  ClassEquality class_equal(const MapMorphism& a, const MapMorphism& b) const;

  /// Some morphism f -> g if the objects are isomorphic.
  std::optional<MapMorphism> connect(const Cochain& f, const Cochain& g) const;
  /// The automorphism of f with class u in Z^{n-1}(X; A): s_1 f + e_2 x u.
  MapMorphism twist(const MapMorphism& h, const Cochain& u) const;

  StrictnessReport strictness(int samples, std::uint64_t seed) const;

  // MonoidalGroupoid interface. left_unitor is rho, right_unitor is the
  // inverse of sigma(f, *), braiding is rho_g + lambda_f (pointwise).
  std::string name() const override;
  Cochain source(const MapMorphism& m) const override { return m.source; }
  Cochain target(const MapMorphism& m) const override { return m.target; }
  bool same_object(const Cochain& a, const Cochain& b) const override { return a == b; }
  MapMorphism identity(const Cochain& f) const override;
  MapMorphism compose(const MapMorphism& first, const MapMorphism& second) const override;
  MapMorphism inverse(const MapMorphism& m) const override;
  Decision decide(const MapMorphism& a, const MapMorphism& b) const override;
  Cochain unit() const override { return zero_object(); }
  Cochain tensor(const Cochain& a, const Cochain& b) const override { return oplus(a, b).object; }
  MapMorphism tensor_morphisms(const MapMorphism& a, const MapMorphism& b) const override;
  MapMorphism left_unitor(const Cochain& f) const override { return rho_data(f).morphism; }
  MapMorphism right_unitor(const Cochain& f) const override;
  MapMorphism associator(const Cochain& a, const Cochain& b, const Cochain& c) const override;
  MapMorphism braiding(const Cochain& a, const Cochain& b) const override;
  Cochain sample_object(std::mt19937_64& rng) const override;
  MapMorphism sample_morphism(const Cochain& from, std::mt19937_64& rng) const override;
  std::string describe(const Cochain& f) const override;

 private:
  Cochain fill3(int k, std::vector<Cochain> faces) const;
  Cochain random_cocycle(int degree, std::mt19937_64& rng) const;
  Cochain random_interior(int level, std::mt19937_64& rng) const;

  int n_;
  MappingComplex mc_;
  std::uint64_t perturb_seed_;
  std::vector<Cochain> basis_n_, basis_n1_;
};

/// Morphisms in the cylinder model: cocycles on (X x Delta^1) x Delta^1
/// restricting to f and g on the two ends of the second factor and to *
/// on the ends of the first.
class CylinderModel {
 public:
  explicit CylinderModel(const MappingGroupoid& g);

  /// Pullback along id_X x q, q: Delta^1 x Delta^1 -> Delta^2 the
  /// collapse (0,0),(1,0),(0,1),(1,1) -> 0,1,0,2.
  Cochain from_triangle(const MapMorphism& h) const;
  /// A triangle morphism whose image is equal to c.
  MapMorphism to_triangle(const Cochain& c, const Cochain& f, const Cochain& g) const;
  bool is_morphism(const Cochain& c, const Cochain& f, const Cochain& g) const;
  /// Composite by filling the 2-horn in the mapping complex over X x Delta^1.
  Cochain compose(const Cochain& first, const Cochain& second) const;
  /// Equality: the double fiber integral of the difference is a coboundary.
  bool equal(const Cochain& a, const Cochain& b) const;
  /// The double fiber integral, first over the cylinder direction, then
  /// over the loop direction.
  Cochain loop_class(const Cochain& c) const;
  const MappingComplex& mapping_complex() const { return mc_; }

 private:
  const MappingGroupoid* g_;
  MappingComplex mc_;
  SimplicialMap q_;
};

}  // namespace simdiff
