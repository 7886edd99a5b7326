#pragma once

// Differential cohomology classes [c, omega] built from a Chern model:
// c an object of E(M, n), omega an (n-1)-form, and
//   (c1, w1) ~ (c2, w2)  iff  some H: c1 -> c2 has ch(H) = w1 - w2 mod delta.
// Addition, pullback, the maps a, I, R, the isomorphism type and the
// exactness certificate of the row
//   H^{n-1}(M; Z) --ch--> C^{n-1}/im delta --a--> E^n(M) --I--> H^n(M; Z) -> 0.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "simdiff/certificate.hpp"
#include "simdiff/chern.hpp"

namespace simdiff {

struct HatClass {
  Cochain c;
  Cochain omega;
};

struct HatEquality {
  bool equal = false;
  /// When equal: H: c1 -> c2 and y with w1 - w2 - ch(H) = delta y.
  std::optional<MapMorphism> homotopy;
  Cochain correction;
  /// When unequal: the reason and a functional separating the classes.
  std::string reason;
  std::vector<Rational> obstruction;
};

/// Coordinates of a class against a presentation: Z^b x T over H^n, Q^d
/// divisible part, (Q/Z)^r circle part (entries in [0, 1)).
struct HatCoordinates {
  std::vector<Integer> integral;
  std::vector<Rational> divisible;
  std::vector<Rational> circle;
  friend bool operator==(const HatCoordinates&, const HatCoordinates&) = default;
};

struct HatGroup {
  ComplexPtr base;
  int degree = 0;
  /// free_rank and torsion: H^n(M; Z); divisible_rank: Q summands;
  /// lattice_quotients: Q/Z summands.
  GroupPresentation presentation;
  /// Lifts of the generators of H^n(M; Z).
  std::vector<HatClass> integral_sections;
  /// Forms e with a(t e), t in Q, giving the Q summands.
  std::vector<Cochain> divisible_forms;
  /// Forms l with a(t l), t in Q/Z, giving the Q/Z summands.
  std::vector<Cochain> circle_forms;
  /// Generators and relations checked in both directions.
  CheckList verification;
};

class HatTheory {
 public:
  HatTheory(const ChernModel& model, ComplexPtr m);

  const ChernModel& model() const { return *model_; }
  const ComplexPtr& complex() const { return m_; }
  const ComplexPtr& forms_complex() const { return y_; }
  int degree() const { return n_; }
  const MappingGroupoid& groupoid() const { return *g_; }
  const IntegerCohomology& top_cohomology() const { return *top_; }
  const IntegerCohomology& lower_cohomology() const { return *lower_; }

  HatClass zero() const;
  HatClass add(const HatClass& x, const HatClass& y) const;
  HatClass neg(const HatClass& x) const;
  HatClass sub(const HatClass& x, const HatClass& y) const { return add(x, neg(y)); }
  HatClass a(const Cochain& omega) const;
  std::vector<Integer> I(const HatClass& x) const;
  Cochain R(const HatClass& x) const;
  /// [object of the integral cocycle z, 0].
  HatClass lift(const Cochain& z) const;
  /// The sum of lifts of generators with the given coordinates in H^n.
  HatClass lift_class(const std::vector<Integer>& coords) const;
  /// alpha = w - ch(H) for H: c -> 0, so that a(alpha) ~ x; empty when
  /// I(x) != 0.
  std::optional<Cochain> preimage_a(const HatClass& x) const;
  HatEquality eq(const HatClass& x, const HatClass& y) const;
  bool equal(const HatClass& x, const HatClass& y) const { return eq(x, y).equal; }
  HatClass sample(std::mt19937_64& rng) const;
  /// A form in the image of ch on E^{n-1}: ch_lower of an integral cocycle.
  Cochain sample_lower(std::mt19937_64& rng) const;

  /// f: complex() -> source of x. [c o f, f^* omega + ch_f(c)].
  HatClass pullback(const SimplicialMap& f, const HatClass& x) const;

  /// ch(twist(id, z_j)) - ch(id) over an integral cocycle basis z_j of
  /// degree n-1: generators of the kernel of a modulo coboundaries.
  const std::vector<Cochain>& kernel_generators() const { return kernel_gens_; }
  /// ch_lower(z_j): generators of the image of ch on E^{n-1}.
  const std::vector<Cochain>& image_generators() const { return image_gens_; }
  /// Whether w is an integral combination of `gens` plus a coboundary on the
  /// forms complex; coefficients, or a functional that is integral on the
  /// generators, zero on coboundaries and not integral on w.
  IntegerSolution lattice_solve(const std::vector<Cochain>& gens, const Cochain& w) const;
  /// Rank over Q of the span of `gens` modulo coboundaries.
  std::size_t lattice_rank(const std::vector<Cochain>& gens) const;

  HatGroup group(int trials, std::uint64_t seed) const;
  HatCoordinates coordinates(const HatGroup& g, const HatClass& x) const;
  HatClass from_coordinates(const HatGroup& g, const HatCoordinates& k) const;

  /// Claims, each with witnesses or an obstruction:
  ///   R-a, I-a, R-closed, ker-I-in-im-a, im-ch-in-ker-a, ker-a-in-im-ch,
  ///   I-surjective, Rham-R-equals-ch-I, well-defined, group-laws, additive.
  CheckList exactness_certificate(int trials, std::uint64_t seed) const;

 private:
  const ChernModel* model_;
  ComplexPtr m_, y_;
  int n_;
  const MappingGroupoid* g_;
  std::unique_ptr<IntegerCohomology> top_, lower_;
  std::unique_ptr<ExactnessTest> forms_exact_, top_exact_;
  std::vector<Cochain> lower_basis_;
  std::vector<Cochain> kernel_gens_, image_gens_;
};

/// Naturality over a diagram: pullback is functorial on classes, identities
/// act trivially, and a, I, R commute with pullback.
CheckList check_hat_naturality(const ChernModel& model, const MapDiagram& d, int trials, std::uint64_t seed);

}  // namespace simdiff
