#pragma once

// The Chern character ch: E(X, n) -> C^n(X) as a symmetric monoidal
// functor into closed cochains, its three models (strict, subdivided and a
// second choice of fundamental cocycle), the pullback corrections ch_f and
// the weak inverse of the subdivision comparison.
//
// Forms are rational cochains on a "forms complex": X itself, or sd X in the
// subdivided model. A morphism w -> w' of closed forms is an (n-1)-cochain
// eta with delta eta = w' - w, taken modulo coboundaries.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "simdiff/groupoid.hpp"
#include "simdiff/moncat.hpp"
#include "simdiff/subdivision.hpp"

namespace simdiff {

/// Rational exactness in a fixed degree, by annihilators of the image of delta.
class ExactnessTest {
 public:
  ExactnessTest(ComplexPtr x, int degree);
  const ComplexPtr& complex() const { return x_; }
  int degree() const { return degree_; }
  bool exact(const Cochain& w) const;
  /// A functional that kills coboundaries and not w; empty when w is exact.
  std::vector<Rational> obstruction(const Cochain& w) const;
  const std::vector<std::vector<Rational>>& annihilators() const { return rows_; }

 private:
  ComplexPtr x_;
  int degree_;
  std::vector<std::vector<Rational>> rows_;
};

struct CochainMorphism {
  Cochain source;
  Cochain target;
  Cochain eta;
};

/// Closed n-cochains on X over Q with morphisms modulo coboundaries.
/// Strict symmetric monoidal under addition.
class CocycleGroupoid : public MonoidalGroupoid<Cochain, CochainMorphism> {
 public:
  CocycleGroupoid(ComplexPtr x, int n);

  const ComplexPtr& complex() const { return x_; }
  int degree() const { return n_; }
  const ExactnessTest& exactness() const { return *exact_; }
  bool is_object(const Cochain& w) const;
  bool is_morphism(const CochainMorphism& m) const;
  /// source -> source + delta eta.
  CochainMorphism morphism(const Cochain& source, const Cochain& eta) const;
  CochainMorphism zero_morphism(const Cochain& source, const Cochain& target) const;

  std::string name() const override;
  Cochain source(const CochainMorphism& m) const override { return m.source; }
  Cochain target(const CochainMorphism& m) const override { return m.target; }
  bool same_object(const Cochain& a, const Cochain& b) const override { return a == b; }
  CochainMorphism identity(const Cochain& a) const override;
  CochainMorphism compose(const CochainMorphism& first, const CochainMorphism& second) const override;
  CochainMorphism inverse(const CochainMorphism& m) const override;
  Decision decide(const CochainMorphism& a, const CochainMorphism& b) const override;
  Cochain unit() const override { return Cochain(x_, n_); }
  Cochain tensor(const Cochain& a, const Cochain& b) const override { return a + b; }
  CochainMorphism tensor_morphisms(const CochainMorphism& a, const CochainMorphism& b) const override;
  CochainMorphism left_unitor(const Cochain& a) const override { return identity(a); }
  CochainMorphism right_unitor(const Cochain& a) const override { return identity(a); }
  CochainMorphism associator(const Cochain& a, const Cochain& b, const Cochain& c) const override;
  CochainMorphism braiding(const Cochain& a, const Cochain& b) const override;
  Cochain sample_object(std::mt19937_64& rng) const override;
  CochainMorphism sample_morphism(const Cochain& from, std::mt19937_64& rng) const override;
  std::string describe(const Cochain& w) const override;

 private:
  ComplexPtr x_;
  int n_;
  std::unique_ptr<ExactnessTest> exact_;
  std::vector<Cochain> basis_;
};

// ---------------------------------------------------------------------------
// Diagrams of complexes

/// A finite diagram of simplicial maps with its composites and identities,
/// indexed like StrictDiagram.
struct MapDiagram {
  std::vector<ComplexPtr> objects;
  std::vector<SimplicialMap> maps;
  std::vector<IndexArrow> arrows;
  std::vector<CompositePair> composites;
  std::vector<int> identities;

  /// circle6 -> circle3 -> pt, pt -> circle3, torus -> circle3, rp2 -> pt,
  /// with every composite and identity they generate among the listed arrows.
  static MapDiagram standard();
  int find(const std::string& arrow) const;
};

// ---------------------------------------------------------------------------
// Subdivision comparison

/// F(X) = closed forms on sd X, G(X) = closed cochains on X, u = sd^*
/// (strict) with adjoint data
///   v y = lambda^* y + delta k(y),  eps_x = D x + k(sd^* x),  eta_y = -sd^* k(y),
/// where k(y) = sum_j y(g_j) beta_j is a seeded twist, chosen per complex
/// and deliberately not natural. twist_seed = 0 disables it.
class SubdivisionComparison {
 public:
  using Group = MonoidalGroupoid<Cochain, CochainMorphism>;
  using Endo = MonEndo<Cochain, CochainMorphism>;
  using Adjoint = AdjointEquivalenceData<Cochain, CochainMorphism>;

  SubdivisionComparison(int n, std::uint64_t twist_seed, bool break_zigzag = false);
  ~SubdivisionComparison();

  int degree() const { return n_; }
  const Subdivision& subdivision(const ComplexPtr& x) const;
  const CocycleGroupoid& fine(const ComplexPtr& x) const;
  const CocycleGroupoid& coarse(const ComplexPtr& x) const;
  Cochain twist(const ComplexPtr& x, const Cochain& y) const;
  Cochain v_object(const ComplexPtr& x, const Cochain& y) const;
  CochainMorphism v_morphism(const ComplexPtr& x, const CochainMorphism& m) const;

  Endo u(const ComplexPtr& x) const;
  Adjoint adjoint(const ComplexPtr& x) const;
  /// v_X with its monoidal structure.
  Endo v(const ComplexPtr& x) const;
  Endo fine_pullback(const SimplicialMap& f) const;
  Endo coarse_pullback(const SimplicialMap& f) const;
  /// v_f(y): F(f) v_N y -> v_M G(f) y.
  CochainMorphism cell(const SimplicialMap& f, const Cochain& y) const;

  struct Diagrams {
    StrictDiagram<Cochain, CochainMorphism> F, G;
    StrictTransformation<Cochain, CochainMorphism> u;
    std::vector<Adjoint> adjoint;
  };
  Diagrams diagrams(const MapDiagram& d) const;

 private:
  struct Site;
  const Site& site(const ComplexPtr& x) const;

  int n_;
  std::uint64_t twist_seed_;
  bool break_zigzag_;
  mutable std::mutex mutex_;
  mutable std::map<const SimplicialSet*, std::unique_ptr<Site>> sites_;
};

/// weak_inverse over the subdivision comparison of a map diagram.
CoherenceReport check_subdivision_inverse(const SubdivisionComparison& cmp, const MapDiagram& d,
                                          const CoherenceOptions& opt);

// ---------------------------------------------------------------------------
// Chern models

/// ch on objects, morphisms and tensors of E(X, n), natural up to the
/// correction ch_f: delta ch_f(c) = f^* ch_N(c) - ch_M(c o f).
class ChernModel {
 public:
  explicit ChernModel(int n, std::uint64_t perturb_seed = 0);
  virtual ~ChernModel() = default;
  ChernModel(const ChernModel&) = delete;
  ChernModel& operator=(const ChernModel&) = delete;

  virtual std::string name() const = 0;
  int degree() const { return n_; }
  const MappingGroupoid& groupoid(const ComplexPtr& x) const;
  /// Closed n-forms on forms_complex(x).
  const CocycleGroupoid& forms(const ComplexPtr& x) const;

  virtual ComplexPtr forms_complex(const ComplexPtr& x) const = 0;
  virtual Cochain ch_object(const ComplexPtr& x, const Cochain& c) const = 0;
  virtual Cochain ch_morphism(const ComplexPtr& x, const MapMorphism& h) const = 0;
  /// mu(a, b): ch a + ch b -> ch(a (+) b), as its (n-1)-cochain.
  virtual Cochain ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const = 0;
  /// Forms representative of an integral (n-1)-cocycle on x.
  virtual Cochain ch_lower(const ComplexPtr& x, const Cochain& z) const = 0;
  virtual Cochain pullback_forms(const SimplicialMap& f, const Cochain& w) const = 0;
  virtual Cochain pullback_correction(const SimplicialMap& f, const Cochain& c) const = 0;
  /// Forms back to cochains on x (sd^* in the subdivided model).
  virtual Cochain rham(const ComplexPtr& x, const Cochain& w) const = 0;
  /// ch on H^n(M; Z) -> H^n(M; Q) is multiplication by this scale (the
  /// class of iota_{n+1} in its own cohomology).
  virtual Integer class_scale() const { return 1; }

  /// int_{Delta^level} c over groupoid(x); a zero 0-cochain when the degree
  /// of c is below the level.
  Cochain fiber_integral(const ComplexPtr& x, const Cochain& c, int level) const;
  /// c o (f x id).
  Cochain pull_object(const SimplicialMap& f, const Cochain& c) const;
  MapMorphism pull_morphism(const SimplicialMap& f, const MapMorphism& h) const;
  MonFunctor<MappingGroupoid, CocycleGroupoid> functor(const ComplexPtr& x) const;

 protected:
  int n_;
  std::uint64_t perturb_seed_;

 private:
  mutable std::mutex mutex_;
  mutable std::map<const SimplicialSet*, std::pair<ComplexPtr, std::unique_ptr<CocycleGroupoid>>> forms_;
};

/// ch(c) = scale * int_{Delta^1} c, ch(H) = scale * int_{Delta^2} H,
/// mu = scale * int_{Delta^2} sigma, ch_f = 0. The level below is never
/// scaled (ch on E^{n-1} is the identity), so scale != 1 gives an
/// inconsistent iota family.
class StrictModel : public ChernModel {
 public:
  explicit StrictModel(int n, Integer iota_scale = 1, std::uint64_t perturb_seed = 0);
  const Integer& scale() const { return scale_; }
  std::string name() const override;
  ComplexPtr forms_complex(const ComplexPtr& x) const override { return x; }
  Cochain ch_object(const ComplexPtr& x, const Cochain& c) const override;
  Cochain ch_morphism(const ComplexPtr& x, const MapMorphism& h) const override;
  Cochain ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const override;
  Cochain ch_lower(const ComplexPtr& x, const Cochain& z) const override;
  Cochain pullback_forms(const SimplicialMap& f, const Cochain& w) const override;
  Cochain pullback_correction(const SimplicialMap& f, const Cochain& c) const override;
  Cochain rham(const ComplexPtr& x, const Cochain& w) const override;
  Integer class_scale() const override { return scale_; }

 private:
  Integer scale_;
};

/// ch^sd = v o ch on sd X, with ch_f(c) = -v_f(ch_N c).
class SubdividedModel : public ChernModel {
 public:
  SubdividedModel(int n, std::uint64_t twist_seed, std::uint64_t perturb_seed = 0);
  const SubdivisionComparison& comparison() const { return cmp_; }
  std::string name() const override;
  ComplexPtr forms_complex(const ComplexPtr& x) const override;
  Cochain ch_object(const ComplexPtr& x, const Cochain& c) const override;
  Cochain ch_morphism(const ComplexPtr& x, const MapMorphism& h) const override;
  Cochain ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const override;
  Cochain ch_lower(const ComplexPtr& x, const Cochain& z) const override;
  Cochain pullback_forms(const SimplicialMap& f, const Cochain& w) const override;
  Cochain pullback_correction(const SimplicialMap& f, const Cochain& c) const override;
  Cochain rham(const ComplexPtr& x, const Cochain& w) const override;

 private:
  SubdivisionComparison cmp_;
};

/// The model of a second fundamental cocycle iota' = iota + delta(beta):
/// ch'(c) = ch(c) + delta beta_X(ch c), with beta_X a seeded linear map
/// C^n(X) -> C^{n-1}(X) chosen independently on every complex.
class AltIotaModel : public ChernModel {
 public:
  AltIotaModel(int n, std::uint64_t beta_seed, std::uint64_t perturb_seed = 0);
  std::string name() const override;
  /// beta_X(w).
  Cochain beta(const ComplexPtr& x, const Cochain& w) const;
  ComplexPtr forms_complex(const ComplexPtr& x) const override { return x; }
  Cochain ch_object(const ComplexPtr& x, const Cochain& c) const override;
  Cochain ch_morphism(const ComplexPtr& x, const MapMorphism& h) const override;
  Cochain ch_plus(const ComplexPtr& x, const Cochain& a, const Cochain& b) const override;
  Cochain ch_lower(const ComplexPtr& x, const Cochain& z) const override;
  Cochain pullback_forms(const SimplicialMap& f, const Cochain& w) const override;
  Cochain pullback_correction(const SimplicialMap& f, const Cochain& c) const override;
  Cochain rham(const ComplexPtr& x, const Cochain& w) const override;

 private:
  std::uint64_t beta_seed_;
};

// ---------------------------------------------------------------------------
// Checks

/// Chern functor for the strict model with the explicit witnesses: every
/// functor square's defect equals delta of a fiber integral over Delta^3 of
/// the filler that built the structure cell (defect = 0 for n = 1).
CoherenceReport check_chern_witnesses(const StrictModel& model, const ComplexPtr& x, int trials,
                                      std::uint64_t seed);

/// For loops H at the zero object: int_{Delta^2} H against the double fiber
/// integral h of the cylinder of H, compared in H^{n-1}(X; Q). The two
/// orientations disagree, so the identity checked is ch(H) = -ch(h).
CoherenceReport check_loop_consistency(const StrictModel& model, const ComplexPtr& x, int trials,
                                       std::uint64_t seed);

/// Strict Chern functor with mu replaced by mu + m(a) zeta, where m(a) is
/// the first free coordinate of the class of a and zeta a closed,
/// non-exact (n-1)-form. Fails associativity and the right unit square.
MonFunctor<MappingGroupoid, CocycleGroupoid> corrupted_chern(const StrictModel& model, const ComplexPtr& x);

/// Eqs (1)-(4) for ch_f over the arrows of a diagram:
///   (1) delta ch_f(c) = f^* ch_N(c) - ch_M(c o f),
///   (2) f^* ch_N(H) + ch_f(c) - ch_f(c') = ch_M(H o f)      mod delta,
///   (3) ch_{g f}(c) = ch_f(c o g) + f^* ch_g(c)             mod delta,
///   (4) ch_id(c) = 0                                        mod delta.
/// trials cases (f, c, H) are drawn round-robin over the arrows.
CoherenceReport check_pullback_corrections(const ChernModel& model, const MapDiagram& d, int trials,
                                           std::uint64_t seed);

/// theta_c = beta(ch c) as a monoidal natural isomorphism ch => ch' that is
/// compatible with the corrections: f^* theta_N - theta_M(c o f) = ch'_f.
CoherenceReport check_iota_modification(const AltIotaModel& alt, const MapDiagram& d, int trials,
                                        std::uint64_t seed);

}  // namespace simdiff
