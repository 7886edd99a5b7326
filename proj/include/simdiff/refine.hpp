#pragma once

// The groupoid refinement of E^n(M) and equivalences between two models.
// Objects are classes x in E^n(M); a morphism x -> y is a form eta modulo
// coboundaries with a(eta) = y - x. Hence pi_0 = H^n(M; Z) and every
// automorphism group is ker a = im ch.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "simdiff/diffhat.hpp"

namespace simdiff {

struct TildeMorphism {
  HatClass source;
  HatClass target;
  Cochain eta;
};

class TildeGroupoid : public MonoidalGroupoid<HatClass, TildeMorphism> {
 public:
  explicit TildeGroupoid(const HatTheory& theory) : t_(&theory) {}
  const HatTheory& theory() const { return *t_; }

  /// Some eta: x -> y, or nothing when I(x) != I(y).
  std::optional<TildeMorphism> hom(const HatClass& x, const HatClass& y) const;
  bool is_morphism(const TildeMorphism& m) const;
  /// Whether eta is exact on the forms complex (zero in degree 0).
  bool exact(const Cochain& eta) const;

  std::string name() const override;
  HatClass source(const TildeMorphism& m) const override { return m.source; }
  HatClass target(const TildeMorphism& m) const override { return m.target; }
  bool same_object(const HatClass& a, const HatClass& b) const override { return t_->equal(a, b); }
  TildeMorphism identity(const HatClass& a) const override;
  TildeMorphism compose(const TildeMorphism& first, const TildeMorphism& second) const override;
  TildeMorphism inverse(const TildeMorphism& m) const override;
  Decision decide(const TildeMorphism& a, const TildeMorphism& b) const override;
  HatClass unit() const override { return t_->zero(); }
  HatClass tensor(const HatClass& a, const HatClass& b) const override { return t_->add(a, b); }
  TildeMorphism tensor_morphisms(const TildeMorphism& a, const TildeMorphism& b) const override;
  TildeMorphism left_unitor(const HatClass& a) const override;
  TildeMorphism right_unitor(const HatClass& a) const override;
  TildeMorphism associator(const HatClass& a, const HatClass& b, const HatClass& c) const override;
  TildeMorphism braiding(const HatClass& a, const HatClass& b) const override;
  HatClass sample_object(std::mt19937_64& rng) const override;
  TildeMorphism sample_morphism(const HatClass& from, std::mt19937_64& rng) const override;

 private:
  TildeMorphism structural(const HatClass& from, const HatClass& to) const;
  const HatTheory* t_;
};

/// Strict symmetric monoidal axioms, morphism validity, End(0) = im ch,
/// Hom(x, y) nonempty iff I(x) = I(y), Aut(x) = Aut(0).
CheckList check_tilde(const TildeGroupoid& g, int trials, std::uint64_t seed);

/// Object-level map Phi: E_A(M) -> E_B(M) with its action on forms.
/// Phi(x + a(w)) ~ Phi(x) + a(on_forms(w)) and R_B Phi = on_curvature R_A.
struct RefinementMap {
  std::string name;
  const HatTheory* source = nullptr;
  const HatTheory* target = nullptr;
  std::function<HatClass(const HatClass&)> on_classes;
  /// Degree n-1.
  std::function<Cochain(const Cochain&)> on_forms;
  /// Degree n.
  std::function<Cochain(const Cochain&)> on_curvature;
};

/// Same model on both sides, Phi = id.
RefinementMap identity_map(const HatTheory& a, const HatTheory& b);
/// strict -> alt-iota: [c, w - beta(ch c)], on_forms = id.
RefinementMap alt_iota_map(const HatTheory& strict, const HatTheory& alt);
/// strict -> subdivided: [c, lambda^* w - k(ch c)], on_forms = lambda^*.
RefinementMap subdivision_map(const HatTheory& strict, const HatTheory& sub);
/// Dispatches on the model types; throws for unsupported pairs.
RefinementMap canonical_map(const HatTheory& a, const HatTheory& b);
/// Phi + a(q(I x)) with q(m) = m_0^2 rho: non-additive, I-compatible.
RefinementMap quadratic_shift(const RefinementMap& phi, const Cochain& rho);

enum class BDefect { none, cocycle, symmetry, unit };
std::string to_string(BDefect d);
BDefect parse_defect(const std::string& s);

/// B(u, v) = Phi(u + v) - Phi(u) - Phi(v) lifted along a, as a form on the
/// target; an injected defect is added on top.
class BObstruction {
 public:
  BObstruction(RefinementMap phi, BDefect defect = BDefect::none, Cochain rho = {});
  const RefinementMap& map() const { return phi_; }
  /// Throws Error when I(Phi(u + v)) != I(Phi u) + I(Phi v).
  Cochain operator()(const HatClass& u, const HatClass& v) const;
  /// Whether the form is zero in Omega^{n-1} / im ch of the target.
  bool trivial(const Cochain& w) const;

 private:
  RefinementMap phi_;
  BDefect defect_;
  Cochain rho_;
};

/// The three identities (B-cocycle, B-symmetry, B-unit) and
/// translation-naturality on `trials` sampled triples.
CheckList derive_B(const BObstruction& b, int trials, std::uint64_t seed);

/// A form rho on the target's forms complex with delta rho != 0, so that
/// a(k rho) != 0 for every k != 0.
Cochain defect_form(const HatTheory& t);

/// I, R and a compatibility, well-definedness, fully faithful on the
/// lattice of automorphisms, essential surjectivity, and the monoidal
/// functor axioms for the cells mu = B.
CheckList check_equivalence(const BObstruction& b, int trials, std::uint64_t seed);

/// Phi_M f^* ~ f^* Phi_N and B_M(f^* u, f^* v) ~ f^* B_N(u, v) over a
/// diagram, for a family of maps built per complex.
CheckList check_refinement_naturality(const ChernModel& a, const ChernModel& b, const MapDiagram& d, int trials,
                                      std::uint64_t seed);

}  // namespace simdiff
