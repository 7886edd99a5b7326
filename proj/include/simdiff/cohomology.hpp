#pragma once

#include <string>
#include <vector>

#include "simdiff/cochain.hpp"

namespace simdiff {

/// Z^free + (+) Z/t_i + Q^divisible + (Q/Z)^lattice.
struct GroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
  std::size_t divisible_rank = 0;
  std::size_t lattice_quotients = 0;

  bool trivial() const { return free_rank == 0 && torsion.empty() && divisible_rank == 0 && lattice_quotients == 0; }
  std::string to_string() const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// H^n(X; Z) with explicit coordinates.
///
/// Cocycles are written in a saturated basis of ker delta_n; the Smith form
/// of the relation lattice (im delta_{n-1} in those coordinates) splits the
/// quotient into cyclic summands, one per entry of `orders` (0 = free).
class IntegerCohomology {
 public:
  IntegerCohomology(ComplexPtr x, int n);

  const ComplexPtr& complex() const { return x_; }
  int degree() const { return n_; }
  const GroupPresentation& presentation() const { return presentation_; }
  /// Orders of the nontrivial summands, torsion first then free (0).
  const std::vector<Integer>& orders() const { return orders_; }

  /// Coordinates of a cocycle's class, one per nontrivial summand, torsion
  /// coordinates reduced to [0, order).
  std::vector<Integer> class_of(const Cochain& z) const;
  /// Representative cocycle of the i-th nontrivial summand.
  const Cochain& generator(std::size_t i) const { return generators_.at(i); }
  std::size_t summands() const { return orders_.size(); }
  /// Rank of Z^n(X; Z).
  std::size_t cocycle_rank() const { return kernel_.basis.cols(); }
  /// i-th vector of a Z-basis of Z^n(X; Z).
  Cochain cocycle_basis(std::size_t i) const;

 private:
  ComplexPtr x_;
  int n_;
  IntegerKernel kernel_;
  SmithForm relations_;
  std::vector<std::size_t> summand_rows_;
  std::vector<Integer> orders_;
  std::vector<Cochain> generators_;
  GroupPresentation presentation_;
};

/// H^n(X; coeffs). Z/k is derived from the integral groups by the
/// universal coefficient theorem; Q and V by ranks.
GroupPresentation cohomology(const ComplexPtr& x, int n, const Coefficients& coeffs);

/// Rank of delta_n over Q.
std::size_t coboundary_rank(const SimplicialSet& x, int n);

}  // namespace simdiff
