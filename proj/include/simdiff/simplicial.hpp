#pragma once

// Finite simplicial sets presented by nondegenerate generators.
//
// A simplex is a pair (g, s) where g is a generator of dimension q and
// s: [p] ->> [q] is a monotone surjection; the simplex is s^*(g). It is
// nondegenerate exactly when s is the identity. Faces of generators are
// stored in this form, so every face of every simplex is computable by
// composing ordinal maps.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "simdiff/numeric.hpp"

namespace simdiff {

/// Monotone map [p] -> [q], stored as the list of its p+1 values.
using OrdMap = std::vector<std::uint8_t>;

OrdMap identity_map(int p);
/// Coface delta_i: [p-1] -> [p], skipping i.
OrdMap coface(int p, int i);
/// Codegeneracy sigma_j: [p+1] -> [p], hitting j twice.
OrdMap codegeneracy(int p, int j);
/// outer o inner.
OrdMap compose(const OrdMap& outer, const OrdMap& inner);
bool is_surjective(const OrdMap& map, int target_dim);
/// Positions j with map(j) == map(j+1); for a surjection these are the
/// degeneracy indices of s^*.
std::vector<int> repeat_positions(const OrdMap& map);
/// Inverse of repeat_positions for surjections out of [p].
OrdMap surjection_from_repeats(int p, const std::vector<int>& repeats);

struct Simplex {
  std::uint32_t gen = 0;
  OrdMap map;

  int dim() const { return static_cast<int>(map.size()) - 1; }
  bool degenerate() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

struct Generator {
  int dim = 0;
  /// faces[i] = d_i of this generator; empty for vertices.
  std::vector<Simplex> faces;
  std::string label;
};

class SimplicialSet {
 public:
  SimplicialSet(std::string name, std::vector<Generator> generators);

  const std::string& name() const { return name_; }
  std::size_t size() const { return generators_.size(); }
  const Generator& generator(std::uint32_t id) const { return generators_.at(id); }
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  /// Generators of dimension d in increasing id order (empty if none).
  std::span<const std::uint32_t> generators_of_dim(int d) const;
  std::size_t count(int d) const { return generators_of_dim(d).size(); }
  /// Position of a generator inside generators_of_dim(its dim).
  std::uint32_t index_in_dim(std::uint32_t id) const { return index_in_dim_.at(id); }

  Simplex simplex(std::uint32_t id) const;
  Simplex face(const Simplex& s, int i) const;
  Simplex degeneracy(const Simplex& s, int j) const;
  /// theta^*(s) for a monotone theta: [r] -> [dim s].
  Simplex apply(const Simplex& s, const OrdMap& theta) const;
  /// The k-th vertex of s, as a vertex generator id.
  std::uint32_t vertex(const Simplex& s, int k) const;
  std::vector<std::uint32_t> vertices_of(std::uint32_t id) const;

  long euler_characteristic() const;

  /// Enumerates d_i d_j = d_{j-1} d_i on every generator and the mixed
  /// face/degeneracy identities on every first degeneracy; throws
  /// ConstructionError naming the first violation.
  void check_identities() const;

  friend bool operator==(const SimplicialSet& a, const SimplicialSet& b);

 private:
  std::string name_;
  std::vector<Generator> generators_;
  std::vector<std::vector<std::uint32_t>> by_dim_;
  std::vector<std::uint32_t> index_in_dim_;
};

using ComplexPtr = std::shared_ptr<const SimplicialSet>;

/// Generator-wise simplicial map. images[g] is the image of generator g.
class SimplicialMap {
 public:
  SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<Simplex> images);

  static SimplicialMap identity(ComplexPtr complex);

  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& target() const { return target_; }
  const Simplex& image(std::uint32_t gen) const { return images_.at(gen); }
  const std::vector<Simplex>& images() const { return images_; }

  Simplex operator()(const Simplex& s) const;

  /// Checks f(d_i g) = d_i f(g) for all generators; throws on violation.
  void check() const;

  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::vector<Simplex> images_;
};

bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

/// g o f. Throws ConstructionError if target(f) != source(g).
SimplicialMap compose_maps(const SimplicialMap& f, const SimplicialMap& g);

}  // namespace simdiff
