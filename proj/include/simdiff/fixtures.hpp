#pragma once

#include <string>
#include <vector>

#include "simdiff/simplicial.hpp"

namespace simdiff {

enum class FixtureKind { Point, Simplex, Circle, Sphere2, Torus, RP2 };

FixtureKind parse_fixture_kind(const std::string& text);
std::string to_string(FixtureKind kind);

/// Builds a fixture complex. `n` is the number of vertices for circles and
/// the dimension for standard simplices; other kinds ignore it.
ComplexPtr build_standard(FixtureKind kind, int n = 3);

ComplexPtr point();
/// Delta^k, cached per k. Generator ids are bitmask - 1 of the vertex set.
ComplexPtr standard_simplex(int k);
/// Cyclic triangulation: vertices v_i, edges e_i from v_i to v_{i+1 mod n}.
ComplexPtr circle(int n);
ComplexPtr sphere2();
ComplexPtr torus();
ComplexPtr rp2();

/// Simplicial set of an ordered simplicial complex given by its facets
/// (vertex lists, sorted internally).
ComplexPtr ordered_complex(std::string name, std::vector<std::vector<int>> facets);

/// The simplex of Delta^k with the given nondecreasing vertex sequence.
Simplex delta_simplex(int k, const std::vector<int>& vertices);
/// Vertex sequence of a simplex of Delta^k.
std::vector<int> delta_vertices(const Simplex& s);

/// Delta^a -> Delta^b induced by a monotone theta: [a] -> [b].
SimplicialMap simplex_operator_map(const OrdMap& theta, int b);

SimplicialMap collapse_to_point(const ComplexPtr& complex);
SimplicialMap point_inclusion(const ComplexPtr& complex, std::uint32_t vertex_gen);
/// circle(source_n) -> circle(target_n), wrapping source_n / target_n times.
SimplicialMap circle_cover(const ComplexPtr& source, const ComplexPtr& target);

}  // namespace simdiff
