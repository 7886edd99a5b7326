#pragma once

// JSON interchange for complexes and cochains.
//
// Complex: {"name", "generators": [{"id", "dim", "label"?, "faces": [{"id",
// "degeneracies": [j, ...]}]}]}, where a face s_{j_1} ... (generator id) is
// given by the positions j at which its surjection repeats.
// Cochain: {"complex", "degree", "values": [{"id", "value": "p/q"}]}, sparse,
// ids are generator ids of the complex.

#include <string>

#include "json.hpp"
#include "simdiff/cochain.hpp"

namespace simdiff {

/// Malformed or inconsistent JSON input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

nlohmann::json complex_to_json(const SimplicialSet& x);
/// Throws SchemaError on a malformed document or a face-inconsistent complex.
ComplexPtr complex_from_json(const nlohmann::json& j);
ComplexPtr load_complex(const std::string& path);

nlohmann::json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const nlohmann::json& j, const ComplexPtr& x);

nlohmann::json rationals_to_json(const std::vector<Rational>& v);

}  // namespace simdiff
