#include "simdiff/io.hpp"

#include <algorithm>
#include <fstream>

namespace simdiff {

nlohmann::json complex_to_json(const SimplicialSet& x) {
  nlohmann::json gens = nlohmann::json::array();
  for (std::uint32_t id = 0; id < x.size(); ++id) {
    const Generator& g = x.generator(id);
    nlohmann::json faces = nlohmann::json::array();
    for (const Simplex& f : g.faces) faces.push_back({{"id", f.gen}, {"degeneracies", repeat_positions(f.map)}});
    gens.push_back({{"id", id}, {"dim", g.dim}, {"label", g.label}, {"faces", std::move(faces)}});
  }
  return {{"name", x.name()}, {"generators", std::move(gens)}};
}

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(where + ": field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

ComplexPtr complex_from_json(const nlohmann::json& j) {
  const auto name = field<std::string>(j, "name", "complex");
  const auto gens = field<nlohmann::json>(j, "generators", "complex");
  if (!gens.is_array()) throw SchemaError("complex: \"generators\" must be an array");
  std::vector<Generator> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generator " + std::to_string(i);
    const auto& g = gens[i];
    if (field<long>(g, "id", where) != static_cast<long>(i)) throw SchemaError(where + ": ids must be 0, 1, 2, ...");
    Generator gen;
    gen.dim = field<int>(g, "dim", where);
    if (gen.dim < 0 || gen.dim > 8) throw SchemaError(where + ": dimension out of range");
    gen.label = g.contains("label") ? field<std::string>(g, "label", where) : "g" + std::to_string(i);
    const auto faces = field<nlohmann::json>(g, "faces", where);
    if (!faces.is_array() || faces.size() != static_cast<std::size_t>(gen.dim == 0 ? 0 : gen.dim + 1)) {
      throw SchemaError(where + ": a generator of dimension d needs d+1 faces (none for vertices)");
    }
    for (const auto& f : faces) {
      const auto id = field<long>(f, "id", where);
      auto repeats = field<std::vector<int>>(f, "degeneracies", where);
      if (id < 0 || static_cast<std::size_t>(id) >= i) throw SchemaError(where + ": faces must name earlier generators");
      const int target_dim = gens[static_cast<std::size_t>(id)].value("dim", -1);
      const int p = gen.dim - 1;
      if (target_dim + static_cast<int>(repeats.size()) != p) {
        throw SchemaError(where + ": face dimension does not match its degeneracies");
      }
      std::sort(repeats.begin(), repeats.end());
      for (std::size_t k = 0; k < repeats.size(); ++k) {
        if (repeats[k] < 0 || repeats[k] >= p || (k > 0 && repeats[k] == repeats[k - 1])) {
          throw SchemaError(where + ": degeneracy indices must be distinct and in range");
        }
      }
      gen.faces.push_back(Simplex{static_cast<std::uint32_t>(id), surjection_from_repeats(p, repeats)});
    }
    out.push_back(std::move(gen));
  }
  try {
    auto x = std::make_shared<SimplicialSet>(name, std::move(out));
    x->check_identities();
    return x;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("complex: ") + e.what());
  }
}

ComplexPtr load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return complex_from_json(j);
}

nlohmann::json cochain_to_json(const Cochain& c) {
  nlohmann::json values = nlohmann::json::array();
  const auto gens = c.complex()->generators_of_dim(c.degree());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.at(i) != 0) values.push_back({{"id", gens[i]}, {"value", format_rational(c.at(i))}});
  }
  return {{"complex", c.complex()->name()}, {"degree", c.degree()}, {"values", std::move(values)}};
}

Cochain cochain_from_json(const nlohmann::json& j, const ComplexPtr& x) {
  const int degree = field<int>(j, "degree", "cochain");
  Cochain c(x, degree);
  for (const auto& v : field<nlohmann::json>(j, "values", "cochain")) {
    const auto id = field<std::uint32_t>(v, "id", "cochain value");
    if (id >= x->size() || x->generator(id).dim != degree) throw SchemaError("cochain: generator id out of range");
    try {
      c.set(id, parse_rational(field<std::string>(v, "value", "cochain value")));
    } catch (const SchemaError&) {
      throw;
    } catch (const std::exception& e) {
      throw SchemaError(std::string("cochain: ") + e.what());
    }
  }
  return c;
}

nlohmann::json rationals_to_json(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

}  // namespace simdiff
