#include "simdiff/cochain.hpp"

#include "simdiff/fixtures.hpp"

namespace simdiff {

Coefficients Coefficients::modular(const Integer& k) {
  if (k < 2) throw ConstructionError("modular coefficients need k >= 2");
  return {CoeffKind::Modular, k, {}};
}

Coefficients Coefficients::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text == "V") return ordinary_v();
  if (text.rfind("Z/", 0) == 0) {
    try {
      return modular(Integer(text.substr(2)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConstructionError("unknown coefficients '" + text + "' (expected Z, Q, V or Z/k)");
}

std::string Coefficients::name() const {
  switch (kind) {
    case CoeffKind::Integers: return "Z";
    case CoeffKind::Modular: return "Z/" + modulus.get_str();
    case CoeffKind::Rationals: return "Q";
    case CoeffKind::GradedRationals: return "V";
  }
  return "?";
}

Rational Coefficients::normalize(const Rational& v) const {
  if (kind != CoeffKind::Modular) return v;
  if (!is_integral(v)) throw Error("non-integral value in Z/" + modulus.get_str() + " cochain");
  return Rational(mod_floor(v.get_num(), modulus));
}

bool Coefficients::admits(const Rational& v) const {
  return kind == CoeffKind::Rationals || kind == CoeffKind::GradedRationals || is_integral(v);
}

Cochain::Cochain(ComplexPtr complex, int degree)
    : complex_(std::move(complex)), degree_(degree), values_(degree < 0 ? 0 : complex_->count(degree)) {}

const Rational& Cochain::value(std::uint32_t gen) const {
  if (complex_->generator(gen).dim != degree_) throw Error("cochain evaluated on generator of wrong dimension");
  return values_[complex_->index_in_dim(gen)];
}

void Cochain::set(std::uint32_t gen, const Rational& v) {
  if (complex_->generator(gen).dim != degree_) throw Error("cochain set on generator of wrong dimension");
  values_[complex_->index_in_dim(gen)] = v;
}

Rational Cochain::evaluate(const Simplex& s) const {
  if (s.dim() != degree_ || s.degenerate()) return 0;
  return values_[complex_->index_in_dim(s.gen)];
}

bool Cochain::is_zero() const {
  for (const auto& v : values_) {
    if (v != 0) return false;
  }
  return true;
}

bool Cochain::is_integral() const {
  for (const auto& v : values_) {
    if (!simdiff::is_integral(v)) return false;
  }
  return true;
}

void Cochain::check_compatible(const Cochain& other) const {
  if (degree_ != other.degree_ || !same_complex(complex_, other.complex_)) {
    throw Error("cochain arithmetic on mismatched complexes or degrees");
  }
}

Cochain& Cochain::operator+=(const Cochain& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Cochain& Cochain::operator*=(const Rational& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.degree_ == b.degree_ && same_complex(a.complex_, b.complex_) && a.values_ == b.values_;
}

Cochain normalize(Cochain c, const Coefficients& coeffs) {
  if (coeffs.kind != CoeffKind::Modular) return c;
  for (std::size_t i = 0; i < c.size(); ++i) c.at(i) = coeffs.normalize(c.at(i));
  return c;
}

IntMatrix coboundary_matrix(const SimplicialSet& x, int n) {
  const auto rows = x.generators_of_dim(n + 1);
  IntMatrix m(rows.size(), n < 0 ? 0 : x.count(n));
  if (n < 0) return m;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Simplex s = x.simplex(rows[r]);
    for (int i = 0; i <= n + 1; ++i) {
      const Simplex f = x.face(s, i);
      if (!f.degenerate()) m.add(r, x.index_in_dim(f.gen), i % 2 == 0 ? 1 : -1);
    }
  }
  m.finalize();
  return m;
}

Cochain coboundary(const Cochain& c) {
  const auto& x = *c.complex();
  Cochain out(c.complex(), c.degree() + 1);
  const auto rows = x.generators_of_dim(c.degree() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Simplex s = x.simplex(rows[r]);
    Rational v = 0;
    for (int i = 0; i <= c.degree() + 1; ++i) {
      const Rational f = c.evaluate(x.face(s, i));
      if (i % 2 == 0) {
        v += f;
      } else {
        v -= f;
      }
    }
    out.at(r) = v;
  }
  return out;
}

Cochain pullback(const SimplicialMap& f, const Cochain& z) {
  if (!same_complex(f.target(), z.complex())) throw Error("pullback: cochain does not live on the map's target");
  Cochain out(f.source(), z.degree());
  const auto gens = f.source()->generators_of_dim(z.degree());
  const auto& src = *z.complex();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Simplex s = f.image(gens[i]);
    if (s.dim() != z.degree() || s.degenerate()) continue;
    const Rational& v = z.values()[src.index_in_dim(s.gen)];
    if (v != 0) out.at(i) = v;
  }
  return out;
}

Cochain cross(const ProductComplex& product, const Cochain& fiber, const Cochain& base) {
  if (!same_complex(product.right(), fiber.complex()) || !same_complex(product.left(), base.complex())) {
    throw Error("cross: cochains do not live on the product factors");
  }
  const int p = fiber.degree();
  const int q = base.degree();
  Cochain out(product.complex(), p + q);
  const auto gens = product.complex()->generators_of_dim(p + q);
  OrdMap front(static_cast<std::size_t>(p + 1)), back(static_cast<std::size_t>(q + 1));
  for (int t = 0; t <= p; ++t) front[t] = static_cast<std::uint8_t>(t);
  for (int t = 0; t <= q; ++t) back[t] = static_cast<std::uint8_t>(p + t);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& [a, b] = product.components(gens[i]);
    const Rational fv = fiber.evaluate(product.right()->apply(b, front));
    if (fv == 0) continue;
    out.at(i) = fv * base.evaluate(product.left()->apply(a, back));
  }
  return out;
}

Cochain top_indicator(int k) {
  auto d = standard_simplex(k);
  Cochain c(d, k);
  c.set((1u << (k + 1)) - 2, 1);
  return c;
}

Cochain fiber_integrate(const Cochain& z, const PrismComplex& prism) {
  if (!same_complex(z.complex(), prism.complex())) throw Error("fiber_integrate: cochain is not on the prism complex");
  const int k = prism.k();
  if (z.degree() < k) throw Error("fiber_integrate: degree " + std::to_string(z.degree()) + " below fiber dimension " +
                                  std::to_string(k));
  const auto& base = prism.base();
  Cochain out(base, z.degree() - k);
  const auto gens = base->generators_of_dim(z.degree() - k);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Rational v = 0;
    for (const auto& cell : prism.decomposition.cells[gens[i]]) {
      const Rational zv = z.evaluate(cell.simplex);
      if (cell.sign > 0) {
        v += zv;
      } else {
        v -= zv;
      }
    }
    out.at(i) = v;
  }
  return out;
}

namespace {

std::vector<Integer> integral_values(const Cochain& c) {
  std::vector<Integer> out;
  out.reserve(c.size());
  for (const auto& v : c.values()) {
    if (!is_integral(v)) throw Error("integer coboundary problem with non-integral target");
    out.push_back(v.get_num());
  }
  return out;
}

}  // namespace

CoboundarySolution solve_coboundary(const Cochain& target, const Coefficients& coeffs) {
  const int n = target.degree();
  if (n < 1) throw Error("solve_coboundary needs target degree >= 1");
  const IntMatrix d = coboundary_matrix(*target.complex(), n - 1);
  CoboundarySolution out;
  if (coeffs.kind == CoeffKind::Rationals || coeffs.kind == CoeffKind::GradedRationals) {
    auto res = solve_rational(to_rational(d), target.values());
    out.solvable = res.solvable;
    if (res.solvable) {
      out.eta = Cochain(target.complex(), n - 1);
      for (std::size_t i = 0; i < res.x.size(); ++i) out.eta.at(i) = res.x[i];
    } else {
      out.certificate = std::move(res.certificate);
    }
    return out;
  }
  const Integer modulus = coeffs.kind == CoeffKind::Modular ? coeffs.modulus : Integer(0);
  auto res = solve_integer(d, integral_values(target), modulus);
  out.solvable = res.solvable;
  if (res.solvable) {
    out.eta = Cochain(target.complex(), n - 1);
    for (std::size_t i = 0; i < res.x.size(); ++i) out.eta.at(i) = Rational(res.x[i]);
  } else {
    out.certificate = std::move(res.certificate);
  }
  return out;
}

bool verify_coboundary_certificate(const Cochain& target, const Coefficients& coeffs,
                                   const std::vector<Rational>& certificate) {
  const int n = target.degree();
  const IntMatrix d = coboundary_matrix(*target.complex(), n - 1);
  if (coeffs.kind == CoeffKind::Rationals || coeffs.kind == CoeffKind::GradedRationals) {
    if (certificate.size() != d.rows()) return false;
    for (const auto& v : to_rational(d).left_multiply(certificate)) {
      if (v != 0) return false;
    }
    Rational pairing = 0;
    for (std::size_t i = 0; i < certificate.size(); ++i) pairing += certificate[i] * target.at(i);
    return pairing != 0;
  }
  const Integer modulus = coeffs.kind == CoeffKind::Modular ? coeffs.modulus : Integer(0);
  return verify_integer_certificate(d, integral_values(target), certificate, modulus);
}

}  // namespace simdiff
