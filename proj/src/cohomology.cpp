#include "simdiff/cohomology.hpp"

#include <sstream>

namespace simdiff {

std::string GroupPresentation::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto part = [&](const std::string& s) {
    os << (first ? "" : " + ") << s;
    first = false;
  };
  if (free_rank > 0) part(free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) part("Z/" + t.get_str());
  if (divisible_rank > 0) part(divisible_rank == 1 ? "Q" : "Q^" + std::to_string(divisible_rank));
  if (lattice_quotients > 0) part(lattice_quotients == 1 ? "Q/Z" : "(Q/Z)^" + std::to_string(lattice_quotients));
  if (first) os << "0";
  return os.str();
}

IntegerCohomology::IntegerCohomology(ComplexPtr x, int n) : x_(std::move(x)), n_(n) {
  if (n < 0) throw Error("cohomology degree must be >= 0");
  kernel_ = integer_kernel(to_dense(coboundary_matrix(*x_, n)));
  const std::size_t k = kernel_.basis.cols();
  const DenseInt d_prev = to_dense(coboundary_matrix(*x_, n - 1));
  // Relations: coordinates of each coboundary delta(e_j) in the kernel basis.
  DenseInt rel = kernel_.coordinates * (n >= 1 ? d_prev : DenseInt(x_->count(n), 0));
  relations_ = smith_normal_form(rel);
  for (std::size_t i = 0; i < k; ++i) {
    const Integer order = i < relations_.rank ? relations_.diagonal[i] : Integer(0);
    if (order == 1) continue;
    summand_rows_.push_back(i);
    orders_.push_back(order);
    std::vector<Integer> coords = relations_.U_inv.column(i);
    std::vector<Integer> values = kernel_.basis.multiply(coords);
    Cochain g(x_, n);
    for (std::size_t j = 0; j < values.size(); ++j) g.at(j) = Rational(values[j]);
    generators_.push_back(std::move(g));
    if (order == 0) {
      ++presentation_.free_rank;
    } else {
      presentation_.torsion.push_back(order);
    }
  }
}

std::vector<Integer> IntegerCohomology::class_of(const Cochain& z) const {
  if (z.degree() != n_ || !same_complex(z.complex(), x_)) throw Error("class_of: cochain on wrong complex/degree");
  std::vector<Integer> v;
  for (const auto& q : z.values()) {
    if (!is_integral(q)) throw Error("class_of: integer cohomology needs an integral cocycle");
    v.push_back(q.get_num());
  }
  const std::vector<Integer> c = kernel_.coordinates.multiply(v);
  if (kernel_.basis.multiply(c) != v) throw Error("class_of: cochain is not a cocycle");
  const std::vector<Integer> w = relations_.U.multiply(c);
  std::vector<Integer> out;
  for (std::size_t s = 0; s < summand_rows_.size(); ++s) {
    const Integer& val = w[summand_rows_[s]];
    out.push_back(orders_[s] == 0 ? val : mod_floor(val, orders_[s]));
  }
  return out;
}

Cochain IntegerCohomology::cocycle_basis(std::size_t i) const {
  Cochain c(x_, n_);
  for (std::size_t j = 0; j < c.size(); ++j) c.at(j) = Rational(kernel_.basis(j, i));
  return c;
}

std::size_t coboundary_rank(const SimplicialSet& x, int n) {
  if (n < 0) return 0;
  return rational_rank(to_rational(coboundary_matrix(x, n)));
}

GroupPresentation cohomology(const ComplexPtr& x, int n, const Coefficients& coeffs) {
  if (n < 0) throw Error("cohomology degree must be >= 0");
  switch (coeffs.kind) {
    case CoeffKind::Integers: return IntegerCohomology(x, n).presentation();
    case CoeffKind::Rationals:
    case CoeffKind::GradedRationals: {
      GroupPresentation p;
      p.divisible_rank = x->count(n) - coboundary_rank(*x, n) - coboundary_rank(*x, n - 1);
      return p;
    }
    case CoeffKind::Modular: {
      // H^n(X; Z/k) = H^n(X; Z) (x) Z/k  (+)  Tor(H^{n+1}(X; Z), Z/k).
      const GroupPresentation hn = IntegerCohomology(x, n).presentation();
      const GroupPresentation hn1 = IntegerCohomology(x, n + 1).presentation();
      std::vector<Integer> orders;
      auto add_gcd = [&](const Integer& t) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), coeffs.modulus.get_mpz_t());
        if (g > 1) orders.push_back(g);
      };
      for (std::size_t i = 0; i < hn.free_rank; ++i) orders.push_back(coeffs.modulus);
      for (const auto& t : hn.torsion) add_gcd(t);
      for (const auto& t : hn1.torsion) add_gcd(t);
      // Bring into invariant-factor form via a diagonal Smith form.
      DenseInt diag(orders.size(), orders.size());
      for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
      GroupPresentation p;
      for (const auto& d : smith_normal_form(diag).diagonal) {
        if (d > 1) p.torsion.push_back(d);
      }
      return p;
    }
  }
  throw Error("unsupported coefficients");
}

}  // namespace simdiff
