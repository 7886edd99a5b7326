#include "simdiff/diffhat.hpp"

#include <numeric>

#include "simdiff/io.hpp"
#include "simdiff/linalg.hpp"

namespace simdiff {

namespace {

Rational dot(const std::vector<Rational>& row, const Cochain& w) {
  Rational s = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0) s += row[i] * w.at(i);
  }
  return s;
}

/// Functionals whose common kernel is im delta in the degree of `t`.
std::vector<std::vector<Rational>> separating_rows(const ExactnessTest& t) {
  if (t.degree() > 0) return t.annihilators();
  const std::size_t n = t.complex()->count(0);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return rows;
}

/// Columns of m (as a map C^{d} -> C^{d+1}) whose images are independent
/// and span the image, chosen greedily left to right.
std::vector<std::size_t> pivot_columns(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& [c, v] : m.row(r)) a[r][c] = Rational(v);
  }
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows; ++c) {
    std::size_t p = top;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[top]);
    for (std::size_t r = top + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[top][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[top][k];
    }
    pivots.push_back(c);
    ++top;
  }
  return pivots;
}

Rational frac(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

Rational random_rational(std::mt19937_64& rng) {
  Rational q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
  q.canonicalize();
  return q;
}

nlohmann::json ints_to_json(const std::vector<Integer>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

}  // namespace

HatTheory::HatTheory(const ChernModel& model, ComplexPtr m)
    : model_(&model), m_(std::move(m)), y_(model.forms_complex(m_)), n_(model.degree()), g_(&model.groupoid(m_)) {
  top_ = std::make_unique<IntegerCohomology>(m_, n_);
  lower_ = std::make_unique<IntegerCohomology>(m_, n_ - 1);
  forms_exact_ = std::make_unique<ExactnessTest>(y_, n_ - 1);
  top_exact_ = std::make_unique<ExactnessTest>(m_, n_);
  const MapMorphism id0 = g_->identity(g_->zero_object());
  const Cochain ch_id = model.ch_morphism(m_, id0);
  for (std::size_t i = 0; i < lower_->cocycle_rank(); ++i) {
    lower_basis_.push_back(lower_->cocycle_basis(i));
    kernel_gens_.push_back(model.ch_morphism(m_, g_->twist(id0, lower_basis_.back())) - ch_id);
    image_gens_.push_back(model.ch_lower(m_, lower_basis_.back()));
  }
}

HatClass HatTheory::zero() const { return {g_->zero_object(), Cochain(y_, n_ - 1)}; }

HatClass HatTheory::add(const HatClass& x, const HatClass& y) const {
  // R is additive: ch(c1 + c2) = ch c1 + ch c2 + delta mu(c1, c2).
  return {g_->tensor(x.c, y.c), x.omega + y.omega - model_->ch_plus(m_, x.c, y.c)};
}

HatClass HatTheory::neg(const HatClass& x) const {
  const Cochain c = -x.c;
  return {c, -x.omega + model_->ch_plus(m_, x.c, c)};
}

HatClass HatTheory::a(const Cochain& omega) const { return {g_->zero_object(), omega}; }

std::vector<Integer> HatTheory::I(const HatClass& x) const { return top_->class_of(g_->cocycle_of(x.c)); }

Cochain HatTheory::R(const HatClass& x) const { return model_->ch_object(m_, x.c) + coboundary(x.omega); }

HatClass HatTheory::lift(const Cochain& z) const { return {g_->object_from_cocycle(z), Cochain(y_, n_ - 1)}; }

HatClass HatTheory::lift_class(const std::vector<Integer>& coords) const {
  Cochain z(m_, n_);
  for (std::size_t i = 0; i < coords.size(); ++i) z += Rational(coords[i]) * top_->generator(i);
  return lift(z);
}

IntegerSolution HatTheory::lattice_solve(const std::vector<Cochain>& gens, const Cochain& w) const {
  const auto rows = separating_rows(*forms_exact_);
  IntMatrix a(rows.size(), gens.size());
  std::vector<Integer> b(rows.size());
  std::vector<Integer> scale(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Rational> vals;
    for (const auto& gen : gens) vals.push_back(dot(rows[r], gen));
    const Rational rhs = dot(rows[r], w);
    Integer l = rhs.get_den();
    for (const auto& v : vals) l = lcm(l, Integer(v.get_den()));
    for (std::size_t j = 0; j < vals.size(); ++j) a.add(r, j, Integer(vals[j] * Rational(l)));
    b[r] = Integer(rhs * Rational(l));
    scale[r] = l;
  }
  a.finalize();
  IntegerSolution sol = solve_integer(a, b);
  if (!sol.solvable) {
    // Pull the certificate back to a functional on forms.
    std::vector<Rational> phi(w.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (sol.certificate[r] == 0) continue;
      for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += sol.certificate[r] * Rational(scale[r]) * rows[r][i];
    }
    sol.certificate = std::move(phi);
  }
  return sol;
}

std::optional<Cochain> HatTheory::preimage_a(const HatClass& x) const {
  const auto h = g_->connect(x.c, g_->zero_object());
  if (!h) return std::nullopt;
  return x.omega - model_->ch_morphism(m_, *h);
}

std::size_t HatTheory::lattice_rank(const std::vector<Cochain>& gens) const {
  if (gens.empty()) return 0;
  const auto rows = separating_rows(*forms_exact_);
  RatMatrix a(rows.size(), gens.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < gens.size(); ++j) a.add(r, j, dot(rows[r], gens[j]));
  }
  a.finalize();
  return rational_rank(a);
}

HatEquality HatTheory::eq(const HatClass& x, const HatClass& y) const {
  HatEquality out;
  const auto h0 = g_->connect(x.c, y.c);
  if (!h0) {
    out.reason = "I differs";
    for (const auto& v : I(x)) out.obstruction.emplace_back(v);
    for (const auto& v : I(y)) out.obstruction.emplace_back(v);
    return out;
  }
  const Cochain d = x.omega - y.omega - model_->ch_morphism(m_, *h0);
  const IntegerSolution sol = lattice_solve(kernel_gens_, d);
  if (!sol.solvable) {
    out.reason = "period";
    out.obstruction = sol.certificate;
    return out;
  }
  Cochain u(m_, n_ - 1);
  for (std::size_t j = 0; j < lower_basis_.size(); ++j) u += Rational(sol.x[j]) * lower_basis_[j];
  MapMorphism h = g_->twist(*h0, u);
  // Independent confirmation on the chosen homotopy itself.
  const Cochain residual = x.omega - y.omega - model_->ch_morphism(m_, h);
  if (n_ - 1 == 0) {
    out.equal = residual.is_zero();
    out.correction = Cochain(y_, 0);
  } else {
    const auto prim = solve_coboundary(residual, Coefficients::rationals());
    out.equal = prim.solvable;
    out.correction = prim.eta;
  }
  if (!out.equal) {
    out.reason = "residual not exact";
    return out;
  }
  out.homotopy = std::move(h);
  return out;
}

HatClass HatTheory::sample(std::mt19937_64& rng) const {
  HatClass x{g_->sample_object(rng), random_cochain(y_, n_ - 1, rng, -2, 2)};
  Rational s(1, 1 + static_cast<long>(rng() % 3));
  x.omega *= s;
  return x;
}

Cochain HatTheory::sample_lower(std::mt19937_64& rng) const {
  Cochain w(y_, n_ - 1);
  for (const auto& g : image_gens_) w += Rational(static_cast<long>(rng() % 5) - 2) * g;
  if (n_ - 1 >= 1) w += coboundary(random_cochain(y_, n_ - 2, rng, -2, 2));
  return w;
}

HatClass HatTheory::pullback(const SimplicialMap& f, const HatClass& x) const {
  if (!same_complex(f.source(), m_)) throw Error("hat pullback: map does not start at " + m_->name());
  return {model_->pull_object(f, x.c), model_->pullback_forms(f, x.omega) + model_->pullback_correction(f, x.c)};
}

// ---------------------------------------------------------------------------
// Isomorphism type

HatGroup HatTheory::group(int trials, std::uint64_t seed) const {
  HatGroup out;
  out.base = m_;
  out.degree = n_;
  out.presentation.free_rank = top_->presentation().free_rank;
  out.presentation.torsion = top_->presentation().torsion;
  for (std::size_t i = 0; i < top_->summands(); ++i) out.integral_sections.push_back(lift(top_->generator(i)));
  for (std::size_t i = 0; i < lower_->summands(); ++i) {
    if (lower_->orders()[i] == 0) out.circle_forms.push_back(model_->ch_lower(m_, lower_->generator(i)));
  }
  const IntMatrix d = coboundary_matrix(*y_, n_ - 1);
  for (std::size_t c : pivot_columns(d)) {
    Cochain e(y_, n_ - 1);
    e.at(c) = 1;
    out.divisible_forms.push_back(std::move(e));
  }
  out.presentation.divisible_rank = out.divisible_forms.size();
  out.presentation.lattice_quotients = out.circle_forms.size();

  CheckList& v = out.verification;
  const HatClass zero_class = zero();
  // Generators to the group: sections realize I, the lattice is the kernel
  // of a, and nothing smaller is.
  for (std::size_t i = 0; i < out.integral_sections.size(); ++i) {
    std::vector<Integer> e(top_->summands());
    e[i] = 1;
    const auto got = I(out.integral_sections[i]);
    v.record("section-realizes-generator", "I(s_i) = e_i", got == e, {{"generator", i}, {"I", ints_to_json(got)}});
    if (top_->orders()[i] != 0) {
      HatClass k = zero_class;
      for (Integer t = 0; t < top_->orders()[i]; ++t) k = add(k, out.integral_sections[i]);
      const auto ki = I(k);
      v.record("torsion-relation", "order(e_i) s_i lies in ker I", std::all_of(ki.begin(), ki.end(), [](const Integer& z) { return z == 0; }),
               {{"generator", i}});
    }
  }
  for (std::size_t j = 0; j < out.circle_forms.size(); ++j) {
    const bool trivial = equal(a(out.circle_forms[j]), zero_class);
    const bool half = equal(a(Rational(1, 2) * out.circle_forms[j]), zero_class);
    v.record("circle-relation", "a(l_j) = 0 and a(l_j / 2) != 0", trivial && !half,
             {{"form", cochain_to_json(out.circle_forms[j])}});
  }
  // The forms part of a class is determined by R on the divisible summands.
  for (const auto& e : out.divisible_forms) {
    v.record("divisible-faithful", "R(a(e_i)) = delta e_i != 0", !coboundary(e).is_zero() && R(a(e)) == coboundary(e),
             nullptr);
  }
  if (out.divisible_forms.empty()) v.record("divisible-faithful", "R(a(e_i)) = delta e_i != 0", true, {{"divisible_rank", 0}});

  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const HatClass x = sample(rng);
    const HatCoordinates k = coordinates(out, x);
    const HatEquality back = eq(x, from_coordinates(out, k));
    v.record("round-trip-class", "x = section(coordinates(x))", back.equal, {{"reason", back.reason}});
    HatCoordinates r;
    for (std::size_t i = 0; i < top_->summands(); ++i) {
      const Integer ord = top_->orders()[i];
      Integer z = static_cast<long>(rng() % 7) - 3;
      r.integral.push_back(ord == 0 ? z : Integer(mod_floor(z, ord)));
    }
    for (std::size_t i = 0; i < out.divisible_forms.size(); ++i) r.divisible.push_back(random_rational(rng));
    for (std::size_t j = 0; j < out.circle_forms.size(); ++j) r.circle.push_back(frac(random_rational(rng)));
    v.record("round-trip-coordinates", "coordinates(section(k)) = k", coordinates(out, from_coordinates(out, r)) == r,
             nullptr);
  }
  return out;
}

HatCoordinates HatTheory::coordinates(const HatGroup& grp, const HatClass& x) const {
  HatCoordinates k;
  k.integral = I(x);
  const HatClass y = sub(x, lift_class(k.integral));
  const auto h = g_->connect(y.c, g_->zero_object());
  if (!h) throw Error("coordinates: class is not in ker I after subtracting its lift");
  const Cochain alpha = y.omega - model_->ch_morphism(m_, *h);
  // Divisible part: delta alpha in the span of delta e_i.
  Cochain rho = alpha;
  if (!grp.divisible_forms.empty()) {
    const Cochain da = coboundary(alpha);
    RatMatrix a(da.size(), grp.divisible_forms.size());
    for (std::size_t i = 0; i < grp.divisible_forms.size(); ++i) {
      const Cochain de = coboundary(grp.divisible_forms[i]);
      for (std::size_t r = 0; r < de.size(); ++r) a.add(r, i, de.at(r));
    }
    a.finalize();
    const auto sol = solve_rational(a, da.values());
    if (!sol.solvable) throw Error("coordinates: delta alpha is outside the divisible span");
    k.divisible = sol.x;
    for (std::size_t i = 0; i < sol.x.size(); ++i) rho -= sol.x[i] * grp.divisible_forms[i];
  }
  // Circle part: the closed remainder modulo coboundaries, against the lattice.
  if (!grp.circle_forms.empty()) {
    const auto rows = separating_rows(*forms_exact_);
    RatMatrix a(rows.size(), grp.circle_forms.size());
    std::vector<Rational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t j = 0; j < grp.circle_forms.size(); ++j) a.add(r, j, dot(rows[r], grp.circle_forms[j]));
      b[r] = dot(rows[r], rho);
    }
    a.finalize();
    const auto sol = solve_rational(a, b);
    if (!sol.solvable) throw Error("coordinates: closed part is not in the span of the lattice");
    for (const auto& t : sol.x) k.circle.push_back(frac(t));
  }
  return k;
}

HatClass HatTheory::from_coordinates(const HatGroup& grp, const HatCoordinates& k) const {
  Cochain w(y_, n_ - 1);
  for (std::size_t i = 0; i < k.divisible.size(); ++i) w += k.divisible[i] * grp.divisible_forms[i];
  for (std::size_t j = 0; j < k.circle.size(); ++j) w += k.circle[j] * grp.circle_forms[j];
  return add(lift_class(k.integral), a(w));
}

// ---------------------------------------------------------------------------
// Exactness certificate

CheckList HatTheory::exactness_certificate(int trials, std::uint64_t seed) const {
  CheckList out;
  std::mt19937_64 rng(seed);
  const HatClass zero_class = zero();
  auto form = [&] {
    Cochain w = random_cochain(y_, n_ - 1, rng, -3, 3);
    w *= Rational(1, 1 + static_cast<long>(rng() % 3));
    return w;
  };
  auto is_zero_vec = [](const std::vector<Integer>& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& z) { return z == 0; });
  };

  for (int t = 0; t < trials; ++t) {
    const Cochain w = form();
    out.record("R-a", "R(a(w)) = delta w", R(a(w)) == coboundary(w), {{"w", cochain_to_json(w)}});
    out.record("I-a", "I(a(w)) = 0", is_zero_vec(I(a(w))), {{"w", cochain_to_json(w)}});

    const HatClass x = sample(rng), y = sample(rng), z = sample(rng);
    out.record("R-closed", "R(x) is closed", coboundary(R(x)).is_zero(), nullptr);

    // ker I in im a: subtract the lift of I(x), connect to the base point.
    {
      const HatClass k = sub(x, lift_class(I(x)));
      const bool in_ker = is_zero_vec(I(k));
      const auto h = g_->connect(k.c, g_->zero_object());
      bool ok = in_ker && h.has_value();
      nlohmann::json ev;
      if (ok) {
        const Cochain alpha = k.omega - model_->ch_morphism(m_, *h);
        const HatEquality e = eq(k, a(alpha));
        ok = e.equal;
        ev = {{"alpha", cochain_to_json(alpha)}};
        if (!ok) ev["reason"] = e.reason;
      } else {
        ev = {{"reason", "no homotopy to the base point"}};
      }
      out.record("ker-I-in-im-a", "I(x) = 0 implies x = a(alpha), alpha = w - ch(H) for H: c -> 0", ok, ev);
    }

    // im ch in ker a on a sampled form.
    {
      const Cochain v = sample_lower(rng);
      const HatEquality e = eq(a(v), zero_class);
      nlohmann::json ev{{"w", cochain_to_json(v)}};
      if (!e.equal) ev["functional"] = rationals_to_json(e.obstruction);
      out.record("im-ch-in-ker-a", "a(ch(h)) = 0 for h in E^{n-1}", e.equal, ev);
    }
    // Sampled consistency of ker a with im ch.
    {
      const Cochain v = Rational(1, 2) * sample_lower(rng) + (rng() % 2 ? form() : Cochain(y_, n_ - 1));
      const bool killed = eq(a(v), zero_class).equal;
      const bool in_image = lattice_solve(image_gens_, v).solvable;
      out.record("ker-a-in-im-ch", "a(w) = 0 implies w in im ch", !killed || in_image, {{"w", cochain_to_json(v)}});
    }

    // Well-definedness: moving along a homotopy changes neither I nor R.
    {
      const MapMorphism h = g_->sample_morphism(x.c, rng);
      const HatClass moved{h.target, x.omega - model_->ch_morphism(m_, h)};
      const bool ok = eq(x, moved).equal && R(x) == R(moved) && I(x) == I(moved);
      out.record("well-defined", "(c, w) ~ (c', w - ch(H)) and R, I agree on both", ok, nullptr);
      const MapMorphism h2 = g_->sample_morphism(moved.c, rng);
      const HatClass further{h2.target, moved.omega - model_->ch_morphism(m_, h2)};
      out.record("equivalence-relation", "~ is reflexive, symmetric and transitive",
                 equal(x, x) && equal(moved, x) && equal(x, further), nullptr);
    }

    // Group laws and additivity.
    {
      const bool laws = equal(add(x, zero_class), x) && equal(add(x, neg(x)), zero_class) &&
                        equal(add(x, y), add(y, x)) && equal(add(add(x, y), z), add(x, add(y, z)));
      out.record("group-laws", "unit, inverse, commutativity, associativity", laws, nullptr);
      auto sum = I(x);
      const auto iy = I(y);
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += iy[i];
        if (top_->orders()[i] != 0) sum[i] = mod_floor(sum[i], top_->orders()[i]);
      }
      const Cochain w2 = form();
      const bool additive = I(add(x, y)) == sum && R(add(x, y)) == R(x) + R(y) && equal(add(a(w), a(w2)), a(w + w2));
      out.record("additive", "I, R and a are homomorphisms", additive, nullptr);
    }

    // Rham o R = ch o I in H^n(M; Q).
    {
      const Cochain diff = model_->rham(m_, R(x)) - Rational(model_->class_scale()) * g_->cocycle_of(x.c);
      const auto prim = solve_coboundary(diff, Coefficients::rationals());
      nlohmann::json ev = prim.solvable ? nlohmann::json{{"primitive", cochain_to_json(prim.eta)}}
                                        : nlohmann::json{{"functional", rationals_to_json(prim.certificate)}};
      out.record("Rham-R-equals-ch-I", "Rham(R(x)) and ch(I(x)) are cohomologous", prim.solvable, ev);
    }
  }

  // Generator-complete inclusions between ker a and im ch.
  for (std::size_t j = 0; j < image_gens_.size(); ++j) {
    const HatEquality e = eq(a(image_gens_[j]), zero_class);
    nlohmann::json ev{{"w", cochain_to_json(image_gens_[j])}};
    if (!e.equal) ev["functional"] = rationals_to_json(e.obstruction);
    out.record("im-ch-in-ker-a", "a(ch(h)) = 0 for h in E^{n-1}", e.equal, ev);
  }
  for (std::size_t j = 0; j < kernel_gens_.size(); ++j) {
    const IntegerSolution s = lattice_solve(image_gens_, kernel_gens_[j]);
    nlohmann::json ev{{"w", cochain_to_json(kernel_gens_[j])}};
    ev[s.solvable ? "coefficients" : "functional"] = s.solvable ? ints_to_json(s.x) : rationals_to_json(s.certificate);
    out.record("ker-a-in-im-ch", "a(w) = 0 implies w in im ch", s.solvable, ev);
  }
  if (kernel_gens_.empty()) {
    out.record("ker-a-in-im-ch", "a(w) = 0 implies w in im ch", true, {{"lattice", "trivial"}});
    out.record("im-ch-in-ker-a", "a(ch(h)) = 0 for h in E^{n-1}", true, {{"lattice", "trivial"}});
  }

  // I is onto: lifts of the generators of H^n(M; Z).
  for (std::size_t i = 0; i < top_->summands(); ++i) {
    std::vector<Integer> e(top_->summands());
    e[i] = 1;
    const auto got = I(lift(top_->generator(i)));
    out.record("I-surjective", "every generator of H^n(M; Z) has a preimage", got == e,
               {{"generator", i}, {"order", top_->orders()[i].get_str()}, {"I", ints_to_json(got)}});
  }
  if (top_->summands() == 0) out.record("I-surjective", "every generator of H^n(M; Z) has a preimage", true, {{"H^n", "0"}});
  std::stable_sort(out.checks.begin(), out.checks.end(),
                   [](const CheckResult& l, const CheckResult& r) { return l.id < r.id; });
  return out;
}

// ---------------------------------------------------------------------------
// Naturality

CheckList check_hat_naturality(const ChernModel& model, const MapDiagram& d, int trials, std::uint64_t seed) {
  std::vector<std::unique_ptr<HatTheory>> theories;
  for (const auto& x : d.objects) theories.push_back(std::make_unique<HatTheory>(model, x));
  auto theory_of = [&](const ComplexPtr& x) -> const HatTheory& {
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
      if (d.objects[i] == x) return *theories[i];
    }
    throw Error("naturality: complex not in the diagram");
  };
  CheckList out;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < d.maps.size(); ++i) {
      const SimplicialMap& f = d.maps[i];
      const HatTheory& tm = theory_of(f.source());
      const HatTheory& tn = theory_of(f.target());
      const HatClass x = tn.sample(rng);
      const HatClass fx = tm.pullback(f, x);
      const std::string arrow = d.arrows[i].name;
      // R: f^* R(x) against R(f^* x), compared on the forms complex.
      out.record("R-natural", "R(f^* x) = f^* R(x)", tm.R(fx) == model.pullback_forms(f, tn.R(x)), {{"arrow", arrow}});
      // I: compared by pulling the integral cocycle back.
      const auto expect = tm.top_cohomology().class_of(pullback(f, tn.groupoid().cocycle_of(x.c)));
      out.record("I-natural", "I(f^* x) = f^* I(x)", tm.I(fx) == expect, {{"arrow", arrow}});
      Cochain w = random_cochain(tn.forms_complex(), model.degree() - 1, rng, -2, 2);
      out.record("a-natural", "f^* a(w) = a(f^* w)", tm.equal(tm.pullback(f, tn.a(w)), tm.a(model.pullback_forms(f, w))),
                 {{"arrow", arrow}});
      const HatClass y = tn.sample(rng);
      out.record("pullback-additive", "f^*(x + y) = f^* x + f^* y",
                 tm.equal(tm.pullback(f, tn.add(x, y)), tm.add(fx, tm.pullback(f, y))), {{"arrow", arrow}});
      // Well-defined on classes.
      const MapMorphism h = tn.groupoid().sample_morphism(x.c, rng);
      const HatClass moved{h.target, x.omega - model.ch_morphism(f.target(), h)};
      out.record("pullback-well-defined", "x ~ x' implies f^* x ~ f^* x'", tm.equal(fx, tm.pullback(f, moved)),
                 {{"arrow", arrow}});
    }
    for (const auto& cp : d.composites) {
      const SimplicialMap& f = d.maps[static_cast<std::size_t>(cp.first)];
      const SimplicialMap& g = d.maps[static_cast<std::size_t>(cp.second)];
      const SimplicialMap& gf = d.maps[static_cast<std::size_t>(cp.composite)];
      const HatTheory& ti = theory_of(f.source());
      const HatTheory& tj = theory_of(g.source());
      const HatTheory& tk = theory_of(g.target());
      const HatClass x = tk.sample(rng);
      out.record("pullback-functorial", "(g f)^* x = f^* g^* x", ti.equal(ti.pullback(gf, x), ti.pullback(f, tj.pullback(g, x))),
                 {{"composite", d.arrows[static_cast<std::size_t>(cp.composite)].name}});
    }
    for (int id : d.identities) {
      const SimplicialMap& f = d.maps[static_cast<std::size_t>(id)];
      const HatTheory& tx = theory_of(f.source());
      const HatClass x = tx.sample(rng);
      out.record("pullback-identity", "id^* x = x", tx.equal(tx.pullback(f, x), x),
                 {{"arrow", d.arrows[static_cast<std::size_t>(id)].name}});
    }
  }
  return out;
}

}  // namespace simdiff
