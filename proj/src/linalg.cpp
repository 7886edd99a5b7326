#include "simdiff/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace simdiff {

template <class T>
void SparseMatrix<T>::finalize() {
  for (auto& row : data_) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector<T> merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c) {
        merged.back().second += v;
      } else {
        merged.emplace_back(c, std::move(v));
      }
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    row = std::move(merged);
  }
}

template <class T>
std::vector<T> SparseMatrix<T>::multiply(const std::vector<T>& x) const {
  std::vector<T> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : data_[r]) out[r] += v * x.at(c);
  }
  return out;
}

template <class T>
std::vector<T> SparseMatrix<T>::left_multiply(const std::vector<T>& y) const {
  std::vector<T> out(cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    if (y.at(r) == 0) continue;
    for (const auto& [c, v] : data_[r]) out[c] += y[r] * v;
  }
  return out;
}

template class SparseMatrix<Integer>;
template class SparseMatrix<Rational>;

DenseInt to_dense(const IntMatrix& m) {
  DenseInt out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out(r, c) = v;
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out.add(r, c, Rational(v));
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SmithWork {
  DenseInt d, u, u_inv, v, v_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < u_inv.rows(); ++r) std::swap(u_inv(r, i), u_inv(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < v_inv.cols(); ++c) std::swap(v_inv(i, c), v_inv(j, c));
  }
  // row_i += q * row_t
  void add_row(std::size_t i, std::size_t t, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) += q * d(t, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) += q * u(t, c);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv(r, t) -= q * u_inv(r, i);
  }
  // col_j += q * col_t
  void add_col(std::size_t j, std::size_t t, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, j) += q * d(r, t);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, j) += q * v(r, t);
    for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv(t, c) -= q * v_inv(j, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv(r, i) = -u_inv(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const DenseInt& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithWork w{a, DenseInt::identity(m), DenseInt::identity(m), DenseInt::identity(n), DenseInt::identity(n)};
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pr = 0, pc = 0;
      for (std::size_t r = t; r < m; ++r) {
        for (std::size_t c = t; c < n; ++c) {
          if (w.d(r, c) != 0 && (!found || abs(w.d(r, c)) < abs(w.d(pr, pc)))) {
            found = true;
            pr = r;
            pc = c;
          }
        }
      }
      if (!found) break;
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (w.d(r, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(r, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_row(r, t, -q);
        if (w.d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (w.d(t, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(t, c).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_col(c, t, -q);
        if (w.d(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by the rest of the block.
      bool divides = true;
      for (std::size_t r = t + 1; r < m && divides; ++r) {
        for (std::size_t c = t + 1; c < n; ++c) {
          if (w.d(r, c) != 0 && !mpz_divisible_p(w.d(r, c).get_mpz_t(), w.d(t, t).get_mpz_t())) {
            w.add_row(t, r, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (w.d(t, t) == 0) break;
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  SmithForm out;
  for (std::size_t i = 0; i < std::min(m, n) && w.d(i, i) != 0; ++i) out.diagonal.push_back(w.d(i, i));
  out.rank = out.diagonal.size();
  out.U = std::move(w.u);
  out.U_inv = std::move(w.u_inv);
  out.V = std::move(w.v);
  out.V_inv = std::move(w.v_inv);
  return out;
}

IntegerKernel integer_kernel(const DenseInt& a) {
  const SmithForm s = smith_normal_form(a);
  const std::size_t n = a.cols();
  const std::size_t k = n - s.rank;
  IntegerKernel out{DenseInt(n, k), DenseInt(k, n)};
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < n; ++r) out.basis(r, j) = s.V(r, s.rank + j);
    for (std::size_t c = 0; c < n; ++c) out.coordinates(j, c) = s.V_inv(s.rank + j, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparse elimination on unit pivots

namespace {

struct IntPolicy {
  Integer k;
  void reduce(Integer& v) const {
    if (k != 0) v = mod_floor(v, k);
  }
  bool is_unit(const Integer& v) const {
    if (k == 0) return v == 1 || v == -1;
    Integer g;
    mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
    return g == 1;
  }
  Integer inverse(const Integer& v) const {
    if (k == 0) return v;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
    return inv;
  }
};

struct RatPolicy {
  void reduce(Rational&) const {}
  bool is_unit(const Rational& v) const { return v != 0; }
  Rational inverse(const Rational& v) const { return 1 / v; }
};

template <class T, class Policy>
class Eliminator {
 public:
  struct Row {
    SparseVector<T> e;
    T rhs;
    SparseVector<T> combo;
    bool pivot = false;
  };

  Eliminator(const SparseMatrix<T>& a, const std::vector<T>& b, Policy policy)
      : policy_(std::move(policy)), cols_(a.cols()) {
    rows_.resize(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Row& row = rows_[r];
      for (const auto& [c, v] : a.row(r)) {
        T x = v;
        policy_.reduce(x);
        if (x != 0) row.e.emplace_back(c, std::move(x));
      }
      row.rhs = b.at(r);
      policy_.reduce(row.rhs);
      row.combo.emplace_back(static_cast<std::uint32_t>(r), T(1));
    }
  }

  /// Runs the unit-pivot phase. Returns the index of a row that became
  /// 0 = nonzero, if any.
  std::optional<std::size_t> run() {
    while (true) {
      std::size_t best = rows_.size();
      std::size_t best_len = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Row& row = rows_[r];
        if (row.pivot) continue;
        if (row.e.empty()) {
          if (row.rhs != 0) return r;
          continue;
        }
        if (best < rows_.size() && row.e.size() >= best_len) continue;
        for (const auto& entry : row.e) {
          if (policy_.is_unit(entry.second)) {
            best = r;
            best_len = row.e.size();
            break;
          }
        }
      }
      if (best == rows_.size()) return std::nullopt;
      Row& p = rows_[best];
      std::size_t pos = 0;
      while (!policy_.is_unit(p.e[pos].second)) ++pos;
      const std::uint32_t col = p.e[pos].first;
      const T inv = policy_.inverse(p.e[pos].second);
      if (inv != 1) scale(p, inv);
      p.pivot = true;
      pivots_.emplace_back(col, best);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        Row& row = rows_[r];
        if (row.pivot) continue;
        auto it = std::lower_bound(row.e.begin(), row.e.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
        if (it == row.e.end() || it->first != col) continue;
        const T f = -it->second;
        axpy(row.e, f, p.e);
        row.rhs += f * p.rhs;
        policy_.reduce(row.rhs);
        axpy(row.combo, f, p.combo);
      }
    }
  }

  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::pair<std::uint32_t, std::size_t>>& pivots() const { return pivots_; }

  /// Fills pivot variables given values of all non-pivot variables.
  void back_substitute(std::vector<T>& x) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const Row& row = rows_[it->second];
      T value = row.rhs;
      for (const auto& [c, v] : row.e) {
        if (c != it->first) value -= v * x[c];
      }
      policy_.reduce(value);
      x[it->first] = value;
    }
  }

 private:
  void scale(Row& row, const T& f) {
    for (auto& e : row.e) {
      e.second *= f;
      policy_.reduce(e.second);
    }
    row.rhs *= f;
    policy_.reduce(row.rhs);
    for (auto& e : row.combo) {
      e.second *= f;
      policy_.reduce(e.second);
    }
  }

  // dst += f * src on sorted sparse vectors.
  void axpy(SparseVector<T>& dst, const T& f, const SparseVector<T>& src) const {
    SparseVector<T> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        T v = f * src[j].second;
        policy_.reduce(v);
        if (v != 0) out.emplace_back(src[j].first, std::move(v));
        ++j;
      } else {
        T v = dst[i].second + f * src[j].second;
        policy_.reduce(v);
        if (v != 0) out.emplace_back(dst[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    dst = std::move(out);
  }

  Policy policy_;
  std::size_t cols_;
  std::vector<Row> rows_;
  std::vector<std::pair<std::uint32_t, std::size_t>> pivots_;
};

std::vector<Rational> combo_to_dense(const SparseVector<Integer>& combo, const Rational& factor, std::size_t m) {
  std::vector<Rational> out(m);
  for (const auto& [r, v] : combo) out[r] = factor * Rational(v);
  return out;
}

}  // namespace

IntegerSolution solve_integer(const IntMatrix& a, const std::vector<Integer>& b, const Integer& modulus) {
  if (b.size() != a.rows()) throw Error("solve_integer: right-hand side has wrong length");
  if (modulus < 0) throw Error("solve_integer: negative modulus");
  const std::size_t m = a.rows();
  Eliminator<Integer, IntPolicy> elim(a, b, IntPolicy{modulus});
  IntegerSolution out;
  if (auto bad = elim.run()) {
    const auto& row = elim.rows()[*bad];
    // The combination kills every column but not the right-hand side.
    const Rational factor = modulus == 0 ? Rational(1, 2) / Rational(row.rhs) : Rational(1) / Rational(modulus);
    out.certificate = combo_to_dense(row.combo, factor, m);
    return out;
  }
  // Residual block: non-pivot rows restricted to the columns they touch.
  std::vector<std::size_t> res_rows;
  std::map<std::uint32_t, std::size_t> res_cols;
  for (std::size_t r = 0; r < elim.rows().size(); ++r) {
    const auto& row = elim.rows()[r];
    if (row.pivot || row.e.empty()) continue;
    res_rows.push_back(r);
    for (const auto& e : row.e) res_cols.emplace(e.first, 0);
  }
  std::vector<std::uint32_t> col_of;
  for (auto& [c, idx] : res_cols) {
    idx = col_of.size();
    col_of.push_back(c);
  }
  std::vector<Integer> x(a.cols());
  if (!res_rows.empty()) {
    const std::size_t rr = res_rows.size();
    const std::size_t rc = col_of.size() + (modulus != 0 ? rr : 0);
    DenseInt dense(rr, rc);
    std::vector<Integer> rhs(rr);
    for (std::size_t i = 0; i < rr; ++i) {
      const auto& row = elim.rows()[res_rows[i]];
      for (const auto& [c, v] : row.e) dense(i, res_cols.at(c)) = v;
      if (modulus != 0) dense(i, col_of.size() + i) = modulus;
      rhs[i] = row.rhs;
    }
    const SmithForm s = smith_normal_form(dense);
    const std::vector<Integer> ub = s.U.multiply(rhs);
    std::vector<Integer> z(rc);
    std::optional<std::size_t> failing;
    Rational fail_scale;
    for (std::size_t i = 0; i < rr; ++i) {
      if (i < s.rank) {
        if (!mpz_divisible_p(ub[i].get_mpz_t(), s.diagonal[i].get_mpz_t())) {
          failing = i;
          fail_scale = Rational(1) / Rational(s.diagonal[i]);
          break;
        }
        z[i] = ub[i] / s.diagonal[i];
      } else if (ub[i] != 0) {
        failing = i;
        fail_scale = Rational(1, 2) / Rational(ub[i]);
        break;
      }
    }
    if (failing) {
      std::vector<Rational> psi(m);
      for (std::size_t i = 0; i < rr; ++i) {
        const Rational coef = fail_scale * Rational(s.U(*failing, i));
        if (coef == 0) continue;
        for (const auto& [orig, v] : elim.rows()[res_rows[i]].combo) psi[orig] += coef * Rational(v);
      }
      out.certificate = std::move(psi);
      return out;
    }
    const std::vector<Integer> y = s.V.multiply(z);
    for (std::size_t j = 0; j < col_of.size(); ++j) {
      Integer v = y[j];
      if (modulus != 0) v = mod_floor(v, modulus);
      x[col_of[j]] = v;
    }
  }
  elim.back_substitute(x);
  out.solvable = true;
  out.x = std::move(x);
  return out;
}

bool verify_integer_certificate(const IntMatrix& a, const std::vector<Integer>& b, const std::vector<Rational>& psi,
                                const Integer& modulus) {
  if (psi.size() != a.rows()) return false;
  for (std::size_t r = 0; r < psi.size(); ++r) {
    if (modulus != 0 && !is_integral(psi[r] * Rational(modulus))) return false;
  }
  std::vector<Rational> left(a.cols());
  Rational pb = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (psi[r] == 0) continue;
    for (const auto& [c, v] : a.row(r)) left[c] += psi[r] * Rational(v);
    pb += psi[r] * Rational(b[r]);
  }
  for (const auto& v : left) {
    if (!is_integral(v)) return false;
  }
  return !is_integral(pb);
}

RationalSolution solve_rational(const RatMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw Error("solve_rational: right-hand side has wrong length");
  Eliminator<Rational, RatPolicy> elim(a, b, RatPolicy{});
  RationalSolution out;
  if (auto bad = elim.run()) {
    std::vector<Rational> y(a.rows());
    for (const auto& [r, v] : elim.rows()[*bad].combo) y[r] = v;
    out.certificate = std::move(y);
    return out;
  }
  out.x.assign(a.cols(), Rational(0));
  elim.back_substitute(out.x);
  out.solvable = true;
  return out;
}

std::size_t rational_rank(const RatMatrix& a) {
  Eliminator<Rational, RatPolicy> elim(a, std::vector<Rational>(a.rows()), RatPolicy{});
  elim.run();
  return elim.pivots().size();
}

std::vector<std::vector<Rational>> rational_kernel(const RatMatrix& a) {
  Eliminator<Rational, RatPolicy> elim(a, std::vector<Rational>(a.rows()), RatPolicy{});
  elim.run();
  std::vector<bool> is_pivot(a.cols(), false);
  for (const auto& p : elim.pivots()) is_pivot[p.first] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> x(a.cols());
    x[c] = 1;
    elim.back_substitute(x);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace simdiff
