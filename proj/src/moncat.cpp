#include "simdiff/moncat.hpp"

#include "simdiff/numeric.hpp"

namespace simdiff {

SkeletalGroupoid::SkeletalGroupoid(std::string name, int objects, int automorphisms, Table3 omega, Table2 braid)
    : name_(std::move(name)), m_(objects), k_(automorphisms), omega_(std::move(omega)), braid_(std::move(braid)) {
  if (m_ < 1 || k_ < 1) throw ConstructionError("skeletal groupoid needs positive group orders");
}

SkeletalGroupoid SkeletalGroupoid::cubic_cocycle() {
  return {"Z/2 with omega = xyz", 2, 2, [](int x, int y, int z) { return x * y * z; }};
}

SkeletalGroupoid SkeletalGroupoid::broken_cocycle() {
  return {"Z/2 with omega = xy(1-z)", 2, 2, [](int x, int y, int z) { return x * y * (1 - z); }};
}

SkeletalGroupoid SkeletalGroupoid::symmetric_sign() {
  return {"Z/2 with c = xy", 2, 2, [](int, int, int) { return 0; }, [](int x, int y) { return x * y; }};
}

SkeletalGroupoid SkeletalGroupoid::semion() {
  return {"Z/2 in Z/4 with omega = 2xyz, c = xy", 2, 4, [](int x, int y, int z) { return 2 * x * y * z; },
          [](int x, int y) { return x * y; }};
}

bool SkeletalGroupoid::omega_is_cocycle() const {
  for (int a = 0; a < m_; ++a) {
    for (int b = 0; b < m_; ++b) {
      for (int c = 0; c < m_; ++c) {
        for (int d = 0; d < m_; ++d) {
          const int v = omega_(b, c, d) - omega_(tensor(a, b), c, d) + omega_(a, tensor(b, c), d) -
                        omega_(a, b, tensor(c, d)) + omega_(a, b, c);
          if (mod(v, k_) != 0) return false;
        }
      }
    }
  }
  return true;
}

std::pair<int, int> SkeletalGroupoid::compose(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
  if (a.first != b.first) throw Error("skeletal groupoid: composing morphisms between different objects");
  return {a.first, mod(a.second + b.second, k_)};
}

Decision SkeletalGroupoid::decide(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
  Decision d;
  d.equal = a == b;
  d.evidence = {{"kind", "enumeration"}, {"lhs", {a.first, a.second}}, {"rhs", {b.first, b.second}}};
  return d;
}

std::pair<int, int> SkeletalGroupoid::braiding(const int& a, const int& b) const {
  if (!braid_) throw Error(name_ + " carries no braiding");
  return {tensor(a, b), mod(braid_(a, b), k_)};
}

}  // namespace simdiff
