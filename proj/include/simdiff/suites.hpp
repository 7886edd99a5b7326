#pragma once

// Verification suites as they are run from the command line. Each returns
// a CheckList whose ids are prefixed with the suite, complex and degree;
// every check carries the wall time of the section that produced it.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "simdiff/certificate.hpp"
#include "simdiff/chern.hpp"

namespace simdiff {

/// Defects the harness can inject:
///   pentagon    associator of E(X, n) twisted by m_a m_b m_c^2 u (not a 3-cocycle)
///   iota        iota_n scaled by 2 (hat exactness and iota-check)
///   mu          corrupted Chern mu
///   zigzag      broken adjoint data for the subdivision comparison
///   B-cocycle, B-symmetry, B-unit   defects in the monoidal cell of Phi
const std::vector<std::string>& injections();

/// Whether the defect can exist on (x, n): mu needs free classes in degrees
/// n and n-1; B defects need a non-closed (n-1)-cochain and free H^n, of
/// rank at least 2 for B-symmetry (an alternating form on Z is zero).
bool injection_applies(const std::string& inject, const ComplexPtr& x, int n);

struct InapplicableInjection : Error {
  InapplicableInjection(const std::string& inject, const std::string& complex, int n)
      : Error("--inject " + inject + " cannot be realized on " + complex + " in degree " + std::to_string(n)) {}
};

/// strict, subdivided (sd), alt-iota (alt). `inject == "iota"` turns strict
/// into strict with iota scale 2.
std::unique_ptr<ChernModel> make_model(const std::string& name, int n, const std::string& inject = "");

/// Built-in fixtures by short name: pt, s1, s2, t2, rp2.
ComplexPtr builtin_fixture(const std::string& name);
const std::vector<std::string>& builtin_fixture_names();

/// H^n(X; Z) by an independent Smith normal form of delta_{n-1} and the rank
/// of delta_n: free rank and invariant factors > 1.
GroupPresentation snf_oracle(const ComplexPtr& x, int n);

CheckList suite_complex(const ComplexPtr& x);
CheckList suite_cohomology(const ComplexPtr& x, int n, const Coefficients& coeffs);
CheckList suite_iota(int n, const Coefficients& coeffs, int truncation, const std::string& inject);
CheckList suite_groupoid(const ComplexPtr& x, int n, int trials, std::uint64_t seed, const std::string& inject,
                         std::uint64_t perturb_seed = 0);
/// Instances: cubic-cocycle, broken-cocycle, symmetric-sign, semion,
/// synthetic (pentagon holds iff omega is a cocycle, both directions),
/// subdivision (weak inverse over the standard diagram, degree n).
CheckList suite_moncat(const std::string& instance, int n, int trials, std::uint64_t seed, const std::string& inject);
const std::vector<std::string>& moncat_instances();
CheckList suite_chern(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                      const std::string& inject);
/// Eqs (1)-(4) over the standard diagram.
CheckList suite_chern_diagram(int n, const std::string& model, int trials, std::uint64_t seed);
CheckList suite_hat_group(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                          const std::string& inject);
CheckList suite_hat_exactness(const ComplexPtr& x, int n, const std::string& model, int trials, std::uint64_t seed,
                              const std::string& inject);
CheckList suite_hat_naturality(int n, const std::string& model, int trials, std::uint64_t seed);
CheckList suite_refine(const ComplexPtr& x, int n, const std::string& model_a, const std::string& model_b, int trials,
                       std::uint64_t seed, const std::string& inject);

struct AllConfig {
  std::uint64_t seed = 7;
  /// 0: the per-suite defaults.
  int trials = 0;
  std::vector<int> degrees{1, 2, 3};
  std::vector<ComplexPtr> complexes;  // empty: every built-in fixture
  std::string inject;
  int jobs = 1;
};

/// Every suite over the fixtures and degrees, ordered by id.
CheckList suite_all(const AllConfig& cfg);

/// Runs tasks on `jobs` worker threads; results keep the task order.
std::vector<CheckList> run_tasks(const std::vector<std::function<CheckList()>>& tasks, int jobs);

/// {tool, version, command, config, status, summary, checks}.
nlohmann::json make_certificate(const std::string& command, const nlohmann::json& config, CheckList checks);

/// Drops every "timing" member, recursively.
nlohmann::json strip_timing(nlohmann::json j);

}  // namespace simdiff
