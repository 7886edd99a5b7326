// Acceptance run: one line per criterion with verdict, wall time and limit.
//
//   acceptance          every criterion
//   acceptance 3 5      only criteria 3 and 5
//
// All comparisons are exact (rational and integer arithmetic), so no
// floating tolerance is involved anywhere. A criterion that finishes but
// overruns its time limit is reported as FAIL.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "simdiff/fixtures.hpp"
#include "simdiff/refine.hpp"
#include "simdiff/suites.hpp"

#ifndef SIMDIFF_BINARY
#error "SIMDIFF_BINARY must name the simdiff executable"
#endif

using namespace simdiff;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  /// Every check in `l` passes; the first failures are named.
  void require_all(const CheckList& l, const std::string& where) {
    int named = 0;
    for (const auto& c : l.checks) {
      if (!c.pass && named++ < 3) require(false, where + ": " + c.id);
    }
    if (named > 3) require(false, where + ": " + std::to_string(named - 3) + " more");
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::set<std::string> failed_ids(const CheckList& l) {
  std::set<std::string> out;
  for (const auto& c : l.checks) {
    if (!c.pass) out.insert(c.id);
  }
  return out;
}

nlohmann::json presentation_of(const CheckList& l) {
  const CheckResult* p = l.find("presentation");
  return p == nullptr ? nlohmann::json() : p->evidence;
}

bool is_group(const nlohmann::json& p, int free, int divisible, int circle, std::vector<std::string> torsion) {
  return !p.is_null() && p["free_rank"] == free && p["divisible_rank"] == divisible && p["circle_rank"] == circle &&
         p["torsion"] == nlohmann::json(torsion);
}

// 1. Exactness certificates.
Outcome exactness() {
  Outcome o;
  const std::vector<std::string> claims{"ker-I-in-im-a", "I-a",           "ker-a-in-im-ch", "im-ch-in-ker-a",
                                        "I-surjective",  "R-a",           "Rham-R-equals-ch-I"};
  for (const auto& name : builtin_fixture_names()) {
    for (int n : {1, 2, 3}) {
      const std::string where = name + " n=" + std::to_string(n);
      const CheckList c = suite_hat_exactness(builtin_fixture(name), n, "strict", 3, kSeed, "");
      o.require_all(c, where);
      for (const auto& id : claims) o.require(c.find(id) != nullptr, where + ": no " + id + " check");
    }
  }
  return o;
}

// 2. Known groups.
Outcome known_groups() {
  Outcome o;
  const CheckList pt1 = suite_hat_group(builtin_fixture("pt"), 1, "strict", 5, kSeed, "");
  o.require_all(pt1, "pt n=1");
  o.require(is_group(presentation_of(pt1), 0, 0, 1, {}), "E^1(pt) is not Q/Z: " + presentation_of(pt1).dump());
  const CheckList s1 = suite_hat_group(builtin_fixture("s1"), 2, "strict", 5, kSeed, "");
  o.require_all(s1, "s1 n=2");
  o.require(is_group(presentation_of(s1), 0, 0, 1, {}), "E^2(S^1) is not Q/Z: " + presentation_of(s1).dump());
  const ComplexPtr rp2 = builtin_fixture("rp2");
  const CheckList g = suite_hat_group(rp2, 2, "strict", 5, kSeed, "");
  o.require_all(g, "rp2 n=2 group");
  o.require(presentation_of(g)["torsion"] == nlohmann::json({"2"}), "E^2(RP^2) has no Z/2 summand");
  o.require(g.find("section-realizes-generator") != nullptr, "no section for the Z/2 generator");
  const CheckList e = suite_hat_exactness(rp2, 2, "strict", 3, kSeed, "");
  const CheckResult* onto = e.find("I-surjective");
  o.require(onto != nullptr && onto->pass, "I: E^2(RP^2) -> H^2 not shown surjective");
  const GroupPresentation h2 = snf_oracle(rp2, 2);
  o.require(h2.free_rank == 0 && h2.torsion == std::vector<Integer>{2}, "oracle H^2(RP^2; Z) != Z/2");
  const GroupPresentation h1 = snf_oracle(builtin_fixture("s1"), 1);
  o.require(h1.free_rank == 1 && h1.torsion.empty(), "oracle H^1(S^1; Z) != Z");
  return o;
}

// 3. iota compatibility and the perturbed family.
Outcome iota() {
  Outcome o;
  for (int n = 0; n <= 3; ++n) {
    for (const auto& a : {Coefficients::integers(), Coefficients::modular(2)}) {
      const std::string where = "n=" + std::to_string(n) + " " + a.name();
      o.require_all(suite_iota(n, a, n + 3, ""), where);
      o.require(!suite_iota(n, a, n + 3, "iota").pass(), where + ": perturbed iota not detected");
    }
  }
  return o;
}

// 4. Coherence of E(X, n), filler independence, synthetic iff.
Outcome coherence() {
  Outcome o;
  for (const auto& name : {"s1", "t2"}) {
    const ComplexPtr x = builtin_fixture(name);
    const CheckList plain = suite_groupoid(x, 1, 100, kSeed, "");
    o.require_all(plain, std::string(name) + " canonical");
    for (const auto& c : plain.checks) {
      if (c.id != "unit-coherence") o.require(c.trials >= 100, std::string(name) + ": " + c.id + " ran < 100 samples");
    }
    const CheckList perturbed = suite_groupoid(x, 1, 100, kSeed, "", 99);
    o.require(perturbed.checks.size() == plain.checks.size(), std::string(name) + ": perturbed check list differs");
    for (const auto& c : plain.checks) {
      const CheckResult* p = perturbed.find(c.id);
      o.require(p != nullptr && p->pass == c.pass, std::string(name) + ": perturbation changed " + c.id);
    }
  }
  // 40 omega tables (coboundaries, trilinear forms, random), 1000 samples each.
  const CheckList syn = suite_moncat("synthetic", 1, 40, kSeed, "");
  o.require_all(syn, "synthetic");
  const CheckResult* holds = syn.find("pentagon-holds-for-cocycles");
  const CheckResult* fails = syn.find("pentagon-fails-for-non-cocycles");
  const bool cocycles = holds != nullptr && holds->trials >= 2;
  const bool non_cocycles = fails != nullptr && fails->trials >= 2;
  o.require(cocycles && non_cocycles, "synthetic family does not cover both directions");
  return o;
}

// 5. Chern monoidal functor.
Outcome chern() {
  Outcome o;
  for (const auto& name : {"s1", "t2"}) {
    for (int n : {1, 2}) {
      const std::string where = std::string(name) + " n=" + std::to_string(n);
      const CheckList c = suite_chern(builtin_fixture(name), n, "strict", 25, kSeed, "");
      o.require_all(c, where);
      bool witnesses = false, loops = false;
      for (const auto& r : c.checks) {
        witnesses = witnesses || r.id.rfind("witness/", 0) == 0;
        if (r.id.rfind("loop/", 0) == 0) loops = loops || r.trials >= 25;
      }
      o.require(witnesses, where + ": no witness checks");
      o.require(loops, where + ": fewer than 25 loop cases");
    }
  }
  return o;
}

// 6. Subdivision weak inverse and eqs (1)-(4).
Outcome subdivision() {
  Outcome o;
  for (int n : {1, 2}) {
    const std::string where = "n=" + std::to_string(n);
    const CheckList w = suite_moncat("subdivision", n, 2, kSeed, "");
    o.require_all(w, where + " weak inverse");
    o.require(w.find("zigzag-u") != nullptr && w.find("zigzag-v") != nullptr, where + ": zig-zag checks missing");
    for (const char* model : {"strict", "subdivided", "alt-iota"}) {
      const CheckList e = suite_chern_diagram(n, model, 25, kSeed);
      o.require_all(e, where + " " + model);
      for (const char* id : {"eq1-coboundary", "eq2-naturality", "eq3-composition", "eq4-identity"}) {
        const CheckResult* r = e.find(id);
        o.require(r != nullptr && r->trials >= 1, where + " " + model + ": " + id + " never exercised");
      }
    }
  }
  return o;
}

// 7. Equivalences and B.
Outcome equivalence() {
  Outcome o;
  int injected = 0, asymmetric = 0;
  for (const auto& name : {"s1", "t2"}) {
    for (int n : {1, 2}) {
      const ComplexPtr x = builtin_fixture(name);
      const std::string where = std::string(name) + " n=" + std::to_string(n);
      const auto st = make_model("strict", n);
      const HatTheory ts(*st, x);
      for (const char* other : {"alt-iota", "subdivided"}) {
        const auto m = make_model(other, n);
        const HatTheory tm(*m, x);
        o.require_all(check_equivalence(BObstruction(canonical_map(ts, tm)), 3, kSeed), where + " " + other);
        o.require_all(derive_B(BObstruction(canonical_map(ts, tm)), 50, kSeed), where + " " + other + " B");
      }
      // Defect forms are non-closed (n-1)-forms, which need dim X >= n.
      if (!ts.image_generators().empty() && x->dimension() >= n) {
        ++injected;
        const auto alt = make_model("alt-iota", n);
        const HatTheory ta(*alt, x);
        const BObstruction q(quadratic_shift(canonical_map(ts, ta), Rational(1, 3) * ta.image_generators().front()));
        o.require_all(derive_B(q, 50, kSeed), where + " quadratic shift B");
        for (const auto& [defect, id] : std::vector<std::pair<BDefect, std::string>>{
                 {BDefect::cocycle, "B-cocycle"}, {BDefect::symmetry, "B-symmetry"}, {BDefect::unit, "B-unit"}}) {
          // In rank one every 2-cocycle is symmetric: an alternating
          // bilinear form on Z vanishes, so there is nothing to inject.
          if (defect == BDefect::symmetry && snf_oracle(x, n).free_rank < 2) continue;
          if (defect == BDefect::symmetry) ++asymmetric;
          const auto f = failed_ids(derive_B(BObstruction(canonical_map(ts, ta), defect), 50, kSeed));
          o.require(f == std::set<std::string>{id}, where + ": " + id + " injection not isolated");
        }
      }
    }
  }
  o.require(injected >= 3 && asymmetric >= 1, "defect injection ran on too few configurations");
  return o;
}

// 8. Reproducible `all`.
Outcome reproducible() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("simdiff-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<nlohmann::json> certs;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("all" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + SIMDIFF_BINARY + "\" all --seed 7 -q -o \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "run " + std::to_string(run + 1) + " exited with status " + std::to_string(rc));
    std::ifstream in(out);
    if (!in) {
      o.require(false, "no certificate from run " + std::to_string(run + 1));
      continue;
    }
    certs.push_back(nlohmann::json::parse(in));
  }
  fs::remove_all(dir);
  if (certs.size() == 2) {
    o.require(strip_timing(certs[0]).dump() == strip_timing(certs[1]).dump(), "certificates differ outside timing");
    o.require(certs[0]["status"] == "pass", "certificate status is " + certs[0]["status"].dump());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exactness certificates, 5 complexes x n in {1,2,3}", 120, exactness},
      {2, "E^1(pt), E^2(S^1), E^2(RP^2) and oracle H^n", 30, known_groups},
      {3, "iota compatibility at truncation n+3, Z and Z/2", 60, iota},
      {4, "coherence of E(X,n) on S^1, T^2; fillers; synthetic iff", 120, coherence},
      {5, "Chern monoidal functor with witnesses and loops", 60, chern},
      {6, "subdivision weak inverse and eqs (1)-(4)", 120, subdivision},
      {7, "model equivalences, derive_B, defect isolation", 120, equivalence},
      {8, "simdiff all --seed 7 reproducible", 600, reproducible},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    try {
      wanted.insert(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion ...]\n";
      return 2;
    }
  }

  bool ok = true;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.require(secs <= c.limit_seconds, "over the time limit");
    ok = ok && r.pass;
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(1)
         << secs << "s / " << c.limit_seconds << "s  " << c.title;
    std::cout << line.str() << "\n";
    for (const auto& note : r.notes) std::cout << "    " << note << "\n";
    std::cout.flush();
  }
  return ok ? 0 : 1;
}
