#pragma once

// Per-check results as they appear in JSON certificates.

#include <algorithm>
#include <string>
#include <vector>

#include "json.hpp"
#include "simdiff/moncat.hpp"

namespace simdiff {

struct CheckResult {
  std::string id;
  std::string claim;
  bool pass = true;
  int trials = 0;
  /// Witness data when the check passes, obstruction data when it fails.
  nlohmann::json evidence;
  /// Wall time of the section that produced the check; negative if unset.
  double seconds = -1;

  nlohmann::json to_json() const {
    nlohmann::json j{{"id", id}, {"claim", claim}, {"status", pass ? "pass" : "fail"}, {"trials", trials}};
    j[pass ? "witness" : "obstruction"] = evidence.is_null() ? nlohmann::json::object() : evidence;
    if (seconds >= 0) j["timing"] = {{"seconds", seconds}};
    return j;
  }
};

struct CheckList {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  const CheckResult* find(const std::string& id) const {
    for (const auto& c : checks) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
  /// Adds one observation to the check `id`, creating it on first use. The
  /// first failure's evidence is kept; otherwise the first witness is.
  void record(const std::string& id, const std::string& claim, bool ok, const nlohmann::json& evidence) {
    CheckResult* c = nullptr;
    for (auto& existing : checks) {
      if (existing.id == id) c = &existing;
    }
    if (c == nullptr) {
      checks.push_back({id, claim, true, 0, nullptr, -1});
      c = &checks.back();
    }
    ++c->trials;
    if (!ok && c->pass) {
      c->pass = false;
      c->evidence = evidence;
    } else if (c->pass && c->evidence.is_null()) {
      c->evidence = evidence;
    }
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
  }
  /// Moves the checks of `other` in, prefixing their ids.
  void append(CheckList other, const std::string& prefix = "") {
    for (auto& c : other.checks) {
      c.id = prefix + c.id;
      checks.push_back(std::move(c));
    }
  }
  void stamp(double s) {
    for (auto& c : checks) {
      if (c.seconds < 0) c.seconds = s;
    }
  }
  void sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& l, const CheckResult& r) { return l.id < r.id; });
  }
  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks) out.push_back(c.to_json());
    return out;
  }
};

/// One check per axiom of a coherence report, ids prefixed.
inline CheckList from_report(const CoherenceReport& r, const std::string& prefix) {
  CheckList out;
  for (const auto& a : r.axioms) {
    CheckResult c{prefix + a.axiom, r.instance + ": " + a.axiom, a.pass, a.trials, nullptr, -1};
    if (!a.pass) {
      c.evidence = {{"counterexample", a.counterexample}};
      if (!a.obstruction.is_null()) c.evidence["decision"] = a.obstruction;
    } else if (!a.evidence.empty()) {
      c.evidence = {{"decision", a.evidence.front()}};
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

}  // namespace simdiff
