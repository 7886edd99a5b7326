// simdiff: fixtures, computations and verification suites with JSON
// certificates. Exit codes: 0 every check passed, 1 some check failed,
// 2 usage, IO or schema error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "simdiff/fixtures.hpp"
#include "simdiff/io.hpp"
#include "simdiff/suites.hpp"

namespace fs = std::filesystem;
using namespace simdiff;

namespace {

/// Usage and IO problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file path, a path relative to $SIMDIFF_FIXTURES, or a built-in
/// fixture name (pt, s1, s2, t2, rp2, optionally with .json).
ComplexPtr resolve_complex(const std::string& spec) {
  if (fs::exists(spec)) return load_complex(spec);
  if (const char* dir = std::getenv("SIMDIFF_FIXTURES")) {
    const fs::path p = fs::path(dir) / spec;
    if (fs::exists(p)) return load_complex(p.string());
  }
  const std::string stem = fs::path(spec).stem().string();
  for (const auto& name : builtin_fixture_names()) {
    if (stem == name) return builtin_fixture(name);
  }
  throw UsageError("complex '" + spec + "' not found (no such file, not under $SIMDIFF_FIXTURES, not a built-in)");
}

/// "2", "1..3".
std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(text));
    } else {
      const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      if (lo > hi) throw UsageError("empty degree range " + text);
      for (int d = lo; d <= hi; ++d) out.push_back(d);
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad degree '" + text + "' (expected N or A..B)");
  }
  for (int d : out) {
    if (d < 0 || d > 6) throw UsageError("degree " + std::to_string(d) + " out of range [0, 6]");
  }
  return out;
}

std::vector<ComplexPtr> fixture_set(const std::string& spec) {
  std::vector<ComplexPtr> out;
  if (spec == "default") return out;
  std::string dir = spec;
  if (spec == "env") {
    const char* env = std::getenv("SIMDIFF_FIXTURES");
    if (env == nullptr) throw UsageError("--fixtures env but SIMDIFF_FIXTURES is not set");
    dir = env;
  }
  if (!fs::is_directory(dir)) throw UsageError("fixture directory '" + dir + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(load_complex(f.string()));
  if (out.empty()) throw UsageError("no *.json fixtures in '" + dir + "'");
  return out;
}

void check_inject(const std::string& inject, std::initializer_list<const char*> allowed) {
  if (inject.empty()) return;
  for (const char* a : allowed) {
    if (inject == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("--inject " + inject + " does not apply here (allowed: " + list + ")");
}

void write_output(const nlohmann::json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int emit(const std::string& command, const nlohmann::json& config, CheckList checks, const std::string& output,
         bool quiet) {
  const nlohmann::json cert = make_certificate(command, config, std::move(checks));
  write_output(cert, output);
  if (!quiet) {
    const auto& summary = cert["summary"];
    std::cerr << command << ": " << (cert["status"] == "pass" ? "PASS" : "FAIL") << " ("
              << summary["checks"].get<std::size_t>() - summary["failed"].get<std::size_t>() << "/"
              << summary["checks"].get<std::size_t>() << " checks)\n";
    for (const auto& c : cert["checks"]) {
      if (c["status"] == "fail") std::cerr << "  fail " << c["id"].get<std::string>() << ": " << c["claim"].get<std::string>() << "\n";
    }
  }
  return cert["status"] == "pass" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simdiff: simplicial differential cohomology engine"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string output;
  bool quiet = false;
  std::uint64_t seed = 7;
  int trials = 0;
  std::string inject;
  auto common = [&](CLI::App* sub, bool sampled) {
    sub->add_option("-o,--output", output, "Write the JSON certificate here (default: stdout)");
    sub->add_flag("-q,--quiet", quiet, "No summary on stderr");
    if (sampled) {
      sub->add_option("--seed", seed, "Seed for every sampled check")->capture_default_str();
      sub->add_option("--trials", trials, "Sampled cases per check (0: suite default)")->capture_default_str();
    }
  };
  const std::string inject_help = "Inject a defect to exercise the failure path";

  // complex
  auto* complex = app.add_subcommand("complex", "Build or check a complex in JSON form");
  complex->require_subcommand(1);
  auto* complex_build = complex->add_subcommand("build", "Write a built-in fixture complex");
  std::string kind = "circle";
  int size = 3;
  complex_build->add_option("--kind", kind, "pt, delta, circle, sphere2, torus, rp2")->capture_default_str();
  complex_build->add_option("--n", size, "Vertices of a circle or dimension of a simplex")->capture_default_str();
  complex_build->add_option("-o,--output", output, "Output file (default: stdout)");
  auto* complex_check = complex->add_subcommand("check", "Validate a complex and report invariants");
  std::string complex_path;
  complex_check->add_option("file", complex_path, "Complex JSON (path, $SIMDIFF_FIXTURES-relative or built-in)")->required();
  common(complex_check, false);

  // cohomology
  auto* cohom = app.add_subcommand("cohomology", "Cohomology groups with coefficients");
  std::string coeffs = "Z";
  std::string deg_text = "1";
  cohom->add_option("file", complex_path, "Complex JSON")->required();
  cohom->add_option("--deg", deg_text, "Degree or range A..B")->capture_default_str();
  cohom->add_option("--coeffs", coeffs, "Z, Q or Z/k")->capture_default_str();
  common(cohom, false);

  // iota-check
  auto* iota = app.add_subcommand("iota-check", "Compatibility of the fundamental cocycles with the structure maps");
  int iota_n = 1;
  int truncation = -1;
  iota->add_option("--n", iota_n, "Degree of K(A, n)")->capture_default_str();
  iota->add_option("--coeffs", coeffs, "Z or Z/k")->capture_default_str();
  iota->add_option("--truncation", truncation, "Highest level checked (default n + 3)");
  iota->add_option("--inject", inject, inject_help + " (iota)");
  common(iota, false);

  // groupoid
  auto* groupoid = app.add_subcommand("groupoid", "The mapping groupoid E(X, n)");
  groupoid->require_subcommand(1);
  auto* coherence = groupoid->add_subcommand("coherence", "Symmetric monoidal coherence on sampled data");
  std::uint64_t perturb = 0;
  coherence->add_option("--complex", complex_path, "Complex JSON")->required();
  coherence->add_option("--deg", deg_text, "Degree n")->capture_default_str();
  coherence->add_option("--perturb", perturb, "Seed for perturbed horn fillers (0: canonical)")->capture_default_str();
  coherence->add_option("--inject", inject, inject_help + " (pentagon)");
  common(coherence, true);

  // moncat
  auto* moncat = app.add_subcommand("moncat", "Monoidal groupoid instances and weak inverses");
  moncat->require_subcommand(1);
  auto* moncat_check = moncat->add_subcommand("check", "Coherence report for a named instance");
  std::string instance;
  moncat_check->add_option("--instance", instance, "cubic-cocycle, broken-cocycle, symmetric-sign, semion, synthetic, subdivision")
      ->required();
  moncat_check->add_option("--deg", deg_text, "Degree for the subdivision instance")->capture_default_str();
  moncat_check->add_option("--inject", inject, inject_help + " (zigzag)");
  common(moncat_check, true);

  // chern
  auto* chern = app.add_subcommand("chern", "The Chern character functor");
  chern->require_subcommand(1);
  auto* chern_verify = chern->add_subcommand("verify", "Monoidal functor, witnesses and pullback corrections");
  std::string model = "strict";
  chern_verify->add_option("--complex", complex_path, "Complex JSON")->required();
  chern_verify->add_option("--deg", deg_text, "Degree n")->capture_default_str();
  chern_verify->add_option("--model", model, "strict, subdivided or alt-iota")->capture_default_str();
  chern_verify->add_option("--inject", inject, inject_help + " (mu)");
  common(chern_verify, true);

  // hat
  auto* hat = app.add_subcommand("hat", "Differential cohomology groups");
  hat->require_subcommand(1);
  auto* hat_group = hat->add_subcommand("group", "Isomorphism type of E^n(M) with verified generators");
  auto* hat_exact = hat->add_subcommand("exactness", "Certificate for the exact row and R, I, a");
  auto* hat_nat = hat->add_subcommand("naturality", "Pullback naturality over the generating diagram");
  for (auto* sub : {hat_group, hat_exact}) {
    sub->add_option("--complex", complex_path, "Complex JSON")->required();
    sub->add_option("--inject", inject, inject_help + " (iota)");
  }
  for (auto* sub : {hat_group, hat_exact, hat_nat}) {
    sub->add_option("--deg", deg_text, "Degree n")->capture_default_str();
    sub->add_option("--model", model, "strict, subdivided or alt-iota")->capture_default_str();
    common(sub, true);
  }

  // refine
  auto* refine = app.add_subcommand("refine", "Equivalences between models");
  refine->require_subcommand(1);
  auto* compare = refine->add_subcommand("compare", "Tilde groupoids, check_equivalence and derive_B");
  std::string model_a = "strict", model_b = "alt-iota";
  compare->add_option("--complex", complex_path, "Complex JSON")->required();
  compare->add_option("--deg", deg_text, "Degree n")->capture_default_str();
  compare->add_option("--model-a", model_a, "Source model")->capture_default_str();
  compare->add_option("--model-b", model_b, "Target model")->capture_default_str();
  compare->add_option("--inject", inject, inject_help + " (B-cocycle, B-symmetry, B-unit)");
  common(compare, true);

  // all
  auto* all = app.add_subcommand("all", "Every suite over the fixtures");
  std::string fixtures = "default";
  std::string all_degrees = "1..3";
  int jobs = 1;
  all->add_option("--fixtures", fixtures, "default (built-ins), env ($SIMDIFF_FIXTURES) or a directory")->capture_default_str();
  all->add_option("--deg", all_degrees, "Degree range A..B")->capture_default_str();
  all->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  all->add_option("--inject", inject, inject_help + " (pentagon, iota, mu, zigzag, B-cocycle, B-symmetry, B-unit)");
  common(all, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    nlohmann::json config{{"seed", seed}, {"trials", trials}};
    if (!inject.empty()) config["inject"] = inject;

    if (complex_build->parsed()) {
      const ComplexPtr x = build_standard(parse_fixture_kind(kind), size);
      write_output(complex_to_json(*x), output);
      return 0;
    }
    if (complex_check->parsed()) {
      const ComplexPtr x = resolve_complex(complex_path);
      return emit("complex check", {{"complex", complex_path}}, suite_complex(x), output, quiet);
    }
    if (cohom->parsed()) {
      const ComplexPtr x = resolve_complex(complex_path);
      const Coefficients c = Coefficients::parse(coeffs);
      CheckList out;
      for (int n : parse_degrees(deg_text)) out.append(suite_cohomology(x, n, c), "n" + std::to_string(n) + "/");
      return emit("cohomology", {{"complex", complex_path}, {"deg", deg_text}, {"coeffs", c.name()}}, std::move(out),
                  output, quiet);
    }
    if (iota->parsed()) {
      check_inject(inject, {"iota"});
      if (iota_n < 0) throw UsageError("--n must be nonnegative");
      const Coefficients c = Coefficients::parse(coeffs);
      const int t = truncation < 0 ? iota_n + 3 : truncation;
      config = {{"n", iota_n}, {"coeffs", c.name()}, {"truncation", t}};
      if (!inject.empty()) config["inject"] = inject;
      return emit("iota-check", config, suite_iota(iota_n, c, t, inject), output, quiet);
    }

    config["deg"] = deg_text;
    const int n = parse_degrees(deg_text).front();
    if (coherence->parsed()) {
      check_inject(inject, {"pentagon"});
      if (n < 1) throw UsageError("the mapping groupoid needs --deg >= 1");
      config["complex"] = complex_path;
      config["perturb"] = perturb;
      return emit("groupoid coherence", config,
                  suite_groupoid(resolve_complex(complex_path), n, trials > 0 ? trials : 10, seed, inject, perturb), output,
                  quiet);
    }
    if (moncat_check->parsed()) {
      check_inject(inject, {"zigzag"});
      config["instance"] = instance;
      const auto& names = moncat_instances();
      if (std::find(names.begin(), names.end(), instance) == names.end()) throw UsageError("unknown instance '" + instance + "'");
      return emit("moncat check", config, suite_moncat(instance, std::max(n, 1), trials > 0 ? trials : 25, seed, inject),
                  output, quiet);
    }
    if (chern_verify->parsed()) {
      check_inject(inject, {"mu"});
      if (n < 1) throw UsageError("chern needs --deg >= 1");
      make_model(model, n);
      config["complex"] = complex_path;
      config["model"] = model;
      const int t = trials > 0 ? trials : 10;
      CheckList out = suite_chern(resolve_complex(complex_path), n, model, t, seed, inject);
      out.append(suite_chern_diagram(n, model, t, seed), "corrections/");
      return emit("chern verify", config, std::move(out), output, quiet);
    }
    if (hat_group->parsed() || hat_exact->parsed()) {
      check_inject(inject, {"iota"});
      if (n < 1) throw UsageError("hat needs --deg >= 1");
      make_model(model, n);
      config["complex"] = complex_path;
      config["model"] = model;
      const ComplexPtr x = resolve_complex(complex_path);
      const int t = trials > 0 ? trials : 5;
      if (hat_group->parsed()) return emit("hat group", config, suite_hat_group(x, n, model, t, seed, inject), output, quiet);
      return emit("hat exactness", config, suite_hat_exactness(x, n, model, t, seed, inject), output, quiet);
    }
    if (hat_nat->parsed()) {
      if (n < 1) throw UsageError("hat needs --deg >= 1");
      make_model(model, n);
      config["model"] = model;
      return emit("hat naturality", config, suite_hat_naturality(n, model, trials > 0 ? trials : 2, seed), output, quiet);
    }
    if (compare->parsed()) {
      check_inject(inject, {"B-cocycle", "B-symmetry", "B-unit"});
      if (n < 1) throw UsageError("refine needs --deg >= 1");
      make_model(model_a, n);
      make_model(model_b, n);
      config["complex"] = complex_path;
      config["model_a"] = model_a;
      config["model_b"] = model_b;
      return emit("refine compare", config,
                  suite_refine(resolve_complex(complex_path), n, model_a, model_b, trials > 0 ? trials : 5, seed, inject),
                  output, quiet);
    }
    if (all->parsed()) {
      if (!inject.empty() && std::find(injections().begin(), injections().end(), inject) == injections().end()) {
        throw UsageError("unknown --inject " + inject);
      }
      AllConfig cfg;
      cfg.seed = seed;
      cfg.trials = trials;
      cfg.degrees = parse_degrees(all_degrees);
      cfg.complexes = fixture_set(fixtures);
      cfg.inject = inject;
      cfg.jobs = jobs;
      nlohmann::json names = nlohmann::json::array();
      if (cfg.complexes.empty()) {
        for (const auto& name : builtin_fixture_names()) names.push_back(builtin_fixture(name)->name());
      } else {
        for (const auto& x : cfg.complexes) names.push_back(x->name());
      }
      config = {{"seed", seed}, {"trials", trials}, {"deg", all_degrees}, {"fixtures", names}};
      if (!inject.empty()) config["inject"] = inject;
      return emit("all", config, suite_all(cfg), output, quiet);
    }
  } catch (const UsageError& e) {
    std::cerr << "simdiff: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "simdiff: schema error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "simdiff: JSON error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "simdiff: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
