#ifndef MLAB_TOOLS_SELFTEST_HPP
#define MLAB_TOOLS_SELFTEST_HPP

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "mlab/testing/oracles.hpp"
#include "mlab/testing/random.hpp"

namespace mlab::cli {

struct CorpusOutcome {
    std::string file;
    bool passed = false;
    std::string message;
};

// Provided by mlab_cli.hpp; the corpus runner replays commands in-process.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// True when every key of `expected` appears in `actual` with an equal value
/// (objects compared recursively).
inline bool json_contains(const json& actual, const json& expected) {
    if (expected.is_object()) {
        if (!actual.is_object()) return false;
        for (auto it = expected.begin(); it != expected.end(); ++it)
            if (!actual.contains(it.key()) || !json_contains(actual[it.key()], it.value())) return false;
        return true;
    }
    return actual == expected;
}

/// Corpus file: {"ring": "...", "command": "...", "inputs": {option: value},
/// "expected": {"verdict": "...", "exit_code": n, "payload": {...}}}.
inline CorpusOutcome run_corpus_file(const std::filesystem::path& path) {
    CorpusOutcome out{path.filename().string(), false, ""};
    std::ifstream in(path);
    json item;
    try {
        item = json::parse(in);
    } catch (const std::exception& e) {
        out.message = std::string("unreadable corpus file: ") + e.what();
        return out;
    }
    std::vector<std::string> args{item.at("command").get<std::string>(), "--format", "json"};
    if (item.contains("ring") && !item["ring"].is_null()) {
        args.push_back("--ring");
        args.push_back(item["ring"].get<std::string>());
    }
    for (auto it = item["inputs"].begin(); it != item["inputs"].end(); ++it) {
        if (it.value().is_boolean()) {
            if (it.value().get<bool>()) args.push_back("--" + it.key());
            continue;
        }
        args.push_back("--" + it.key() + "=" + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()));
    }
    std::ostringstream stdout_text, stderr_text;
    int code = run_command(args, stdout_text, stderr_text);
    const json& expected = item.at("expected");
    int want_code = expected.value("exit_code", 0);
    if (code != want_code) {
        out.message = "exit code " + std::to_string(code) + ", expected " + std::to_string(want_code) + " " + stderr_text.str();
        return out;
    }
    if (code == 2) {
        out.passed = true;
        return out;
    }
    json report = json::parse(stdout_text.str());
    if (expected.contains("verdict") && report["verdict"] != expected["verdict"]) {
        out.message = "verdict " + report["verdict"].dump();
        return out;
    }
    if (expected.contains("payload") && !json_contains(report["payload"], expected["payload"])) {
        out.message = "payload mismatch: " + report["payload"].dump();
        return out;
    }
    out.passed = true;
    return out;
}

inline std::vector<CorpusOutcome> run_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<CorpusOutcome> out;
    for (const auto& f : files) out.push_back(run_corpus_file(f));
    return out;
}

namespace detail {

inline Ring selftest_ring(std::size_t n, CoefficientDomain domain = CoefficientDomain::rationals()) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
    return make_ring(names, domain);
}

struct Check {
    std::string name;
    std::function<bool(gen::Rng&, std::size_t samples)> run;
    std::size_t fast_samples;
    std::size_t full_samples;
};

template <class Coefficient>
bool towers_witness(const DualTower<Coefficient>& t, gen::Rng& rng, std::size_t samples) {
    for (std::size_t s = 0; s < samples; ++s) {
        auto f = gen::random_nonzero_polynomial(rng, t.ring(), 3, 4);
        auto w = annihilator_witness(t, f, 12);
        if (!w.found() || !w.image_compatible || (w.bound && *w.witness_level > *w.bound + 1)) return false;
    }
    return true;
}

inline std::vector<Check> selftest_checks() {
    std::vector<Check> checks;
    checks.push_back({"ring_axioms", [](gen::Rng& rng, std::size_t samples) {
                          Ring r = selftest_ring(3);
                          for (std::size_t s = 0; s < samples; ++s) {
                              auto f = gen::random_polynomial(rng, r, 3, 4), g = gen::random_polynomial(rng, r, 3, 4),
                                   h = gen::random_polynomial(rng, r, 3, 4);
                              if ((f * g) * h != f * (g * h) || f * (g + h) != f * g + f * h || f * g != g * f) return false;
                          }
                          return true;
                      }, 100, 500});
    checks.push_back({"groebner_membership_oracle", [](gen::Rng& rng, std::size_t samples) {
                          for (std::size_t s = 0; s < samples; ++s) {
                              Ring r = selftest_ring(static_cast<std::size_t>(gen::uniform_int(rng, 1, 3)));
                              std::vector<Polynomial> gens;
                              auto count = gen::uniform_int(rng, 1, 3);
                              for (std::int64_t k = 0; k < count; ++k) gens.push_back(gen::random_nonzero_polynomial(rng, r, 2, 3, 3));
                              Ideal ideal(r, gens);
                              Polynomial f = gen::uniform_int(rng, 0, 1) ? gen::random_polynomial(rng, r, 2, 3)
                                                                         : gens[0] * gen::random_polynomial(rng, r, 1, 2);
                              if (!verify_groebner(groebner_basis(ideal))) return false;
                              bool fast = ideal_member(f, ideal);
                              // the bounded oracle can only confirm membership
                              if (oracle::member_by_linear_algebra(f, gens, 3) && !fast) return false;
                          }
                          return true;
                      }, 10, 50});
    checks.push_back({"laurent_action_axioms", [](gen::Rng& rng, std::size_t samples) {
                          Ring r = selftest_ring(3);
                          for (std::size_t s = 0; s < samples; ++s) {
                              auto f = gen::random_polynomial(rng, r, 3, 3), g = gen::random_polynomial(rng, r, 3, 3);
                              LaurentElement v(r, 2);
                              v.add_term({gen::uniform_int(rng, -4, -1), gen::uniform_int(rng, -4, -1), gen::uniform_int(rng, 0, 3)}, 1);
                              v.add_term({-1, gen::uniform_int(rng, -4, -1), gen::uniform_int(rng, 0, 3)}, 2);
                              if (laurent_act(f * g, v) != laurent_act(f, laurent_act(g, v))) return false;
                              if (laurent_act(f + g, v) != laurent_act(f, v) + laurent_act(g, v)) return false;
                          }
                          return true;
                      }, 100, 500});
    checks.push_back({"colimit_well_defined", [](gen::Rng& rng, std::size_t samples) {
                          Ring r = selftest_ring(3);
                          for (std::size_t s = 0; s < samples; ++s) {
                              ColimitClass c(static_cast<Exponent>(gen::uniform_int(rng, 1, 4)), gen::random_polynomial(rng, r, 5, 4),
                                             static_cast<std::size_t>(gen::uniform_int(rng, 1, 3)));
                              if (colimit_embed(c) != colimit_embed(c.transition())) return false;
                          }
                          return true;
                      }, 50, 200});
    checks.push_back({"cech_complexes", [](gen::Rng& rng, std::size_t samples) {
                          for (std::size_t s = 0; s < samples; ++s) {
                              std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 5));
                              auto quotient = gen::random_squarefree_monomials(rng, n, 3);
                              std::vector<Monomial> gens;
                              for (std::size_t v = 0; v < n; ++v) gens.push_back(Monomial::variable(n, v));
                              std::vector<std::int64_t> mu(n);
                              for (auto& x : mu) x = gen::uniform_int(rng, -2, 1);
                              auto strand = cech_strand(quotient, gens, mu, CoefficientDomain::rationals());
                              if (!boundaries_compose_to_zero(strand, CoefficientDomain::rationals()) ||
                                  !euler_characteristic_matches(strand))
                                  return false;
                          }
                          return true;
                      }, 50, 200});
    checks.push_back({"inverse_action_axioms", [](gen::Rng& rng, std::size_t samples) {
                          Ring r = selftest_ring(3);
                          for (std::size_t s = 0; s < samples; ++s) {
                              auto f = gen::random_polynomial(rng, r, 3, 3), g = gen::random_polynomial(rng, r, 3, 3);
                              FieldInverse w(r);
                              for (int k = 0; k < 4; ++k) w.add_term(gen::random_monomial(rng, 3, 5), gen::random_coefficient(rng, 5, true));
                              if (inverse_act(f * g, w) != inverse_act(f, inverse_act(g, w))) return false;
                              if (inverse_act(f, w) != oracle::contract_by_pairing(f, w)) return false;
                          }
                          return true;
                      }, 100, 500});
    checks.push_back({"tower_compatibility", [](gen::Rng&, std::size_t levels) {
                          for (std::size_t n = 2; n <= 4; ++n)
                              for (std::size_t i = 1; i < n; ++i) {
                                  if (!tower_check(alpha_equichar(selftest_ring(n), i, levels))) return false;
                                  for (std::uint64_t p : {2u, 5u}) {
                                      Ring r = selftest_ring(n, CoefficientDomain::p_integral(p));
                                      if (!tower_check(alpha_mixed(r, i, p, levels))) return false;
                                      if (!tower_check(alpha_mixed_p_in_ideal(r, i, p, levels))) return false;
                                  }
                              }
                          return true;
                      }, 4, 8});
    checks.push_back({"witness_totality", [](gen::Rng& rng, std::size_t samples) {
                          for (auto [n, i] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
                              if (!towers_witness(alpha_equichar(selftest_ring(n), i, 1), rng, samples)) return false;
                              Ring z = selftest_ring(n, CoefficientDomain::p_integral(2));
                              if (!towers_witness(alpha_mixed(z, i, 2, 1), rng, samples)) return false;
                              if (!towers_witness(alpha_mixed_p_in_ideal(z, i, 2, 1), rng, samples)) return false;
                          }
                          return true;
                      }, 20, 200});
    checks.push_back({"dualext_truncation_oracle", [](gen::Rng& rng, std::size_t samples) {
                          Ring r = make_ring({"y", "x"}, CoefficientDomain::rationals());
                          for (std::size_t s = 0; s < samples; ++s) {
                              auto f = gen::random_nonzero_polynomial(rng, r, 5, 5);
                              auto w = dualext_witness(f, 1);
                              Exponent deg = f.degree_in(1);
                              auto brute = oracle::dualext_first_nonzero(f, 1, factorial(deg + 2) + deg + 1);
                              if (!brute || brute->first != w.exponent || brute->second != w.coefficient) return false;
                              if (w.exponent > factorial(deg + 2)) return false;
                          }
                          return true;
                      }, 20, 100});
    checks.push_back({"z_sets_inclusion", [](gen::Rng&, std::size_t max_n) {
                          for (std::size_t n = 1; n <= max_n; ++n)
                              for (std::size_t i = 1; i <= n; ++i) {
                                  auto rep = z_sets_monomial(n, i);
                                  if (!rep.z2_subset_z1 || !rep.z1_downward_closed || !rep.z2_downward_closed) return false;
                              }
                          return true;
                      }, 4, 5});
#ifdef MLAB_SELFTEST_INJECT_FAILURE
    checks.push_back({"injected_failure", [](gen::Rng&, std::size_t) { return false; }, 1, 1});
#endif
    return checks;
}

} // namespace detail

inline Result cmd_selftest(const Args& a) {
    std::string scope = a.text_or("scope", "fast");
    if (scope != "fast" && scope != "full") throw UsageError("--scope must be fast or full");
    const bool full = scope == "full";
    json checks = json::array();
    std::size_t passed = 0, failed = 0;
    auto checks_list = detail::selftest_checks();
    for (std::size_t k = 0; k < checks_list.size(); ++k) {
        const auto& c = checks_list[k];
        gen::Rng rng(gen::derive_seed(a.settings().seed, k));
        std::size_t samples = full ? c.full_samples : c.fast_samples;
        bool ok = false;
        std::string error;
        try {
            ok = c.run(rng, samples);
        } catch (const std::exception& e) {
            error = e.what();
        }
        (ok ? passed : failed) += 1;
        json entry{{"name", c.name}, {"passed", ok}, {"size", samples}};
        if (!error.empty()) entry["error"] = error;
        checks.push_back(std::move(entry));
    }
    std::string corpus = a.text_or("corpus", a.settings().corpus_dir);
    json corpus_results = json::array();
    if (!corpus.empty() && std::filesystem::is_directory(corpus)) {
        for (const auto& o : run_corpus(corpus)) {
            (o.passed ? passed : failed) += 1;
            json entry{{"file", o.file}, {"passed", o.passed}};
            if (!o.passed) entry["message"] = o.message;
            corpus_results.push_back(std::move(entry));
        }
    }
    Result r;
    r.payload = {{"scope", scope}, {"seed", a.settings().seed}, {"checks", checks}, {"corpus", corpus_results},
                 {"passed", passed}, {"failed", failed}};
    if (corpus_results.empty()) r.warnings.push_back("no corpus directory found; corpus replay skipped");
    if (failed > 0) r.verdict = Verdict::fail;
    return r;
}

} // namespace mlab::cli

#endif
