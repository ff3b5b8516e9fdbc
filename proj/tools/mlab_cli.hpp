#ifndef MLAB_TOOLS_MLAB_CLI_HPP
#define MLAB_TOOLS_MLAB_CLI_HPP

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "selftest.hpp"

#ifndef MLAB_CORPUS_DIR
#define MLAB_CORPUS_DIR ""
#endif

namespace mlab::cli {

enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_usage = 2, exit_resource = 3 };

inline std::vector<CommandSpec> command_table() {
    const OptionSpec ring{"ring", "coefficient domain and variables, e.g. QQ[x1,x2]", true};
    const OptionSpec ring_opt{"ring", "coefficient domain and variables, e.g. QQ[x1,x2]"};
    const OptionSpec i{"i", "head count: the local cohomology is taken at (x1..xi)", true};
    const OptionSpec variant{"variant", "equichar (default), mixed or mixed-p-in-I"};
    const OptionSpec p{"p", "prime for the mixed towers (defaults to the Zp(p) ring prime)"};
    return {
        {"parse", "parse and normalize a polynomial", {ring, {"poly", "polynomial", true}}, cmd_parse},
        {"gb", "reduced Groebner basis", {ring, {"ideal", "generators, comma separated", true}, {"order", "grevlex (default) or lex"}}, cmd_gb},
        {"member", "ideal membership", {ring, {"ideal", "generators", true}, {"poly", "polynomial", true}}, cmd_member},
        {"radical-member", "radical membership", {ring, {"ideal", "generators", true}, {"poly", "polynomial", true}}, cmd_radical_member},
        {"radical-eq", "equality of radicals",
         {ring, {"left", "generators", true}, {"right", "generators"}, {"right-intersect", "intersection such as (y1,y2);(y3,y4)"}},
         cmd_radical_eq},
        {"intersect", "intersection of two ideals", {ring, {"left", "generators", true}, {"right", "generators", true}}, cmd_intersect},
        {"quotient", "ideal quotient I : f", {ring, {"ideal", "generators", true}, {"poly", "polynomial", true}}, cmd_quotient},
        {"dim", "Krull dimension of R/I", {ring, {"ideal", "generators", true}}, cmd_dim},
        {"regseq", "regular sequence test on R/base", {ring, {"polys", "sequence", true}, {"base", "base ideal (default 0)"}}, cmd_regseq},
        {"sop", "part of a system of parameters of R/p", {ring, {"prime", "prime ideal", true}, {"polys", "elements", true}}, cmd_sop},
        {"alpha", "entries of an alpha tower", {ring, i, variant, p, {"levels", "number of levels (default 4)"}}, cmd_alpha},
        {"alpha-witness", "level where f does not annihilate alpha",
         {ring, i, variant, p, {"f", "polynomial", true}, {"max-level", "search limit (default 12)"}}, cmd_alpha_witness},
        {"tower-check", "compatibility of an alpha tower", {ring, i, variant, p, {"levels", "levels to check (default 8)"}}, cmd_tower_check},
        {"laurent-act", "action on the Laurent model of local cohomology",
         {ring, i, {"poly", "polynomial", true}, {"element", "Laurent element, e.g. x1^-2*x2^-1", true}}, cmd_laurent_act},
        {"colimit-check", "colimit class embedding is transition invariant",
         {ring, i, {"poly", "representative", true}, {"level", "level (default 1)"}}, cmd_colimit_check},
        {"image-member", "bounded preimage search under f",
         {ring, i, {"f", "polynomial", true}, {"target", "Laurent element", true}, {"box", "box radius (default 4)"}}, cmd_image_member},
        {"cech", "Cech strand of a monomial quotient in one multidegree",
         {ring, {"quotient", "monomial ideal J (default 0)"}, {"gens", "monomial generators", true}, {"mu", "multidegree", true}}, cmd_cech},
        {"lc-search", "multidegree with nonzero local cohomology",
         {ring, {"quotient", "monomial ideal J (default 0)"}, {"gens", "monomial generators (default all variables)"},
          {"degree", "cohomological degree", true}, {"box", "box radius (default 4)"}},
         cmd_lc_search},
        {"z-sets", "the two prime sets on variable primes", {{"n", "number of variables", true}, {"i", "head count", true}}, cmd_z_sets},
        {"counterexample-224", "three binomials that are not a partial system of parameters",
         {{"perturb", "use y1*y4 - y2*y3 instead of y1*y4 + y2*y3", false, true}}, cmd_counterexample_224},
        {"dualext-witness", "nonzero coefficient of f . h'",
         {ring, {"f", "polynomial", true}, {"var", "distinguished variable (default last)"}, {"degmax", "initial truncation (default 64)"}},
         cmd_dualext_witness},
        {"corollary-241", "top local cohomology is nonzero",
         {ring_opt, {"quotient", "monomial ideal (default: random corpus)"}, {"count", "random corpus size (default 20)"},
          {"box", "box radius (default 4)"}},
         cmd_corollary_241},
        {"selftest", "invariant suites and corpus replay",
         {{"scope", "fast (default) or full"}, {"corpus", "corpus directory"}}, cmd_selftest},
    };
}

inline void print_text(const std::string& command, const Result& r, double ms, std::ostream& out) {
    out << "command: " << command << "\n";
    for (auto it = r.payload.begin(); it != r.payload.end(); ++it)
        out << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    out << "verdict: " << verdict_name(r.verdict) << " (" << static_cast<long long>(ms) << " ms)\n";
}

/// Runs one invocation (argv without the program name) and returns the exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"mlab: local cohomology and Matlis duality laboratory", "mlab"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    std::uint64_t seed = 0;
    bool quiet = false;
    std::uint64_t step_cap = default_step_cap;
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", seed, "master seed for randomized commands");
    app.add_flag("--quiet", quiet, "print nothing; exit code only");
    app.add_option("--step-cap", step_cap, "Groebner reduction step cap");

    auto table = command_table();
    std::vector<std::map<std::string, std::string>> values(table.size());
    std::vector<std::map<std::string, bool>> flags(table.size());
    std::vector<CLI::App*> subs;
    for (std::size_t k = 0; k < table.size(); ++k) {
        auto* sub = app.add_subcommand(table[k].name, table[k].help);
        for (const auto& o : table[k].options) {
            if (o.flag) {
                sub->add_flag("--" + o.name, flags[k][o.name], o.help);
            } else {
                auto* opt = sub->add_option("--" + o.name, values[k][o.name], o.help);
                if (o.required) opt->required();
            }
        }
        subs.push_back(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    std::size_t which = 0;
    while (!subs[which]->parsed()) ++which;
    const auto& spec = table[which];
    std::map<std::string, std::string> given;
    for (const auto& o : spec.options)
        if (!o.flag && subs[which]->get_option("--" + o.name)->count() > 0) given[o.name] = values[which][o.name];

    Settings settings;
    settings.seed = seed;
    settings.groebner.step_cap = step_cap;
    settings.corpus_dir = MLAB_CORPUS_DIR;
    Args parsed(std::move(given), flags[which], settings);

    Result result;
    int code = exit_ok;
    auto start = std::chrono::steady_clock::now();
    try {
        result = spec.handler(parsed);
        code = result.verdict == Verdict::ok ? exit_ok : result.verdict == Verdict::fail ? exit_violation : exit_resource;
    } catch (const ResourceBound& e) {
        result = Result{};
        result.payload = {{"error", e.what()}};
        result.verdict = Verdict::inconclusive;
        code = exit_resource;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (quiet) return code;
    if (format == "json") {
        json report{{"command", spec.name},
                    {"argv", args},
                    {"payload", result.payload},
                    {"verdict", verdict_name(result.verdict)},
                    {"warnings", result.warnings},
                    {"timing", {{"wall_ms", ms}}},
                    {"counters", result.counters}};
        out << report.dump(2) << "\n";
    } else {
        print_text(spec.name, result, ms, out);
    }
    return code;
}

} // namespace mlab::cli

#endif
