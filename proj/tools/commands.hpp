#ifndef MLAB_TOOLS_COMMANDS_HPP
#define MLAB_TOOLS_COMMANDS_HPP

#include <functional>
#include <string>
#include <vector>

#include "report.hpp"
#include "mlab/testing/random.hpp"

namespace mlab::cli {

using Handler = std::function<Result(const Args&)>;

struct OptionSpec {
    std::string name;
    std::string help;
    bool required = false;
    bool flag = false;
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<OptionSpec> options;
    Handler handler;
};

namespace detail {

inline Ideal ideal_arg(const Args& a, const std::string& name, const Ring& ring) {
    const std::string& s = a.text(name);
    if (s.find_first_not_of(" \t") == std::string::npos) return Ideal(ring);
    return Ideal::parse(s, ring);
}

inline Ideal optional_ideal(const Args& a, const std::string& name, const Ring& ring) {
    return a.has(name) ? ideal_arg(a, name, ring) : Ideal(ring);
}

/// "(y1,y2);(y3,y4)" -> intersection of the listed ideals.
inline Ideal intersection_arg(const Args& a, const std::string& name, const Ring& ring) {
    std::optional<Ideal> acc;
    for (auto& [piece, offset] : mlab::detail::split_top_level(a.text(name), ';')) {
        std::string s = piece;
        auto open = s.find_first_not_of(" \t");
        auto close = s.find_last_not_of(" \t");
        if (open == std::string::npos || s[open] != '(' || s[close] != ')')
            throw ParseError("intersection members must be parenthesized generator lists", offset);
        Ideal part = Ideal::parse(s.substr(open + 1, close - open - 1), ring);
        acc = acc ? ideal_intersect(*acc, part, a.settings().groebner) : part;
    }
    return *acc;
}

inline std::size_t head_count(const Args& a) {
    return static_cast<std::size_t>(a.natural("i", 0, 0));
}

inline Polynomial poly_arg(const Args& a, const std::string& name, const Ring& ring) { return parse_poly(a.text(name), ring); }

inline LaurentElement laurent_arg(const Args& a, const std::string& name, const Ring& ring, std::size_t i) {
    LaurentElement v(ring, i);
    for (auto& t : parse_signed_terms(a.text(name), ring)) v.add_term(t.exponents, t.coefficient);
    return v;
}

inline std::vector<Monomial> monomial_list(const Ideal& ideal, const char* what) {
    std::vector<Monomial> out;
    for (const auto& g : ideal.generators()) {
        if (g.size() != 1) throw InvalidArgument(std::string(what) + " must be monomials");
        out.push_back(g.leading().monomial);
    }
    return out;
}

inline std::uint64_t resolve_prime(const Args& a, const Ring& ring) {
    if (a.has("p")) return a.natural("p", 0, 2);
    if (ring->domain().kind() == DomainKind::p_integral) return ring->domain().prime();
    throw UsageError("mixed towers need --p or a Zp(p) ring");
}

/// Builds the requested alpha tower and passes it to `body`.
template <class Body>
Result with_tower(const Args& a, Exponent levels, Body&& body) {
    Ring ring = a.ring();
    std::size_t i = head_count(a);
    std::string variant = a.text_or("variant", "equichar");
    if (variant == "equichar") return body(alpha_equichar(ring, i, levels));
    if (variant == "mixed") return body(alpha_mixed(ring, i, resolve_prime(a, ring), levels));
    if (variant == "mixed-p-in-I") return body(alpha_mixed_p_in_ideal(ring, i, resolve_prime(a, ring), levels));
    throw UsageError("--variant must be equichar, mixed or mixed-p-in-I");
}

inline void note_dimension_caveats(const Ideal& ideal, int dim, Result& r) {
    if (dim < 0) r.warnings.push_back("improper ideal: dimension reported as -1");
    if (!ideal.is_homogeneous()) r.warnings.push_back("non-homogeneous input: affine dimension, may differ from the local one");
}

} // namespace detail

inline Result cmd_parse(const Args& a) {
    Ring ring = a.ring();
    Polynomial f = detail::poly_arg(a, "poly", ring);
    Result r;
    r.payload = {{"ring", ring->to_string()},
                 {"polynomial", to_string(f)},
                 {"terms", f.size()},
                 {"total_degree", f.is_zero() ? json(nullptr) : json(f.total_degree())},
                 {"homogeneous", f.is_homogeneous()}};
    return r;
}

inline Result cmd_gb(const Args& a) {
    Ring ring = a.ring();
    std::string order = a.text_or("order", "grevlex");
    MonomialOrder mo = order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
    if (order != "lex" && order != "grevlex") throw UsageError("--order must be lex or grevlex");
    Ideal ideal = detail::ideal_arg(a, "ideal", ring);
    auto gb = groebner_basis(ideal, mo, a.settings().groebner);
    Result r;
    bool certified = verify_groebner(gb, a.settings().groebner);
    r.payload = {{"order", order}, {"basis", to_json(gb.basis())}, {"certified", certified}};
    r.counters["reduction_steps"] = gb.steps();
    if (!certified) r.verdict = Verdict::fail;
    return r;
}

inline Result cmd_member(const Args& a) {
    Ring ring = a.ring();
    Result r;
    r.payload["member"] = ideal_member(detail::poly_arg(a, "poly", ring), detail::ideal_arg(a, "ideal", ring), a.settings().groebner);
    return r;
}

inline Result cmd_radical_member(const Args& a) {
    Ring ring = a.ring();
    Result r;
    r.payload["radical_member"] =
        radical_member(detail::poly_arg(a, "poly", ring), detail::ideal_arg(a, "ideal", ring), a.settings().groebner);
    return r;
}

inline Result cmd_radical_eq(const Args& a) {
    Ring ring = a.ring();
    if (a.has("right") == a.has("right-intersect")) throw UsageError("give exactly one of --right and --right-intersect");
    Ideal left = detail::ideal_arg(a, "left", ring);
    Ideal right = a.has("right") ? detail::ideal_arg(a, "right", ring) : detail::intersection_arg(a, "right-intersect", ring);
    Result r;
    r.payload = {{"left", to_string(left.generators())}, {"right", to_string(right.generators())},
                 {"equal", radical_eq(left, right, a.settings().groebner)}};
    return r;
}

inline Result cmd_intersect(const Args& a) {
    Ring ring = a.ring();
    Ideal both = ideal_intersect(detail::ideal_arg(a, "left", ring), detail::ideal_arg(a, "right", ring), a.settings().groebner);
    Result r;
    r.payload["generators"] = to_json(both.generators());
    return r;
}

inline Result cmd_quotient(const Args& a) {
    Ring ring = a.ring();
    Ideal q = ideal_quotient(detail::ideal_arg(a, "ideal", ring), detail::poly_arg(a, "poly", ring), a.settings().groebner);
    Result r;
    r.payload["generators"] = to_json(q.generators());
    return r;
}

inline Result cmd_dim(const Args& a) {
    Ring ring = a.ring();
    Ideal ideal = detail::ideal_arg(a, "ideal", ring);
    int d = krull_dim(ideal, a.settings().groebner);
    Result r;
    r.payload = {{"dim", d}, {"unit_ideal", d < 0}, {"homogeneous", ideal.is_homogeneous()}};
    detail::note_dimension_caveats(ideal, d, r);
    return r;
}

inline Result cmd_regseq(const Args& a) {
    Ring ring = a.ring();
    auto fs = parse_poly_list(a.text("polys"), ring);
    Result r;
    r.payload["regular"] = is_regular_sequence(fs, detail::optional_ideal(a, "base", ring), a.settings().groebner);
    return r;
}

inline Result cmd_sop(const Args& a) {
    Ring ring = a.ring();
    Ideal prime = detail::ideal_arg(a, "prime", ring);
    auto fs = parse_poly_list(a.text("polys"), ring);
    Result r;
    r.payload["sop_part"] = is_sop_part(prime, fs, a.settings().groebner);
    return r;
}

inline Result cmd_alpha(const Args& a) {
    Exponent levels = a.natural("levels", 4, 1);
    return detail::with_tower(a, levels, [&](const auto& t) {
        Result r;
        json entries = json::array();
        for (Exponent l = 1; l <= levels; ++l) entries.push_back(t.entry(l).to_string());
        auto check = tower_check(t, levels);
        r.payload = {{"variant", variant_name(t.variant())},
                     {"levels", levels},
                     {"multiplier", to_string(t.multiplier())},
                     {"entries", entries},
                     {"compatible", check.passed}};
        if (!check.passed) r.verdict = Verdict::fail;
        return r;
    });
}

inline Result cmd_alpha_witness(const Args& a) {
    Exponent max_level = a.natural("max-level", 12, 1);
    Ring ring = a.ring();
    Polynomial f = detail::poly_arg(a, "f", ring);
    return detail::with_tower(a, 1, [&](const auto& t) {
        auto w = annihilator_witness(t, f, max_level);
        Result r;
        r.payload = to_json(t, w);
        r.payload["f"] = to_string(f);
        r.counters["levels_examined"] = w.levels_examined;
        if (!w.found()) {
            r.verdict = Verdict::inconclusive;
            r.warnings.push_back("no witness up to level " + std::to_string(max_level));
        } else if (!w.image_compatible || (w.bound && *w.witness_level > *w.bound + 1)) {
            r.verdict = Verdict::fail;
        }
        return r;
    });
}

inline Result cmd_tower_check(const Args& a) {
    Exponent levels = a.natural("levels", 8, 1);
    return detail::with_tower(a, levels, [&](const auto& t) {
        auto check = tower_check(t, levels);
        Result r;
        r.payload = {{"variant", variant_name(t.variant())},
                     {"levels", levels},
                     {"multiplier", to_string(t.multiplier())},
                     {"passed", check.passed},
                     {"vacuous", check.vacuous},
                     {"failing_level", check.failing_level ? json(*check.failing_level) : json(nullptr)},
                     {"reason", check.reason}};
        if (check.vacuous) r.warnings.push_back("single-entry tower: compatibility holds vacuously");
        if (!check.passed) r.verdict = Verdict::fail;
        return r;
    });
}

inline Result cmd_laurent_act(const Args& a) {
    Ring ring = a.ring();
    std::size_t i = detail::head_count(a);
    auto v = detail::laurent_arg(a, "element", ring, i);
    Result r;
    r.payload["result"] = laurent_act(detail::poly_arg(a, "poly", ring), v).to_string();
    return r;
}

inline Result cmd_colimit_check(const Args& a) {
    Ring ring = a.ring();
    ColimitClass c(a.natural("level", 1, 1), detail::poly_arg(a, "poly", ring), detail::head_count(a));
    auto here = colimit_embed(c);
    auto next = colimit_embed(c.transition());
    Result r;
    r.payload = {{"level", c.level()},
                 {"representative", to_string(c.representative())},
                 {"embedded", here.to_string()},
                 {"transition_embedded", next.to_string()},
                 {"well_defined", here == next}};
    if (!(here == next)) r.verdict = Verdict::fail;
    return r;
}

inline Result cmd_image_member(const Args& a) {
    Ring ring = a.ring();
    std::size_t i = detail::head_count(a);
    auto target = detail::laurent_arg(a, "target", ring, i);
    auto res = image_membership_bounded(detail::poly_arg(a, "f", ring), target, a.natural("box", 4, 1));
    Result r;
    r.payload = {{"found", res.found}, {"witness", res.witness ? json(res.witness->to_string()) : json(nullptr)}, {"box", res.box}};
    if (!res.found) {
        r.verdict = Verdict::inconclusive;
        r.warnings.push_back("no preimage supported in the box of radius " + std::to_string(res.box));
    }
    return r;
}

inline Result cmd_cech(const Args& a) {
    Ring ring = a.ring();
    Ideal quotient = detail::optional_ideal(a, "quotient", ring);
    auto gens = parse_poly_list(a.text("gens"), ring);
    auto strand = cech_strand(quotient, gens, a.integer_list("mu"));
    auto domain = ring->domain().is_field() ? ring->domain() : CoefficientDomain::rationals();
    Result r;
    r.payload = to_json(strand);
    bool complex = boundaries_compose_to_zero(strand, domain);
    bool euler = euler_characteristic_matches(strand);
    r.payload["d_squared_zero"] = complex;
    r.payload["euler_identity"] = euler;
    if (!complex || !euler) r.verdict = Verdict::fail;
    return r;
}

inline Result cmd_lc_search(const Args& a) {
    Ring ring = a.ring();
    Ideal quotient = detail::optional_ideal(a, "quotient", ring);
    std::vector<Polynomial> gens = a.has("gens") ? parse_poly_list(a.text("gens"), ring) : Ideal::variables(ring).generators();
    auto degree = static_cast<std::size_t>(a.natural("degree", 0, 0));
    auto box = static_cast<std::int64_t>(a.natural("box", 4, 1));
    auto mu = lc_nonvanishing_search(quotient, gens, degree, box);
    Result r;
    r.payload = {{"degree", degree}, {"box", box}, {"mu", mu ? json(*mu) : json(nullptr)}};
    if (!mu) {
        r.verdict = Verdict::inconclusive;
        r.warnings.push_back("no nonvanishing multidegree in the box (not a proof of vanishing)");
    }
    return r;
}

inline Result cmd_z_sets(const Args& a) {
    auto n = static_cast<std::size_t>(a.natural("n", 0, 1));
    auto i = static_cast<std::size_t>(a.natural("i", 0, 1));
    auto rep = z_sets_monomial(n, i, a.settings().groebner);
    json z1 = json::array(), z2 = json::array();
    for (auto p : rep.z1) z1.push_back(prime_name(p, n));
    for (auto p : rep.z2) z2.push_back(prime_name(p, n));
    Result r;
    r.payload = {{"n", n},
                 {"i", i},
                 {"z1", z1},
                 {"z2", z2},
                 {"z2_subset_z1", rep.z2_subset_z1},
                 {"z1_downward_closed", rep.z1_downward_closed},
                 {"z2_downward_closed", rep.z2_downward_closed}};
    if (!rep.z2_subset_z1 || !rep.z1_downward_closed || !rep.z2_downward_closed) r.verdict = Verdict::fail;
    return r;
}

/// x1, x2, x3 = y1y3, y2y4, y1y4 + y2y3 in k[y1..y4]: radical equals
/// (y1,y2) ∩ (y3,y4), so they are not part of a system of parameters, while
/// the local cohomology in degree 3 is the injective hull.
inline Result cmd_counterexample_224(const Args& a) {
    const bool perturbed = a.flag("perturb");
    Ring ring = parse_ring("QQ[y1,y2,y3,y4]");
    const auto& opt = a.settings().groebner;
    Ideal three = Ideal::parse(perturbed ? "y1*y3, y2*y4, y1*y4-y2*y3" : "y1*y3, y2*y4, y1*y4+y2*y3", ring);
    Ideal meet = ideal_intersect(Ideal::parse("y1,y2", ring), Ideal::parse("y3,y4", ring), opt);

    json checks = json::array();
    bool all = true;
    auto record = [&](const char* name, bool passed, json detail) {
        all = all && passed;
        checks.push_back({{"name", name}, {"passed", passed}, {"detail", std::move(detail)}});
    };
    bool equal = radical_eq(three, meet, opt);
    record("radical_equals_intersection", equal, {{"equal", equal}});
    bool sop = is_sop_part(Ideal(ring), three.generators(), opt);
    record("not_part_of_sop", !sop, {{"sop_part", sop}});
    int d_three = krull_dim(three, opt), d_meet = krull_dim(meet, opt);
    record("heights_two", d_three == 2 && d_meet == 2, {{"dim_three", d_three}, {"dim_intersection", d_meet}});
    auto strand = cech_strand(Ideal(ring), Ideal::parse("y1*y3, y1*y4, y2*y3, y2*y4", ring).generators(), {-1, -1, -1, -1});
    bool cech_ok = strand.cochain_dims == std::vector<std::size_t>{0, 0, 2, 4, 1} && strand.cohomology_dims[3] == 1 &&
                   strand.cohomology_dims[2] == 0 && strand.cohomology_dims[4] == 0;
    record("top_cohomology_degree_three", cech_ok, to_json(strand));

    Result r;
    r.payload = {{"perturbed", perturbed}, {"generators", to_string(three.generators())}, {"checks", checks}};
    if (perturbed) {
        // a perturbed run records its sub-verdicts without asserting them
        r.payload["matches_expectation"] = all;
        r.warnings.push_back("perturbed input: sub-verdicts recorded, not asserted");
    } else if (!all) {
        r.verdict = Verdict::fail;
        for (const auto& c : checks)
            if (!c["passed"].get<bool>()) r.warnings.push_back("failed step: " + c["name"].get<std::string>());
    }
    return r;
}

inline Result cmd_dualext_witness(const Args& a) {
    Ring ring = a.ring();
    std::string var = a.text_or("var", ring->name(ring->size() - 1));
    int index = ring->index_of(var);
    if (index < 0) throw UsageError("--var names no ring variable: " + var);
    Polynomial f = detail::poly_arg(a, "f", ring);
    auto w = dualext_witness(f, static_cast<std::size_t>(index), a.natural("degmax", 64, 1));
    Exponent deg = f.degree_in(static_cast<std::size_t>(index));
    Result r;
    r.payload = {{"f", to_string(f)},
                 {"variable", var},
                 {"exponent", w.exponent},
                 {"coefficient", to_string(w.coefficient)},
                 {"truncation", w.truncation}};
    if (deg + 2 <= 20) {
        r.payload["bound"] = factorial(deg + 2);
        if (w.exponent > factorial(deg + 2)) r.verdict = Verdict::fail;
    }
    return r;
}

namespace detail {

inline json corollary_case(const Ideal& quotient, std::int64_t box, const GroebnerOptions& opt, bool& found) {
    const Ring& ring = quotient.ring();
    int d = krull_dim(quotient, opt);
    json c{{"quotient", to_string(quotient.generators())}, {"dim", d}};
    if (d < 0) {
        c["mu"] = nullptr;
        found = false;
        return c;
    }
    auto mu = lc_nonvanishing_search(quotient, Ideal::variables(ring).generators(), static_cast<std::size_t>(d), box);
    c["mu"] = mu ? json(*mu) : json(nullptr);
    found = mu.has_value();
    return c;
}

} // namespace detail

/// Top local cohomology H^dim(R/J) at the maximal ideal is nonzero, found by
/// a multidegree search, either for --quotient or for a seeded random corpus
/// of squarefree monomial ideals.
inline Result cmd_corollary_241(const Args& a) {
    auto box = static_cast<std::int64_t>(a.natural("box", 4, 1));
    const auto& opt = a.settings().groebner;
    json cases = json::array();
    std::size_t misses = 0;
    if (a.has("quotient")) {
        Ring ring = a.ring();
        bool found = false;
        cases.push_back(detail::corollary_case(detail::ideal_arg(a, "quotient", ring), box, opt, found));
        misses += !found;
    } else {
        if (a.has("ring")) throw UsageError("--ring is only used together with --quotient");
        auto count = a.natural("count", 20, 1);
        for (std::uint64_t k = 0; k < count; ++k) {
            gen::Rng rng(gen::derive_seed(a.settings().seed, k));
            auto n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 6));
            std::vector<std::string> names;
            for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
            Ring ring = make_ring(names, CoefficientDomain::rationals());
            std::vector<Polynomial> gens;
            for (const auto& m : gen::random_squarefree_monomials(rng, n, 6)) gens.push_back(Polynomial::monomial(ring, m, 1));
            bool found = false;
            cases.push_back(detail::corollary_case(Ideal(ring, gens), box, opt, found));
            misses += !found;
        }
    }
    Result r;
    r.payload = {{"box", box}, {"cases", cases}, {"witnessed", cases.size() - misses}};
    if (misses > 0) {
        r.verdict = Verdict::inconclusive;
        r.warnings.push_back(std::to_string(misses) + " case(s) without a witness in the box");
    }
    return r;
}

} // namespace mlab::cli

#endif
