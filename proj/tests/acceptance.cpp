// Acceptance gate: runs each criterion once and prints one PASS/FAIL line.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mlab/mlab.hpp"
#include "mlab/testing/oracles.hpp"
#include "mlab/testing/random.hpp"

using namespace mlab;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
    std::string note; // printed on success

    void require(bool condition, const std::string& what) {
        if (!condition && passed) {
            passed = false;
            detail = what;
        }
    }
};

Ring ring_of(std::size_t n, CoefficientDomain domain = CoefficientDomain::rationals()) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
    return make_ring(names, domain);
}

Polynomial P(const char* text, const Ring& ring) { return parse_poly(text, ring); }

const std::vector<std::pair<std::size_t, std::size_t>> witness_shapes{{2, 1}, {3, 1}, {3, 2}, {4, 2}};

// 200 random nonzero f of degree <= 3 against one tower; every search must
// end with a witness at level <= 12 inside the predicted bound.
template <class C>
void witness_totality(const DualTower<C>& tower, std::uint64_t seed, Outcome& out) {
    gen::Rng rng(seed);
    for (int s = 0; s < 200 && out.passed; ++s) {
        auto f = gen::random_nonzero_polynomial(rng, tower.ring(), 3, 4);
        auto rep = annihilator_witness(tower, f, 12);
        std::string label = std::string(variant_name(tower.variant())) + " f = " + to_string(f);
        out.require(rep.found(), "inconclusive: " + label);
        out.require(!rep.found() || (rep.bound && *rep.witness_level <= *rep.bound + 1), "above bound: " + label);
        out.require(rep.image_compatible, "image incompatible: " + label);
    }
}

Outcome witness_totality_equichar() {
    Outcome out;
    std::uint64_t seed = 1001;
    for (auto domain : {CoefficientDomain::prime_field(101), CoefficientDomain::rationals()})
        for (auto [n, i] : witness_shapes) witness_totality(alpha_equichar(ring_of(n, domain), i, 2), seed++, out);
    return out;
}

Outcome exact_witness_trace() {
    Outcome out;
    Ring r = ring_of(2);
    Polynomial f = P("x1 - x2", r);
    auto tower = alpha_equichar(r, 1, 4);
    out.require(inverse_act(f, tower.entry(2)).is_zero(), "f . entry_2 != 0");
    out.require(inverse_act(f, tower.entry(3)).is_zero(), "f . entry_3 != 0");
    auto e4 = inverse_act(f, tower.entry(4));
    out.require(e4.to_string() == "x2^-2 - x2^-5", "f . entry_4 = " + e4.to_string());
    auto rep = annihilator_witness(tower, f, 12);
    out.require(rep.witness_level && *rep.witness_level == 4, "witness level is not 4");
    out.require(rep.bound && *rep.bound == 3 && *rep.witness_level == *rep.bound + 1,
                "witness level is not entry index m+1 for m = 3");
    return out;
}

Outcome witness_totality_mixed() {
    Outcome out;
    std::uint64_t seed = 2001;
    for (std::uint64_t p : {2u, 5u})
        for (auto [n, i] : witness_shapes) {
            Ring r = ring_of(n, CoefficientDomain::p_integral(p));
            witness_totality(alpha_mixed(r, i, p, 2), seed++, out);
            witness_totality(alpha_mixed_p_in_ideal(r, i, p, 2), seed++, out);
            auto tower = alpha_mixed_p_in_ideal(r, i, p, 8);
            Polynomial multiplier = Polynomial::constant(r, Rational(static_cast<long>(p)));
            for (std::size_t v = 0; v < i; ++v) multiplier *= Polynomial::variable(r, v);
            out.require(tower.multiplier() == multiplier, "unexpected multiplier " + to_string(tower.multiplier()));
            auto check = tower_check(tower, 8);
            out.require(check.passed && !check.vacuous, "p-in-ideal tower fails tower_check: " + check.reason);
        }
    return out;
}

Outcome binomial_pipeline() {
    Outcome out;
    Ring r = make_ring({"y1", "y2", "y3", "y4"}, CoefficientDomain::rationals());
    auto three = parse_poly_list("y1*y3, y2*y4, y1*y4+y2*y3", r);
    Ideal left(r, three);
    Ideal right = ideal_intersect(Ideal::parse("y1, y2", r), Ideal::parse("y3, y4", r));
    out.require(radical_eq(left, right), "radicals differ");
    out.require(!is_sop_part(Ideal(r, {}), three), "three binomials reported as part of a system of parameters");
    auto strand = cech_strand(Ideal(r, {}), parse_poly_list("y1*y3, y1*y4, y2*y3, y2*y4", r), {-1, -1, -1, -1});
    out.require(strand.cochain_dims == std::vector<std::size_t>{0, 0, 2, 4, 1}, "cochain dims differ");
    out.require(strand.cohomology_dims[2] == 0 && strand.cohomology_dims[3] == 1 && strand.cohomology_dims[4] == 0,
                "cohomology dims differ");
    return out;
}

Outcome variable_prime_cross_check() {
    Outcome out;
    Ring r = ring_of(4);
    int nonzero = 0;
    for (const char* x : {"x1", "x1*x2", "x1+x2"}) {
        Polynomial f = P(x, r);
        for (std::uint32_t mask = 0; mask < 16; ++mask) {
            std::vector<Polynomial> gens;
            for (std::size_t v = 0; v < 4; ++v)
                if ((mask >> v) & 1) gens.push_back(Polynomial::variable(r, v));
            Ideal prime(r, gens);
            bool cohomology_nonzero = !radical_member(f, prime);
            nonzero += cohomology_nonzero;
            out.require(cohomology_nonzero == is_sop_part(prime, {f}),
                        std::string("disagreement for x = ") + x + " at prime mask " + std::to_string(mask));
        }
    }
    out.note = std::to_string(nonzero) + " of 48 pairs with nonzero H^1";
    return out;
}

Outcome top_cohomology_nonvanishing() {
    Outcome out;
    for (std::uint64_t k = 0; k < 20; ++k) {
        gen::Rng rng(gen::derive_seed(241, k));
        auto n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 6));
        Ring r = ring_of(n);
        std::vector<Polynomial> gens;
        for (const auto& m : gen::random_squarefree_monomials(rng, n, 6)) gens.push_back(Polynomial::monomial(r, m, 1));
        Ideal j(r, gens);
        std::vector<Polynomial> variables;
        for (std::size_t v = 0; v < n; ++v) variables.push_back(Polynomial::variable(r, v));
        int d = krull_dim(j);
        auto mu = lc_nonvanishing_search(j, variables, static_cast<std::size_t>(d), 1);
        out.require(mu.has_value(), "no witness for J = " + j.to_string());
    }
    return out;
}

Outcome dualext_witnesses() {
    Outcome out;
    Ring x = make_ring({"x"}, CoefficientDomain::rationals());
    auto w = dualext_witness(P("x - 1", x), 0);
    out.require(w.exponent == 2 && w.coefficient == Polynomial::constant(x, -1), "x - 1 gives exponent " + std::to_string(w.exponent));
    Ring r = make_ring({"y", "x"}, CoefficientDomain::rationals());
    gen::Rng rng(2302);
    for (int s = 0; s < 100 && out.passed; ++s) {
        auto f = gen::random_nonzero_polynomial(rng, r, 5, 5);
        auto got = dualext_witness(f, 1);
        Exponent deg = f.total_degree();
        out.require(!got.coefficient.is_zero(), "zero witness coefficient for " + to_string(f));
        out.require(got.exponent <= factorial(deg + 2), "exponent above (deg f + 2)! for " + to_string(f));
        auto brute = oracle::dualext_first_nonzero(f, 1, factorial(deg + 2) + deg + 1);
        out.require(brute && brute->first == got.exponent && brute->second == got.coefficient,
                    "oracle disagrees for " + to_string(f));
    }
    return out;
}

Outcome complete_intersection_equivalence() {
    Outcome out;
    Ring r = ring_of(3);
    Ideal maximal = Ideal::parse("x1, x2, x3", r);
    gen::Rng rng(3003);
    int regular_count = 0;
    for (int s = 0; s < 50; ++s) {
        std::vector<Polynomial> fs;
        while (fs.size() < 3) {
            auto f = gen::random_homogeneous(rng, r, gen::uniform_int(rng, 1, 2), 4);
            if (!f.is_zero()) fs.push_back(f);
        }
        bool radical = radical_eq(Ideal(r, fs), maximal);
        bool regular = is_regular_sequence(fs, Ideal(r, {}));
        regular_count += regular;
        out.require(radical == regular, "disagreement for " + to_string(fs));
    }
    out.note = std::to_string(regular_count) + " of 50 triples regular";
    return out;
}

Outcome membership_oracle_equivalence() {
    Outcome out;
    gen::Rng rng(4004);
    int members = 0;
    for (int s = 0; s < 50; ++s) {
        Ring r = ring_of(static_cast<std::size_t>(gen::uniform_int(rng, 1, 3)));
        std::vector<Polynomial> gens;
        auto count = gen::uniform_int(rng, 1, 3);
        for (std::int64_t k = 0; k < count; ++k) gens.push_back(gen::random_nonzero_polynomial(rng, r, 3, 3, 3));
        Polynomial f = gen::random_polynomial(rng, r, 3, 3, 3);
        if (s % 2 == 0) {
            f = Polynomial(r);
            for (const auto& g : gens) f += g * gen::random_polynomial(rng, r, 1, 2, 3);
        }
        Ideal ideal(r, gens);
        members += ideal_member(f, ideal);
        out.require(ideal_member(f, ideal) == oracle::member_by_linear_algebra(f, gens, 6),
                    "membership disagrees for f = " + to_string(f) + " in " + ideal.to_string());
        for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex()})
            out.require(verify_groebner(groebner_basis(ideal, order)), "basis fails certificate for " + ideal.to_string());
    }
    out.note = std::to_string(members) + " of 50 instances are members";
    return out;
}

Outcome monomial_prime_sets() {
    Outcome out;
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t i = 1; i + 1 <= n; ++i) {
            auto rep = z_sets_monomial(n, i);
            std::string at = " at (n, i) = (" + std::to_string(n) + ", " + std::to_string(i) + ")";
            out.require(rep.z2_subset_z1, "Z2 not inside Z1" + at);
            out.require(rep.z1_downward_closed && rep.z2_downward_closed, "not downward closed" + at);
        }
    return out;
}

struct Criterion {
    int number;
    const char* name;
    double time_limit_s; // 0 means no runtime requirement
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "witness totality, equichar towers over F101 and QQ", 60, witness_totality_equichar},
        {2, "exact witness trace for x1 - x2", 0, exact_witness_trace},
        {3, "witness totality and p-in-ideal tower check, p in {2, 5}", 0, witness_totality_mixed},
        {4, "binomial radical, sop and Cech pipeline", 10, binomial_pipeline},
        {5, "H^1 nonvanishing agrees with sop predicate on variable primes", 0, variable_prime_cross_check},
        {6, "top local cohomology witnesses for 20 monomial quotients", 120, top_cohomology_nonvanishing},
        {7, "dual extension witnesses against truncation oracle", 0, dualext_witnesses},
        {8, "radical of (x1,x2,x3) iff regular sequence, 50 triples", 0, complete_intersection_equivalence},
        {9, "membership agrees with linear algebra oracle, certified bases", 0, membership_oracle_equivalence},
        {10, "Z2 inside Z1 and downward closure for n <= 5", 0, monomial_prime_sets},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.passed = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0 && seconds >= c.time_limit_s && out.passed) {
            out.passed = false;
            out.detail = "runtime limit of " + std::to_string(static_cast<int>(c.time_limit_s)) + " s exceeded";
        }
        failures += !out.passed;
        std::printf("%s  criterion %2d: %s (%.2f s)%s%s\n", out.passed ? "PASS" : "FAIL", c.number, c.name, seconds,
                    out.passed ? (out.note.empty() ? "" : ", ") : ": ", out.passed ? out.note.c_str() : out.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
