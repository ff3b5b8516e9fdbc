#ifndef MLAB_CECH_HPP
#define MLAB_CECH_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/groebner.hpp"
#include "mlab/linalg.hpp"

namespace mlab {

inline constexpr std::size_t max_cech_generators = 12;

/// Degree-mu slice of the Cech complex of R/J on monomials g_1..g_s:
/// C^t = sum over t-subsets S of (R/J)_{g_S}, each contributing dimension 0 or 1.
struct CechStrand {
    std::vector<Monomial> quotient;   // generators of J
    std::vector<Monomial> generators; // g_1..g_s
    std::vector<std::int64_t> mu;
    std::vector<std::size_t> cochain_dims;
    std::vector<std::size_t> cohomology_dims;
    /// ranks[t] = rank of d^t : C^t -> C^(t+1).
    std::vector<std::size_t> ranks;
    /// basis[t] = generator subsets (bit masks) spanning C^t.
    std::vector<std::vector<std::uint32_t>> basis;
    /// boundary[t] has one sparse row per basis element of C^(t+1), columns index C^t.
    std::vector<std::vector<SparseRow>> boundary;
};

namespace detail {

inline bool monomial_in(const std::vector<Exponent>& m, const std::vector<Monomial>& ideal) {
    for (const auto& g : ideal) {
        bool divides = true;
        for (std::size_t v = 0; v < m.size() && divides; ++v)
            if (g[v] > m[v]) divides = false;
        if (divides) return true;
    }
    return false;
}

} // namespace detail

/// Cohomology of the degree-mu strand. A localization (R/J)_{g_S} has a
/// nonzero degree-mu piece iff every negative coordinate of mu lies in the
/// variable support of g_S and the monomial with supported coordinates pushed
/// to the saturation cap (others equal to mu) avoids J.
inline CechStrand cech_strand(const std::vector<Monomial>& quotient, const std::vector<Monomial>& generators,
                              const std::vector<std::int64_t>& mu, const CoefficientDomain& domain) {
    const std::size_t n = mu.size();
    const std::size_t s = generators.size();
    if (s > max_cech_generators) throw InvalidArgument("at most 12 Cech generators supported");
    for (const auto& g : generators)
        if (g.size() != n) throw ContextMismatch("generator length differs from multidegree length");
    for (const auto& g : quotient)
        if (g.size() != n) throw ContextMismatch("quotient generator length differs from multidegree length");

    Exponent max_gen = 0;
    for (const auto& g : quotient)
        for (std::size_t v = 0; v < n; ++v) max_gen = std::max(max_gen, g[v]);
    std::uint64_t max_mu = 0;
    for (auto x : mu) max_mu = std::max<std::uint64_t>(max_mu, static_cast<std::uint64_t>(std::llabs(x)));
    if (max_gen > (Exponent{1} << 62) || max_mu > (std::uint64_t{1} << 62)) throw ResourceBound("saturation cap overflow");
    const Exponent cap = max_gen + max_mu + 1;

    std::vector<std::uint32_t> subset_support(std::size_t{1} << s, 0);
    for (std::uint32_t S = 1; S < subset_support.size(); ++S) {
        std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(S));
        subset_support[S] = subset_support[S & (S - 1)] | generators[low].support();
    }
    std::uint32_t negative = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (mu[v] < 0) negative |= (std::uint32_t{1} << v);

    auto alive = [&](std::uint32_t S) {
        std::uint32_t sup = subset_support[S];
        if ((negative & ~sup) != 0) return false;
        std::vector<Exponent> test(n);
        for (std::size_t v = 0; v < n; ++v) test[v] = ((sup >> v) & 1) ? cap : static_cast<Exponent>(mu[v]);
        return !detail::monomial_in(test, quotient);
    };

    CechStrand strand{quotient, generators, mu, {}, {}, {}, {}, {}};
    strand.basis.assign(s + 1, {});
    for (std::uint32_t S = 0; S < (std::uint32_t{1} << s); ++S)
        if (alive(S)) strand.basis[static_cast<std::size_t>(std::popcount(S))].push_back(S);
    for (const auto& b : strand.basis) strand.cochain_dims.push_back(b.size());

    for (std::size_t t = 0; t < s; ++t) {
        const auto& src = strand.basis[t];
        const auto& dst = strand.basis[t + 1];
        std::vector<SparseRow> rows;
        rows.reserve(dst.size());
        for (std::uint32_t T : dst) {
            SparseRow row;
            for (std::size_t c = 0; c < src.size(); ++c) {
                std::uint32_t S = src[c];
                if ((S & ~T) != 0) continue;
                std::uint32_t added = T & ~S;
                int below = std::popcount(S & (added - 1));
                row.emplace_back(c, Rational(below % 2 ? -1 : 1));
            }
            rows.push_back(std::move(row));
        }
        strand.ranks.push_back(matrix_rank(rows, domain));
        strand.boundary.push_back(std::move(rows));
    }
    for (std::size_t t = 0; t <= s; ++t) {
        std::size_t in = t > 0 ? strand.ranks[t - 1] : 0;
        std::size_t out = t < s ? strand.ranks[t] : 0;
        strand.cohomology_dims.push_back(strand.cochain_dims[t] - in - out);
    }
    return strand;
}

namespace detail {

inline std::vector<Monomial> monomials_of(const std::vector<Polynomial>& polys, const char* what) {
    std::vector<Monomial> out;
    for (const auto& p : polys) {
        if (p.size() != 1) throw InvalidArgument(std::string(what) + " must be monomials");
        out.push_back(p.leading().monomial);
    }
    return out;
}

} // namespace detail

/// Ideal-level entry point; J and the generators must be monomial.
inline CechStrand cech_strand(const Ideal& quotient, const std::vector<Polynomial>& generators,
                              const std::vector<std::int64_t>& mu) {
    if (mu.size() != quotient.ring()->size()) throw ContextMismatch("multidegree length differs from ring size");
    for (const auto& g : generators)
        if (!same_ring(g.ring(), quotient.ring())) throw ContextMismatch("generator lives in a different ring");
    auto domain = quotient.ring()->domain().is_field() ? quotient.ring()->domain() : CoefficientDomain::rationals();
    return cech_strand(detail::monomials_of(quotient.generators(), "quotient generators"),
                       detail::monomials_of(generators, "Cech generators"), mu, domain);
}

/// d^(t+1) o d^t == 0 for every t, by explicit sparse matrix multiplication.
inline bool boundaries_compose_to_zero(const CechStrand& strand, const CoefficientDomain& domain) {
    for (std::size_t t = 0; t + 1 < strand.boundary.size(); ++t) {
        const auto& first = strand.boundary[t];      // rows: C^(t+1), cols: C^t
        const auto& second = strand.boundary[t + 1]; // rows: C^(t+2), cols: C^(t+1)
        for (const auto& row : second) {
            std::vector<Rational> acc(strand.basis[t].size(), 0);
            for (const auto& [mid, v] : row)
                for (const auto& [col, w] : first[mid]) acc[col] += v * w;
            for (auto& x : acc) {
                domain.normalize(x);
                if (x != 0) return false;
            }
        }
    }
    return true;
}

/// Euler characteristic of cochains equals that of cohomology.
inline bool euler_characteristic_matches(const CechStrand& strand) {
    long long cochains = 0, cohomology = 0;
    for (std::size_t t = 0; t < strand.cochain_dims.size(); ++t) {
        long long sign = t % 2 ? -1 : 1;
        cochains += sign * static_cast<long long>(strand.cochain_dims[t]);
        cohomology += sign * static_cast<long long>(strand.cohomology_dims[t]);
    }
    return cochains == cohomology;
}

/// First multidegree in [-box, 0]^n (lexicographic, most negative first)
/// whose strand has H^degree != 0. nullopt means no witness in the box.
inline std::optional<std::vector<std::int64_t>> lc_nonvanishing_search(const std::vector<Monomial>& quotient,
                                                                       const std::vector<Monomial>& generators,
                                                                       std::size_t degree, std::size_t n,
                                                                       std::int64_t box,
                                                                       const CoefficientDomain& domain) {
    if (box < 1) throw InvalidArgument("box radius must be >= 1");
    if (degree > generators.size()) return std::nullopt;
    std::vector<std::int64_t> mu(n, -box);
    for (;;) {
        auto strand = cech_strand(quotient, generators, mu, domain);
        if (strand.cohomology_dims[degree] > 0) return mu;
        std::size_t j = n;
        while (j > 0 && mu[j - 1] == 0) mu[--j] = -box;
        if (j == 0) return std::nullopt;
        ++mu[j - 1];
    }
}

inline std::optional<std::vector<std::int64_t>> lc_nonvanishing_search(const Ideal& quotient,
                                                                       const std::vector<Polynomial>& generators,
                                                                       std::size_t degree, std::int64_t box) {
    auto domain = quotient.ring()->domain().is_field() ? quotient.ring()->domain() : CoefficientDomain::rationals();
    return lc_nonvanishing_search(detail::monomials_of(quotient.generators(), "quotient generators"),
                                  detail::monomials_of(generators, "Cech generators"), degree,
                                  quotient.ring()->size(), box, domain);
}

/// Membership of the variable-generated primes of k[x1..xn] in
///   Z1 = { p : H^i_{(x1..xi)}(R/p) != 0 }  (Cech box search, box 1)
///   Z2 = { p : x1..xi is part of a system of parameters of R/p }
/// together with Z2 ⊆ Z1 and downward closure of both sets under inclusion
/// of generator sets (the finite-poset form of property (O)).
struct ZSetsReport {
    std::size_t n = 0;
    std::size_t i = 0;
    /// Primes as bit masks of their generating variables.
    std::vector<std::uint32_t> z1;
    std::vector<std::uint32_t> z2;
    bool z2_subset_z1 = false;
    bool z1_downward_closed = false;
    bool z2_downward_closed = false;
};

inline ZSetsReport z_sets_monomial(std::size_t n, std::size_t i, const GroebnerOptions& options = {}) {
    if (n < 1 || n > 6 || i < 1 || i > n) throw InvalidArgument("z-sets need 1 <= i <= n <= 6");
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
    Ring ring = make_ring(names, CoefficientDomain::rationals());
    std::vector<Polynomial> params;
    std::vector<Monomial> param_monomials;
    for (std::size_t v = 0; v < i; ++v) {
        params.push_back(Polynomial::variable(ring, v));
        param_monomials.push_back(Monomial::variable(n, v));
    }

    ZSetsReport report;
    report.n = n;
    report.i = i;
    const std::uint32_t count = std::uint32_t{1} << n;
    std::vector<bool> in1(count), in2(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        std::vector<Monomial> prime_monomials;
        std::vector<Polynomial> prime_gens;
        for (std::size_t v = 0; v < n; ++v)
            if ((mask >> v) & 1) {
                prime_monomials.push_back(Monomial::variable(n, v));
                prime_gens.push_back(Polynomial::variable(ring, v));
            }
        in1[mask] = lc_nonvanishing_search(prime_monomials, param_monomials, i, n, 1, ring->domain()).has_value();
        in2[mask] = is_sop_part(Ideal(ring, prime_gens), params, options);
        if (in1[mask]) report.z1.push_back(mask);
        if (in2[mask]) report.z2.push_back(mask);
    }
    auto downward_closed = [&](const std::vector<bool>& in) {
        for (std::uint32_t p = 0; p < count; ++p) {
            if (!in[p]) continue;
            for (std::uint32_t q = p;; q = (q - 1) & p) {
                if (!in[q]) return false;
                if (q == 0) break;
            }
        }
        return true;
    };
    report.z2_subset_z1 = true;
    for (std::uint32_t p = 0; p < count; ++p)
        if (in2[p] && !in1[p]) report.z2_subset_z1 = false;
    report.z1_downward_closed = downward_closed(in1);
    report.z2_downward_closed = downward_closed(in2);
    return report;
}

} // namespace mlab

#endif
