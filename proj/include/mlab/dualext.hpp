#ifndef MLAB_DUALEXT_HPP
#define MLAB_DUALEXT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/parse.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

/// Truncated element sum_k c_k x^-k of Hom_{R0}(R0[x], R0) = R0[[x^-1]], where
/// R0 is the polynomial ring on the remaining variables. Coefficients are
/// polynomials free of x.
struct DualSeries {
    Ring ring;
    std::size_t variable = 0;
    std::map<Exponent, Polynomial> terms;
    /// Coefficients are known exactly for every k <= truncation.
    Exponent truncation = 0;

    std::string to_string() const {
        std::vector<FormattedTerm> out;
        const std::string& x = ring->name(variable);
        for (const auto& [k, c] : terms) {
            FormattedTerm t;
            std::string coeff = mlab::to_string(c);
            if (c.size() == 1 && c.is_constant()) {
                t.negative = c.terms().front().coefficient < 0;
                Rational mag = abs(c.terms().front().coefficient);
                t.coefficient = mag == 1 ? "" : mag.get_str();
            } else {
                t.coefficient = "(" + coeff + ")";
            }
            t.monomial = k == 0 ? "" : x + "^-" + std::to_string(k);
            out.push_back(std::move(t));
        }
        return join_terms(out);
    }
};

/// {0} together with k! for k >= 1, up to `limit`: the exponents of h'.
inline std::vector<Exponent> hprime_exponents(Exponent limit) {
    std::vector<Exponent> out{0};
    for (Exponent k = 1; k <= 20 && factorial(k) <= limit; ++k)
        if (factorial(k) != out.back()) out.push_back(factorial(k));
    return out;
}

/// h' = 1 + x^-1! + x^-2! + ..., truncated at degree `truncation`.
inline DualSeries hprime_tower(const Ring& ring, std::size_t variable, Exponent truncation) {
    if (variable >= ring->size()) throw InvalidArgument("distinguished variable out of range");
    if (truncation < 1) throw InvalidArgument("truncation must be >= 1");
    DualSeries h{ring, variable, {}, truncation};
    for (Exponent k : hprime_exponents(truncation)) h.terms.emplace(k, Polynomial::constant(ring, 1));
    return h;
}

/// f . s for f in R0[x]: x^a . x^-k = x^-(k-a) when k >= a, coefficients multiplied in R0.
/// The result is exact up to s.truncation - deg_x f.
inline DualSeries dual_act(const Polynomial& f, const DualSeries& s) {
    if (!same_ring(f.ring(), s.ring)) throw ContextMismatch("polynomial and series live in different rings");
    const Exponent deg = f.is_zero() ? 0 : f.degree_in(s.variable);
    DualSeries r{s.ring, s.variable, {}, s.truncation >= deg ? s.truncation - deg : 0};
    for (const auto& t : f.terms()) {
        Exponent a = t.monomial[s.variable];
        Monomial rest = t.monomial;
        rest[s.variable] = 0;
        for (const auto& [k, c] : s.terms) {
            if (k < a || k - a > r.truncation) continue;
            Polynomial term = c.times_term(rest, t.coefficient);
            auto [it, inserted] = r.terms.emplace(k - a, term);
            if (!inserted) it->second += term;
        }
    }
    std::erase_if(r.terms, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

struct DualextWitness {
    /// Smallest k with a nonzero coefficient of x^-k in f . h'.
    Exponent exponent = 0;
    Polynomial coefficient;
    /// Truncation of h' that exposed the witness.
    Exponent truncation = 0;
};

inline constexpr Exponent dualext_truncation_cap = 40'000'000;

/// Nonzero coefficient of f . h' with the smallest inverse exponent. The
/// truncation doubles until a nonzero coefficient becomes visible.
inline DualextWitness dualext_witness(const Polynomial& f, std::size_t variable, Exponent truncation = 64) {
    if (f.is_zero()) throw InvalidArgument("the zero polynomial annihilates h'");
    if (variable >= f.ring()->size()) throw InvalidArgument("distinguished variable out of range");
    const Exponent deg = f.degree_in(variable);
    Exponent t = std::max<Exponent>(truncation, deg + 1);
    for (;;) {
        auto image = dual_act(f, hprime_tower(f.ring(), variable, t));
        if (!image.terms.empty()) {
            const auto& [k, c] = *image.terms.begin();
            return {k, c, t};
        }
        if (t >= dualext_truncation_cap) throw ResourceBound("no nonzero coefficient of f . h' below the truncation cap");
        t = std::min(t * 2, dualext_truncation_cap);
    }
}

} // namespace mlab

#endif
