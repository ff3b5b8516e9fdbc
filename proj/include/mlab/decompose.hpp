#ifndef MLAB_DECOMPOSE_HPP
#define MLAB_DECOMPOSE_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

/// Splitting of a polynomial around a componentwise-minimal head exponent:
///
///   normalized = sum_j x_j^(a+1) * heads[j] + (x_1 ... x_i)^a * tail
///
/// where `tail` only involves x_(i+1) .. x_n and `normalized` is the input
/// multiplied by the monomial that makes the chosen head tuple constant.
struct MinSupportDecomposition {
    std::size_t head_count = 0;
    Exponent a = 0;
    Polynomial normalized;
    std::vector<Polynomial> heads;
    Polynomial tail;
    /// Componentwise-minimal tail exponent of `tail` (length n - head_count).
    std::vector<Exponent> b;
    /// Coefficient of `tail` at x^b.
    Rational tail_coefficient;

    Polynomial reassemble() const {
        const Ring& ring = normalized.ring();
        const std::size_t n = ring->size();
        Polynomial sum(ring);
        for (std::size_t j = 0; j < head_count; ++j)
            sum += heads[j].times_term(Monomial::variable(n, j, a + 1), 1);
        Monomial shift(n);
        for (std::size_t j = 0; j < head_count; ++j) shift[j] = a;
        return sum + tail.times_term(shift, 1);
    }
};

/// Picks the lexicographically smallest head tuple (it is componentwise minimal),
/// normalizes it to (a, ..., a) with a = its largest entry, and splits the terms.
inline MinSupportDecomposition min_support_decompose(const Polynomial& f, std::size_t head_count) {
    const Ring& ring = f.ring();
    const std::size_t n = ring->size();
    if (f.is_zero()) throw InvalidArgument("cannot decompose the zero polynomial");
    if (head_count < 1 || head_count >= n) throw InvalidArgument("head count must satisfy 1 <= i < n");

    auto head_of = [&](const Monomial& m) {
        return std::vector<Exponent>(m.exponents().begin(), m.exponents().begin() + static_cast<std::ptrdiff_t>(head_count));
    };
    std::vector<Exponent> chosen = head_of(f.terms().front().monomial);
    for (const auto& t : f.terms()) chosen = std::min(chosen, head_of(t.monomial));

    const Exponent a = *std::max_element(chosen.begin(), chosen.end());
    Monomial lift(n);
    for (std::size_t j = 0; j < head_count; ++j) lift[j] = a - chosen[j];

    MinSupportDecomposition d{head_count, a, f.times_term(lift, 1), {}, Polynomial(ring), {}, 0};
    std::vector<std::vector<Term>> head_terms(head_count);
    std::vector<Term> tail_terms;
    for (const auto& t : d.normalized.terms()) {
        std::size_t j = 0;
        while (j < head_count && t.monomial[j] < a + 1) ++j;
        if (j < head_count) {
            Monomial m = t.monomial;
            m[j] -= a + 1;
            head_terms[j].push_back({std::move(m), t.coefficient});
        } else {
            // every head coordinate <= a; minimality forces exactly (a, ..., a)
            Monomial m = t.monomial;
            for (std::size_t k = 0; k < head_count; ++k) m[k] = 0;
            tail_terms.push_back({std::move(m), t.coefficient});
        }
    }
    for (auto& ht : head_terms) d.heads.push_back(Polynomial::from_terms(ring, std::move(ht)));
    d.tail = Polynomial::from_terms(ring, std::move(tail_terms));

    const Term* smallest = &d.tail.terms().front();
    for (const auto& t : d.tail.terms())
        if (t.monomial < smallest->monomial) smallest = &t;
    d.b.assign(smallest->monomial.exponents().begin() + static_cast<std::ptrdiff_t>(head_count),
               smallest->monomial.exponents().end());
    d.tail_coefficient = smallest->coefficient;
    return d;
}

/// Smallest m such that, with s = m - a, the tail term of the decomposition
/// survives contraction against the level-(m+1) tower group of exponent s!:
/// s! >= b_k for every k and s! - b_j > (s-1)! for the smallest b_j.
/// Nothing at head exponent zero can cancel it from the other groups.
inline Exponent witness_level_bound(const MinSupportDecomposition& d) {
    Exponent b_min = d.b.empty() ? 0 : *std::min_element(d.b.begin(), d.b.end());
    Exponent b_max = d.b.empty() ? 0 : *std::max_element(d.b.begin(), d.b.end());
    for (Exponent s = 2;; ++s) {
        Exponent big = factorial(s);
        Exponent small = factorial(s - 1);
        if (big >= b_max && big - b_min > small) return checked_add(d.a, s);
    }
}

} // namespace mlab

#endif
