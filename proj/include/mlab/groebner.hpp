#ifndef MLAB_GROEBNER_HPP
#define MLAB_GROEBNER_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/parse.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

inline constexpr std::uint64_t default_step_cap = 1'000'000;

struct GroebnerOptions {
    std::uint64_t step_cap = default_step_cap;
};

class GroebnerBasis;

/// Finitely generated ideal. Zero generators are dropped, so the zero ideal
/// has an empty generator list.
class Ideal {
public:
    explicit Ideal(Ring ring) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {}

    Ideal(Ring ring, std::vector<Polynomial> gens) : Ideal(std::move(ring)) {
        for (auto& g : gens) {
            if (!same_ring(g.ring(), ring_)) throw ContextMismatch("generator lives in a different ring");
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }

    static Ideal parse(std::string_view text, const Ring& ring) { return Ideal(ring, parse_poly_list(text, ring)); }

    /// The ideal (x1, ..., xn).
    static Ideal variables(const Ring& ring) {
        std::vector<Polynomial> g;
        for (std::size_t i = 0; i < ring->size(); ++i) g.push_back(Polynomial::variable(ring, i));
        return Ideal(ring, std::move(g));
    }

    const Ring& ring() const noexcept { return ring_; }
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }
    bool is_zero() const noexcept { return gens_.empty(); }

    bool is_homogeneous() const {
        return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
    }

    friend Ideal operator+(const Ideal& a, const Ideal& b) {
        if (!same_ring(a.ring_, b.ring_)) throw ContextMismatch("ideals live in different rings");
        std::vector<Polynomial> g = a.gens_;
        g.insert(g.end(), b.gens_.begin(), b.gens_.end());
        return Ideal(a.ring_, std::move(g));
    }

    Ideal with(std::vector<Polynomial> extra) const {
        std::vector<Polynomial> g = gens_;
        for (auto& e : extra) g.push_back(std::move(e));
        return Ideal(ring_, std::move(g));
    }

    std::string to_string() const { return "(" + mlab::to_string(gens_) + ")"; }

private:
    friend GroebnerBasis groebner_basis(const Ideal&, MonomialOrder, const GroebnerOptions&);

    struct Cache {
        std::mutex mutex;
        std::map<std::string, std::shared_ptr<const GroebnerBasis>> by_order;
    };

    Ring ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis: monic, auto-reduced, sorted by leading monomial
/// (largest first). Basis elements live in `ring()`, which carries the order
/// and is the ideal's ring over QQ when the ideal's domain is not a field.
class GroebnerBasis {
public:
    GroebnerBasis(Ideal ideal, Ring ring, std::vector<Polynomial> basis, std::uint64_t steps)
        : ideal_(std::move(ideal)), ring_(std::move(ring)), basis_(std::move(basis)), steps_(steps) {}

    const Ideal& ideal() const noexcept { return ideal_; }
    const Ring& ring() const noexcept { return ring_; }
    const MonomialOrder& order() const noexcept { return ring_->order(); }
    const std::vector<Polynomial>& basis() const noexcept { return basis_; }
    std::uint64_t steps() const noexcept { return steps_; }

    std::vector<Monomial> initial_ideal() const {
        std::vector<Monomial> lm;
        for (const auto& g : basis_) lm.push_back(g.leading().monomial);
        return lm;
    }

    bool is_unit_ideal() const { return basis_.size() == 1 && basis_[0].is_constant(); }

    /// Converts f into the basis ring (same variables).
    Polynomial import(const Polynomial& f) const {
        if (f.ring()->names() != ring_->names()) throw ContextMismatch("polynomial and basis live in different rings");
        return f.in_ring(ring_);
    }

private:
    Ideal ideal_;
    Ring ring_;
    std::vector<Polynomial> basis_;
    std::uint64_t steps_;
};

namespace detail {

/// Ring used for Groebner computations: same variables, the requested order,
/// and QQ in place of a non-field domain.
inline Ring computation_ring(const Ring& r, MonomialOrder order) {
    auto domain = r->domain().is_field() ? r->domain() : CoefficientDomain::rationals();
    if (r->order() == order && r->domain() == domain) return r;
    return make_ring(r->names(), domain, order);
}

class StepCounter {
public:
    explicit StepCounter(std::uint64_t cap) : cap_(cap) {}
    void tick() {
        if (++steps_ > cap_) throw ResourceBound("Groebner step cap of " + std::to_string(cap_) + " exceeded");
    }
    std::uint64_t steps() const noexcept { return steps_; }

private:
    std::uint64_t cap_;
    std::uint64_t steps_ = 0;
};

/// Full reduction of f modulo the polynomials in `divisors` (field domain).
inline Polynomial reduce_full(const Polynomial& f, const std::vector<Polynomial>& divisors, StepCounter& counter) {
    const auto& dom = f.ring()->domain();
    Polynomial rest = f;
    std::vector<Term> remainder;
    while (!rest.is_zero()) {
        const Term lt = rest.leading();
        const Polynomial* hit = nullptr;
        for (const auto& g : divisors)
            if (g.leading().monomial.divides(lt.monomial)) {
                hit = &g;
                break;
            }
        if (!hit) {
            remainder.push_back(lt);
            rest -= Polynomial::monomial(f.ring(), lt.monomial, lt.coefficient);
            continue;
        }
        counter.tick();
        Rational c = lt.coefficient * dom.inverse(hit->leading().coefficient);
        rest -= hit->times_term(lt.monomial / hit->leading().monomial, c);
    }
    return Polynomial::from_terms(f.ring(), std::move(remainder));
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const auto& dom = f.ring()->domain();
    const Term& a = f.leading();
    const Term& b = g.leading();
    Monomial l = lcm(a.monomial, b.monomial);
    return f.times_term(l / a.monomial, dom.inverse(a.coefficient)) -
           g.times_term(l / b.monomial, dom.inverse(b.coefficient));
}

} // namespace detail

/// Buchberger's algorithm with the normal selection strategy and the
/// coprime-leading-monomial and chain criteria; result is fully reduced.
inline GroebnerBasis groebner_basis(const Ideal& ideal, MonomialOrder order = MonomialOrder::grevlex(),
                                    const GroebnerOptions& options = {}) {
    {
        std::lock_guard lock(ideal.cache_->mutex);
        auto it = ideal.cache_->by_order.find(order.name());
        if (it != ideal.cache_->by_order.end()) return *it->second;
    }
    Ring ring = detail::computation_ring(ideal.ring(), order);
    const auto& ord = ring->order();
    detail::StepCounter counter(options.step_cap);

    std::vector<Polynomial> g;
    for (const auto& f : ideal.generators()) {
        Polynomial h = detail::reduce_full(f.in_ring(ring), g, counter);
        if (!h.is_zero()) g.push_back(h.monic());
    }

    // pending pairs (i, j), i < j
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);

    auto pair_lcm = [&](const std::pair<std::size_t, std::size_t>& p) {
        return lcm(g[p.first].leading().monomial, g[p.second].leading().monomial);
    };
    auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

    while (!pending.empty()) {
        // normal strategy: smallest lcm first, ties broken by index
        auto best = pending.begin();
        Monomial best_lcm = pair_lcm(*best);
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            Monomial l = pair_lcm(*it);
            if (ord.compare(l, best_lcm) < 0) {
                best = it;
                best_lcm = std::move(l);
            }
        }
        auto [i, j] = *best;
        pending.erase(best);

        const Monomial& li = g[i].leading().monomial;
        const Monomial& lj = g[j].leading().monomial;
        if (coprime(li, lj)) continue;
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == i || k == j) continue;
            if (g[k].leading().monomial.divides(best_lcm) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
        }
        if (chain) continue;

        Polynomial h = detail::reduce_full(detail::s_polynomial(g[i], g[j]), g, counter);
        if (h.is_zero()) continue;
        g.push_back(h.monic());
        std::size_t t = g.size() - 1;
        for (std::size_t k = 0; k < t; ++k) pending.emplace(k, t);
    }

    // minimalize
    std::vector<Polynomial> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
            if (a == b) continue;
            const Monomial& la = g[a].leading().monomial;
            const Monomial& lb = g[b].leading().monomial;
            if (lb.divides(la) && (lb != la || b < a)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[a]);
    }
    // tail-reduce
    std::vector<Polynomial> reduced;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<Polynomial> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        const Term lt = minimal[a].leading();
        Polynomial tail = minimal[a] - Polynomial::monomial(ring, lt.monomial, lt.coefficient);
        Polynomial r = Polynomial::monomial(ring, lt.monomial, lt.coefficient) + detail::reduce_full(tail, others, counter);
        reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& x, const Polynomial& y) {
        return ord.compare(x.leading().monomial, y.leading().monomial) > 0;
    });

    auto gb = std::make_shared<const GroebnerBasis>(ideal, ring, std::move(reduced), counter.steps());
    {
        std::lock_guard lock(ideal.cache_->mutex);
        ideal.cache_->by_order.emplace(order.name(), gb);
    }
    return *gb;
}

/// Remainder of f modulo G; no term is divisible by a leading monomial of G.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb, const GroebnerOptions& options = {}) {
    detail::StepCounter counter(options.step_cap);
    return detail::reduce_full(gb.import(f), gb.basis(), counter);
}

/// Buchberger certificate: every S-polynomial of the basis reduces to zero.
inline bool verify_groebner(const GroebnerBasis& gb, const GroebnerOptions& options = {}) {
    detail::StepCounter counter(options.step_cap);
    const auto& b = gb.basis();
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (!detail::reduce_full(detail::s_polynomial(b[i], b[j]), b, counter).is_zero()) return false;
    return true;
}

inline bool ideal_member(const Polynomial& f, const Ideal& ideal, const GroebnerOptions& options = {}) {
    if (!same_ring(f.ring(), ideal.ring())) throw ContextMismatch("polynomial and ideal live in different rings");
    if (f.is_zero()) return true;
    return normal_form(f, groebner_basis(ideal, MonomialOrder::grevlex(), options), options).is_zero();
}

namespace detail {

/// Fresh variable name not clashing with the ring's names.
inline std::string fresh_name(const RingContext& r, const std::string& base) {
    std::string name = base;
    for (int k = 0; r.index_of(name) >= 0; ++k) name = base + std::to_string(k);
    return name;
}

/// Ring with one auxiliary variable in front, eliminated first.
inline Ring with_leading_auxiliary(const Ring& r, MonomialOrder order) {
    std::vector<std::string> names{fresh_name(*r, "_t")};
    names.insert(names.end(), r->names().begin(), r->names().end());
    return make_ring(std::move(names), r->domain().is_field() ? r->domain() : CoefficientDomain::rationals(), order);
}

inline std::vector<std::size_t> shift_map(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i + 1;
    return m;
}

} // namespace detail

/// f in sqrt(I) iff 1 in I + (1 - t f) over one extra variable t.
inline bool radical_member(const Polynomial& f, const Ideal& ideal, const GroebnerOptions& options = {}) {
    if (!same_ring(f.ring(), ideal.ring())) throw ContextMismatch("polynomial and ideal live in different rings");
    if (f.is_zero()) return true;
    const std::size_t n = f.ring()->size();
    Ring ext = detail::with_leading_auxiliary(f.ring(), MonomialOrder::grevlex());
    auto map = detail::shift_map(n);
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.map_to(ext, map));
    Polynomial t = Polynomial::variable(ext, 0);
    gens.push_back(Polynomial::constant(ext, 1) - t * f.map_to(ext, map));
    return groebner_basis(Ideal(ext, std::move(gens)), MonomialOrder::grevlex(), options).is_unit_ideal();
}

inline bool is_proper(const Ideal& ideal, const GroebnerOptions& options = {}) {
    return !groebner_basis(ideal, MonomialOrder::grevlex(), options).is_unit_ideal();
}

inline bool radical_eq(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {}) {
    if (!same_ring(a.ring(), b.ring())) throw ContextMismatch("ideals live in different rings");
    for (const auto& g : a.generators())
        if (!radical_member(g, b, options)) return false;
    for (const auto& g : b.generators())
        if (!radical_member(g, a, options)) return false;
    return true;
}

/// I ∩ J by eliminating t from t*I + (1 - t)*J.
inline Ideal ideal_intersect(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {}) {
    if (!same_ring(a.ring(), b.ring())) throw ContextMismatch("ideals live in different rings");
    const Ring& ring = a.ring();
    if (a.is_zero() || b.is_zero()) return Ideal(ring);
    const std::size_t n = ring->size();
    Ring ext = detail::with_leading_auxiliary(ring, MonomialOrder::block_eliminate(1));
    auto map = detail::shift_map(n);
    Polynomial t = Polynomial::variable(ext, 0);
    Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;
    std::vector<Polynomial> gens;
    for (const auto& g : a.generators()) gens.push_back(t * g.map_to(ext, map));
    for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.map_to(ext, map));
    auto gb = groebner_basis(Ideal(ext, std::move(gens)), MonomialOrder::block_eliminate(1), options);

    Ring target = detail::computation_ring(ring, ring->order());
    std::vector<Polynomial> out;
    for (const auto& g : gb.basis()) {
        if (g.degree_in(0) != 0) continue;
        std::vector<Term> terms;
        for (const auto& term : g.terms()) {
            Monomial m(n);
            for (std::size_t k = 0; k < n; ++k) m[k] = term.monomial[k + 1];
            terms.push_back({std::move(m), term.coefficient});
        }
        out.push_back(Polynomial::from_terms(target, std::move(terms)));
    }
    if (target != ring) {
        // non-field domain: clear denominators to land back in the integer ring
        for (auto& p : out) {
            Integer den = 1;
            for (const auto& term : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), term.coefficient.get_den_mpz_t());
            p = p.scaled(Rational(den)).in_ring(ring);
        }
    }
    return Ideal(ring, std::move(out));
}

/// (I : f) = (I ∩ (f)) / f.
inline Ideal ideal_quotient(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& options = {}) {
    if (!same_ring(f.ring(), ideal.ring())) throw ContextMismatch("polynomial and ideal live in different rings");
    if (f.is_zero()) throw InvalidArgument("quotient by the zero polynomial");
    Ideal inter = ideal_intersect(ideal, Ideal(ideal.ring(), {f}), options);
    std::vector<Polynomial> gens;
    for (const auto& g : inter.generators()) gens.push_back(divide_exact(g, f));
    return Ideal(ideal.ring(), std::move(gens));
}

/// Largest set of variables S such that no monomial in `monomials` is
/// supported inside S. Brute force over all 2^n subsets.
inline int max_independent_set(const std::vector<Monomial>& monomials, std::size_t n) {
    std::vector<std::uint32_t> supports;
    for (const auto& m : monomials) supports.push_back(m.support());
    int best = -1;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        int size = std::popcount(s);
        if (size <= best) continue;
        bool independent = std::none_of(supports.begin(), supports.end(),
                                        [s](std::uint32_t sup) { return (sup & ~s) == 0; });
        if (independent) best = size;
    }
    return best;
}

/// Affine dimension of R/I from the initial ideal; -1 for the unit ideal.
/// Agrees with the local dimension at the origin for homogeneous I.
inline int krull_dim(const Ideal& ideal, const GroebnerOptions& options = {}) {
    auto gb = groebner_basis(ideal, MonomialOrder::grevlex(), options);
    if (gb.is_unit_ideal()) return -1;
    return max_independent_set(gb.initial_ideal(), ideal.ring()->size());
}

/// Each f_k is a nonzerodivisor on R/(base + (f_1..f_{k-1})) and the final
/// ideal is proper.
inline bool is_regular_sequence(const std::vector<Polynomial>& fs, const Ideal& base,
                                const GroebnerOptions& options = {}) {
    Ideal current = base;
    for (const auto& f : fs) {
        if (!same_ring(f.ring(), base.ring())) throw ContextMismatch("polynomial and ideal live in different rings");
        if (f.is_zero()) return false;
        if (!current.is_zero()) {
            Ideal q = ideal_quotient(current, f, options);
            for (const auto& g : q.generators())
                if (!ideal_member(g, current, options)) return false;
        }
        current = current.with({f});
    }
    return is_proper(current, options);
}

/// fs is part of a system of parameters of R/p: dim drops by exactly |fs|
/// and the extended ideal stays proper.
inline bool is_sop_part(const Ideal& prime, const std::vector<Polynomial>& fs, const GroebnerOptions& options = {}) {
    if (fs.empty()) throw InvalidArgument("is_sop_part needs at least one element");
    int base = krull_dim(prime, options);
    if (base < 0) throw InvalidArgument("is_sop_part needs a proper ideal");
    int extended = krull_dim(prime.with(fs), options);
    if (extended < 0) return false;
    return extended == base - static_cast<int>(fs.size());
}

} // namespace mlab

#endif
