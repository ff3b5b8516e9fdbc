#ifndef MLAB_TOWER_HPP
#define MLAB_TOWER_HPP

#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mlab/decompose.hpp"
#include "mlab/error.hpp"
#include "mlab/inverse.hpp"

namespace mlab {

/// Highest level whose entry exponents ((level-1)!) fit in 64 bits.
inline constexpr Exponent max_tower_level = 21;

enum class TowerVariant { equichar, mixed, mixed_p_in_ideal };

inline std::string variant_name(TowerVariant v) {
    switch (v) {
    case TowerVariant::equichar: return "equichar";
    case TowerVariant::mixed: return "mixed";
    case TowerVariant::mixed_p_in_ideal: return "mixed-p-in-I";
    }
    return "?";
}

/// Compatible sequence (entry_1, entry_2, ...) in the inverse limit of the
/// duals D(R/(x1^l..xi^l)), with entry_l = multiplier . entry_(l+1).
/// Towers built from a generator extend on demand; extension is serialized by
/// a mutex and entries never move once materialized.
template <class Coefficient>
class DualTower {
public:
    using Element = InverseElement<Coefficient>;
    using Generator = std::function<Element(Exponent level)>;

    /// Fixed list of entries (levels 1..entries.size()); never extends.
    /// `prime` is p for the mixed variants and 0 otherwise.
    DualTower(Ring ring, std::size_t head_count, TowerVariant variant, Polynomial multiplier, std::vector<Element> entries,
              std::uint64_t prime = 0)
        : ring_(std::move(ring)), head_count_(head_count), variant_(variant), prime_(prime),
          multiplier_(std::move(multiplier)), entries_(entries.begin(), entries.end()),
          lock_(std::make_unique<std::mutex>()) {}

    DualTower(Ring ring, std::size_t head_count, TowerVariant variant, Polynomial multiplier, Generator generator,
              Exponent initial_levels, std::uint64_t prime = 0)
        : ring_(std::move(ring)), head_count_(head_count), variant_(variant), prime_(prime),
          multiplier_(std::move(multiplier)), generator_(std::move(generator)), lock_(std::make_unique<std::mutex>()) {
        if (initial_levels < 1) throw InvalidArgument("tower needs at least one level");
        entry(initial_levels);
    }

    const Ring& ring() const noexcept { return ring_; }
    std::size_t head_count() const noexcept { return head_count_; }
    TowerVariant variant() const noexcept { return variant_; }
    std::uint64_t prime() const noexcept { return prime_; }
    const Polynomial& multiplier() const noexcept { return multiplier_; }
    bool extendable() const noexcept { return static_cast<bool>(generator_); }

    /// Number of materialized levels.
    Exponent levels() const {
        std::lock_guard guard(*lock_);
        return entries_.size();
    }

    /// Entry at level l >= 1, materializing missing levels first.
    const Element& entry(Exponent level) const {
        if (level < 1) throw InvalidArgument("tower levels start at 1");
        std::lock_guard guard(*lock_);
        if (level > entries_.size()) {
            if (!generator_) throw InvalidArgument("level " + std::to_string(level) + " beyond a fixed tower");
            if (level > max_tower_level)
                throw ResourceBound("tower level " + std::to_string(level) + " exceeds " + std::to_string(max_tower_level));
            while (entries_.size() < level) entries_.push_back(generator_(entries_.size() + 1));
        }
        return entries_[level - 1];
    }

private:
    Ring ring_;
    std::size_t head_count_;
    TowerVariant variant_;
    std::uint64_t prime_;
    Polynomial multiplier_;
    Generator generator_;
    mutable std::deque<Element> entries_;
    std::unique_ptr<std::mutex> lock_;
};

namespace detail {

inline Polynomial head_product(const Ring& ring, std::size_t head_count, Exponent scalar = 1) {
    Monomial m(ring->size());
    for (std::size_t j = 0; j < head_count; ++j) m[j] = 1;
    return Polynomial::monomial(ring, m, Rational(static_cast<unsigned long>(scalar)));
}

/// x^-b for the j-th group at level m+1: head exponent m-j on x1..xi, and
/// tail exponent j! on x_(i+1)..x_n for j >= 1 (the j = 0 group has no tail).
inline Monomial alpha_group(std::size_t n, std::size_t head_count, Exponent m, Exponent j) {
    Monomial b(n);
    for (std::size_t k = 0; k < head_count; ++k) b[k] = m - j;
    if (j > 0)
        for (std::size_t k = head_count; k < n; ++k) b[k] = factorial(j);
    return b;
}

inline void require_prime_ring(const Ring& ring, std::uint64_t p) {
    if (!is_prime(p) || p >= (std::uint64_t{1} << 31)) throw InvalidArgument("p must be a prime below 2^31");
    const auto& d = ring->domain();
    if (d.kind() == DomainKind::prime_field) throw InvalidArgument("mixed towers need an integral coefficient ring, not " + d.name());
    if (d.kind() == DomainKind::p_integral && d.prime() != p)
        throw InvalidArgument("ring is " + d.name() + " but the tower uses p = " + std::to_string(p));
}

} // namespace detail

/// alpha = (1, x1^-1..xi^-1 + x_(i+1)^-1..x_n^-1, ...): the level-(m+1) entry is
/// sum_{j=0..m} (x_(i+1)..x_n)^-(j!) (x1..xi)^-(m-j), without tail for j = 0.
inline DualTower<Rational> alpha_equichar(const Ring& ring, std::size_t head_count, Exponent levels) {
    const std::size_t n = ring->size();
    if (!ring->domain().is_field()) throw InvalidArgument("equicharacteristic towers need a field, not " + ring->domain().name());
    if (head_count < 1 || head_count >= n)
        throw InvalidArgument("equicharacteristic towers need 1 <= i < n (i = n gives D = R)");
    auto gen = [ring, head_count, n](Exponent level) {
        FieldInverse e(ring);
        const Exponent m = level - 1;
        for (Exponent j = 0; j <= m; ++j) e.add_term(detail::alpha_group(n, head_count, m, j), 1);
        return e;
    };
    return DualTower<Rational>(ring, head_count, TowerVariant::equichar, detail::head_product(ring, head_count), gen, levels);
}

/// Mixed characteristic, p outside the ideal: the j = 0 group carries p^-1
/// and the j-th tail group p^-(j!).
inline DualTower<PrueferScalar> alpha_mixed(const Ring& ring, std::size_t head_count, std::uint64_t p, Exponent levels) {
    const std::size_t n = ring->size();
    detail::require_prime_ring(ring, p);
    if (head_count < 1 || head_count > n) throw InvalidArgument("mixed towers need 1 <= i <= n");
    auto gen = [ring, head_count, n, p](Exponent level) {
        PrueferInverse e(ring);
        const Exponent m = level - 1;
        for (Exponent j = 0; j <= m; ++j)
            e.add_term(detail::alpha_group(n, head_count, m, j), PrueferScalar::make(p, j == 0 ? 1 : factorial(j), 1));
        return e;
    };
    return DualTower<PrueferScalar>(ring, head_count, TowerVariant::mixed, detail::head_product(ring, head_count), gen,
                                    levels, p);
}

/// Mixed characteristic with p in the ideal (p, x1..xi): every group of the
/// level-l entry carries p^-l, and transitions multiply by p x1..xi.
inline DualTower<PrueferScalar> alpha_mixed_p_in_ideal(const Ring& ring, std::size_t head_count, std::uint64_t p,
                                                       Exponent levels) {
    const std::size_t n = ring->size();
    detail::require_prime_ring(ring, p);
    if (head_count < 1 || head_count >= n)
        throw InvalidArgument("towers for (p, x1..xi) need 1 <= i < n (i = 0 breaks compatibility, i = n gives D = R)");
    auto gen = [ring, head_count, n, p](Exponent level) {
        PrueferInverse e(ring);
        const Exponent m = level - 1;
        for (Exponent j = 0; j <= m; ++j) e.add_term(detail::alpha_group(n, head_count, m, j), PrueferScalar::make(p, level, 1));
        return e;
    };
    return DualTower<PrueferScalar>(ring, head_count, TowerVariant::mixed_p_in_ideal,
                                    detail::head_product(ring, head_count, p), gen, levels, p);
}

struct TowerCheck {
    bool passed = true;
    /// Fewer than two levels: nothing to compare.
    bool vacuous = false;
    std::optional<Exponent> failing_level;
    std::string reason;

    explicit operator bool() const noexcept { return passed; }
};

/// Checks levels 1..levels: entry_l = multiplier . entry_(l+1), head exponents
/// of entry_l within [0, l-1], and for the (p, x1..xi) tower denominators <= p^l.
template <class Coefficient>
TowerCheck tower_check(const DualTower<Coefficient>& t, Exponent levels) {
    TowerCheck r;
    if (levels < 2) {
        r.vacuous = true;
        return r;
    }
    auto fail = [&](Exponent l, std::string why) {
        r.passed = false;
        r.failing_level = l;
        r.reason = std::move(why);
        return r;
    };
    for (Exponent l = 1; l <= levels; ++l) {
        const auto& e = t.entry(l);
        if (!e.is_zero() && e.max_exponent(t.head_count()) > l - 1)
            return fail(l, "head exponent outside [0, " + std::to_string(l - 1) + "]");
        if constexpr (std::is_same_v<Coefficient, PrueferScalar>) {
            if (t.variant() == TowerVariant::mixed_p_in_ideal)
                for (const auto& [b, c] : e.terms())
                    if (c.denominator_exponent() > l) return fail(l, "denominator exponent above the level");
        }
        if (l < levels && inverse_act(t.multiplier(), t.entry(l + 1)) != e)
            return fail(l, "multiplier . entry_" + std::to_string(l + 1) + " differs from entry_" + std::to_string(l));
    }
    return r;
}

template <class Coefficient>
TowerCheck tower_check(const DualTower<Coefficient>& t) {
    return tower_check(t, t.levels());
}

template <class Coefficient>
struct WitnessReport {
    Polynomial f;
    std::optional<Exponent> witness_level;
    /// f . entry at the witness level; nonzero when present.
    std::optional<InverseElement<Coefficient>> entry;
    /// Predicted m from the minimal-support decomposition; the witness level is at most bound + 1.
    std::optional<Exponent> bound;
    Exponent levels_examined = 0;
    /// f . (tower) stayed compatible with the transition maps at every examined level.
    bool image_compatible = true;

    bool found() const noexcept { return witness_level.has_value(); }
};

namespace detail {

inline Exponent p_valuation(const Rational& c, std::uint64_t p) {
    Integer num = c.get_num();
    if (num == 0) return 0;
    Integer stripped;
    Integer prime = static_cast<unsigned long>(p);
    return mpz_remove(stripped.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t());
}

} // namespace detail

/// Level m such that f . entry_(m+1) != 0 is guaranteed: the decomposition
/// bound, raised in the mixed variants until the tail coefficient survives the
/// p-power of its group. nullopt when no decomposition applies (i = n).
template <class Coefficient>
std::optional<Exponent> predicted_witness_bound(const DualTower<Coefficient>& t, const Polynomial& f) {
    const std::size_t n = t.ring()->size();
    if (f.is_zero() || t.head_count() < 1 || t.head_count() >= n) return std::nullopt;
    auto d = min_support_decompose(f, t.head_count());
    Exponent m = witness_level_bound(d);
    if (t.variant() == TowerVariant::equichar) return m;
    Exponent v = detail::p_valuation(d.tail_coefficient, t.prime());
    if (t.variant() == TowerVariant::mixed)
        while (m - d.a < 21 && factorial(m - d.a) <= v) ++m;
    else
        while (m + 1 <= v) ++m;
    return m;
}

/// Searches levels 1..max_level for f . entry_l != 0, extending the tower as
/// needed. No witness within max_level leaves witness_level empty (inconclusive).
template <class Coefficient>
WitnessReport<Coefficient> annihilator_witness(const DualTower<Coefficient>& t, const Polynomial& f, Exponent max_level) {
    if (!same_ring(f.ring(), t.ring())) throw ContextMismatch("polynomial and tower live in different rings");
    if (f.is_zero()) throw InvalidArgument("the zero polynomial annihilates everything");
    if constexpr (std::is_same_v<Coefficient, PrueferScalar>) {
        for (const auto& term : f.terms())
            if (term.coefficient.get_den() != 1) throw InvalidArgument("mixed towers need integer coefficients");
    }
    WitnessReport<Coefficient> r{f, std::nullopt, std::nullopt, predicted_witness_bound(t, f), 0, true};
    std::optional<InverseElement<Coefficient>> previous;
    for (Exponent l = 1; l <= max_level; ++l) {
        if (!t.extendable() && l > t.levels()) break;
        auto image = inverse_act(f, t.entry(l));
        r.levels_examined = l;
        if (previous && inverse_act(t.multiplier(), image) != *previous) r.image_compatible = false;
        if (!image.is_zero()) {
            r.witness_level = l;
            r.entry = std::move(image);
            return r;
        }
        previous = std::move(image);
    }
    return r;
}

} // namespace mlab

#endif
