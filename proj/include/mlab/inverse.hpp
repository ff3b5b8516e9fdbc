#ifndef MLAB_INVERSE_HPP
#define MLAB_INVERSE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/parse.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

// Coefficient hooks shared by the two modes of InverseElement:
//   Rational      - the residue field k itself (QQ or F_q, canonical per the ring domain)
//   PrueferScalar - C_p/C for C the p-adic integers, acted on by integers
namespace detail {

inline bool coefficient_is_zero(const Rational& c) { return c == 0; }
inline bool coefficient_is_zero(const PrueferScalar& c) { return c.is_zero(); }

inline Rational coefficient_sum(const Rational& a, const Rational& b, const CoefficientDomain& d) {
    return d.normalized(a + b);
}
inline PrueferScalar coefficient_sum(const PrueferScalar& a, const PrueferScalar& b, const CoefficientDomain&) {
    return a + b;
}

inline Rational coefficient_scale(const Rational& f, const Rational& c, const CoefficientDomain& d) {
    return d.normalized(f * c);
}
inline PrueferScalar coefficient_scale(const Rational& f, const PrueferScalar& c, const CoefficientDomain&) {
    if (f.get_den() != 1) throw InvalidArgument("Pruefer coefficients can only be scaled by integers");
    return f.get_num() * c;
}

inline FormattedTerm format_coefficient(const Rational& c) {
    Rational mag = abs(c);
    return {c < 0, mag == 1 ? "" : mag.get_str(), ""};
}
inline FormattedTerm format_coefficient(const PrueferScalar& c) {
    Integer u = c.numerator();
    bool negative = u < 0;
    if (negative) u = -u;
    std::string den = std::to_string(c.prime());
    if (c.denominator_exponent() != 1) den += "^" + std::to_string(c.denominator_exponent());
    return {negative, u.get_str() + "/" + den, ""};
}

} // namespace detail

/// Inverse polynomial sum c_b x^-b, the exponent vector b stored as a Monomial.
/// Coefficient is Rational for E = k[x^-1] and PrueferScalar for (C_p/C)[x^-1].
template <class Coefficient>
class InverseElement {
public:
    using coefficient_type = Coefficient;

    explicit InverseElement(Ring ring) : ring_(std::move(ring)) {}

    static InverseElement monomial(Ring ring, Monomial b, Coefficient c) {
        InverseElement w(std::move(ring));
        w.add_term(std::move(b), std::move(c));
        return w;
    }

    const Ring& ring() const noexcept { return ring_; }
    const std::map<Monomial, Coefficient>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(Monomial b, Coefficient c) {
        if (b.size() != ring_->size()) throw ContextMismatch("inverse exponent vector has the wrong length");
        if constexpr (std::is_same_v<Coefficient, Rational>) ring_->domain().normalize(c);
        if (detail::coefficient_is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(std::move(b), c);
        if (!inserted) {
            it->second = detail::coefficient_sum(it->second, c, ring_->domain());
            if (detail::coefficient_is_zero(it->second)) terms_.erase(it);
        }
    }

    friend InverseElement operator+(InverseElement a, const InverseElement& b) {
        a.require_compatible(b);
        for (const auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }

    friend InverseElement operator-(InverseElement a, const InverseElement& b) {
        a.require_compatible(b);
        for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }

    /// Scalar action of a ring coefficient (an integer in Pruefer mode).
    InverseElement scaled_by(const Rational& f) const {
        InverseElement r(ring_);
        for (const auto& [m, c] : terms_) r.add_term(m, detail::coefficient_scale(f, c, ring_->domain()));
        return r;
    }

    friend bool operator==(const InverseElement& a, const InverseElement& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    void require_compatible(const InverseElement& o) const {
        if (!same_ring(ring_, o.ring_)) throw ContextMismatch("inverse elements over different rings");
    }

    /// Largest head exponent among x_1..x_count.
    Exponent max_exponent(std::size_t count) const {
        Exponent best = 0;
        for (const auto& [m, c] : terms_)
            for (std::size_t j = 0; j < count && j < m.size(); ++j) best = std::max(best, m[j]);
        return best;
    }

    /// Terms ordered by inverse degree, then lexicographically descending:
    /// "x1^-2 + x1^-1*x2^-1 + x2^-2".
    std::string to_string() const {
        std::vector<const std::pair<const Monomial, Coefficient>*> order;
        for (const auto& t : terms_) order.push_back(&t);
        std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
            if (x->first.degree() != y->first.degree()) return x->first.degree() < y->first.degree();
            return x->first > y->first;
        });
        std::vector<FormattedTerm> out;
        for (auto* t : order) {
            FormattedTerm ft = detail::format_coefficient(t->second);
            std::vector<std::int64_t> e;
            for (auto x : t->first.exponents()) e.push_back(-static_cast<std::int64_t>(x));
            ft.monomial = format_monomial(*ring_, e);
            out.push_back(std::move(ft));
        }
        return join_terms(out);
    }

private:
    Ring ring_;
    std::map<Monomial, Coefficient> terms_;
};

using FieldInverse = InverseElement<Rational>;
using PrueferInverse = InverseElement<PrueferScalar>;

/// Contraction: x^a . x^-b = x^-(b-a) when b >= a componentwise, else 0.
template <class Coefficient>
InverseElement<Coefficient> inverse_act(const Polynomial& f, const InverseElement<Coefficient>& w) {
    if (!same_ring(f.ring(), w.ring())) throw ContextMismatch("polynomial and inverse element live in different rings");
    InverseElement<Coefficient> r(w.ring());
    for (const auto& t : f.terms())
        for (const auto& [b, c] : w.terms()) {
            if (!t.monomial.divides(b)) continue;
            r.add_term(b / t.monomial, detail::coefficient_scale(t.coefficient, c, w.ring()->domain()));
        }
    return r;
}

/// Basis x^-b, b in [0, level-1]^count x {0}, of the elements of E killed by
/// x_1^level..x_count^level; its size is level^count.
inline std::vector<Monomial> level_box(std::size_t n, std::size_t count, Exponent level) {
    std::vector<Monomial> out;
    Monomial m(n);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == count) {
            out.push_back(m);
            return;
        }
        for (Exponent e = 0; e < level; ++e) {
            m[j] = e;
            self(self, j + 1);
        }
        m[j] = 0;
    };
    rec(rec, 0);
    return out;
}

} // namespace mlab

#endif
