#ifndef MLAB_POLYNOMIAL_HPP
#define MLAB_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/ring.hpp"
#include "mlab/scalar.hpp"

namespace mlab {

struct Term {
    Monomial monomial;
    Rational coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial. Terms are kept sorted by the ring's monomial order,
/// largest first, with no zero coefficients.
class Polynomial {
public:
    explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

    static Polynomial constant(Ring ring, Rational c) {
        Polynomial p(std::move(ring));
        p.ring_->domain().normalize(c);
        if (c != 0) p.terms_.push_back({Monomial(p.ring_->size()), std::move(c)});
        return p;
    }

    static Polynomial variable(Ring ring, std::size_t index) {
        Polynomial p(std::move(ring));
        if (index >= p.ring_->size()) throw InvalidArgument("variable index out of range");
        p.terms_.push_back({Monomial::variable(p.ring_->size(), index), Rational(1)});
        return p;
    }

    static Polynomial monomial(Ring ring, Monomial m, Rational c = 1) {
        Polynomial p(std::move(ring));
        if (m.size() != p.ring_->size()) throw ContextMismatch("monomial length differs from ring size");
        p.ring_->domain().normalize(c);
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    /// Combines duplicate monomials, normalizes coefficients and sorts.
    static Polynomial from_terms(Ring ring, std::vector<Term> terms) {
        std::map<Monomial, Rational> acc;
        for (auto& t : terms) {
            if (t.monomial.size() != ring->size()) throw ContextMismatch("monomial length differs from ring size");
            acc[std::move(t.monomial)] += t.coefficient;
        }
        return from_map(std::move(ring), std::move(acc));
    }

    const Ring& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

    const Term& leading() const {
        if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
        return terms_.front();
    }

    Rational coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.monomial == m) return t.coefficient;
        return 0;
    }

    Exponent total_degree() const {
        Exponent d = 0;
        for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
        return d;
    }

    Exponent degree_in(std::size_t var) const {
        Exponent d = 0;
        for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        Exponent d = terms_.front().monomial.degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.monomial.degree() == d; });
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) {
            t.coefficient = -t.coefficient;
            r.ring_->domain().normalize(t.coefficient);
        }
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.merge(b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.merge(b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_ring(b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        std::map<Monomial, Rational> acc;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coefficient * t.coefficient;
        return from_map(a.ring_, std::move(acc));
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Rational& c) const {
        Polynomial r(ring_);
        Rational cc = ring_->domain().normalized(c);
        if (cc == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Rational v = t.coefficient * cc;
            ring_->domain().normalize(v);
            if (v != 0) r.terms_.push_back({t.monomial, std::move(v)});
        }
        return r;
    }

    /// c * m * this; order is preserved by monomial multiplication.
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        Polynomial r = scaled(c);
        for (auto& t : r.terms_) t.monomial = t.monomial * m;
        return r;
    }

    /// Leading coefficient scaled to 1 (field domains only).
    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(ring_->domain().inverse(leading().coefficient));
    }

    /// Rewrites into `target`, sending variable i to target variable index_map[i].
    Polynomial map_to(const Ring& target, std::span<const std::size_t> index_map) const {
        if (index_map.size() != ring_->size()) throw InvalidArgument("variable map has the wrong length");
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m(target->size());
            for (std::size_t i = 0; i < index_map.size(); ++i) m[index_map[i]] = checked_add(m[index_map[i]], t.monomial[i]);
            out.push_back({std::move(m), t.coefficient});
        }
        return from_terms(target, std::move(out));
    }

    /// Same variables, different order or domain.
    Polynomial in_ring(const Ring& target) const {
        if (target->size() != ring_->size()) throw ContextMismatch("ring sizes differ");
        std::vector<std::size_t> id(ring_->size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        return map_to(target, id);
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    void require_same_ring(const Polynomial& o) const {
        if (!same_ring(ring_, o.ring_)) throw ContextMismatch("polynomials live in different rings");
    }

private:
    static Polynomial from_map(Ring ring, std::map<Monomial, Rational> acc) {
        Polynomial p(std::move(ring));
        p.terms_.reserve(acc.size());
        for (auto& [m, c] : acc) {
            p.ring_->domain().normalize(c);
            if (c != 0) p.terms_.push_back({m, std::move(c)});
        }
        p.sort_terms();
        return p;
    }

    void sort_terms() {
        const auto& order = ring_->order();
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& x, const Term& y) { return order.compare(x.monomial, y.monomial) > 0; });
    }

    Polynomial merge(const Polynomial& b, bool subtract) const {
        require_same_ring(b);
        const auto& order = ring_->order();
        const auto& dom = ring_->domain();
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        auto push_b = [&](const Term& t) {
            Rational c = subtract ? Rational(-t.coefficient) : t.coefficient;
            dom.normalize(c);
            r.terms_.push_back({t.monomial, std::move(c)});
        };
        while (i < terms_.size() && j < b.terms_.size()) {
            auto c = order.compare(terms_[i].monomial, b.terms_[j].monomial);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                push_b(b.terms_[j++]);
            } else {
                Rational v = subtract ? Rational(terms_[i].coefficient - b.terms_[j].coefficient)
                                      : Rational(terms_[i].coefficient + b.terms_[j].coefficient);
                dom.normalize(v);
                if (v != 0) r.terms_.push_back({terms_[i].monomial, std::move(v)});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < b.terms_.size(); ++j) push_b(b.terms_[j]);
        return r;
    }

    Ring ring_;
    std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& f, std::uint64_t e) {
    Polynomial result = Polynomial::constant(f.ring(), 1);
    Polynomial base = f;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

/// Exact quotient f / g. Throws InvalidArgument when g does not divide f.
inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    f.require_same_ring(g);
    if (g.is_zero()) throw InvalidArgument("division by the zero polynomial");
    const auto& dom = f.ring()->domain();
    const Term& lg = g.leading();
    Polynomial quotient(f.ring());
    Polynomial rest = f;
    while (!rest.is_zero()) {
        const Term& lt = rest.leading();
        if (!lg.monomial.divides(lt.monomial)) throw InvalidArgument("polynomial division is not exact");
        Rational c;
        if (dom.is_field()) {
            c = lt.coefficient * dom.inverse(lg.coefficient);
        } else {
            c = lt.coefficient / lg.coefficient;
            if (c.get_den() != 1) throw InvalidArgument("polynomial division is not exact over the integers");
        }
        Monomial m = lt.monomial / lg.monomial;
        quotient += Polynomial::monomial(f.ring(), m, c);
        rest -= g.times_term(m, c);
    }
    return quotient;
}

} // namespace mlab

#endif
