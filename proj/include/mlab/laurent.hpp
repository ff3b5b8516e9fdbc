#ifndef MLAB_LAURENT_HPP
#define MLAB_LAURENT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/linalg.hpp"
#include "mlab/parse.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

using SignedExponents = std::vector<std::int64_t>;

/// Element of H^i_{(x1..xi)}(R) in the mixed Laurent basis: finite sums of
/// x^e with e_1..e_i <= -1 and e_(i+1)..e_n >= 0.
class LaurentElement {
public:
    LaurentElement(Ring ring, std::size_t head_count) : ring_(std::move(ring)), head_count_(head_count) {
        if (head_count_ < 1 || head_count_ > ring_->size()) throw InvalidArgument("head count must satisfy 1 <= i <= n");
    }

    static LaurentElement basis(Ring ring, std::size_t head_count, SignedExponents e, Rational c = 1) {
        LaurentElement v(std::move(ring), head_count);
        v.add_term(std::move(e), std::move(c));
        return v;
    }

    const Ring& ring() const noexcept { return ring_; }
    std::size_t head_count() const noexcept { return head_count_; }
    const std::map<SignedExponents, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool in_region(const SignedExponents& e) const {
        if (e.size() != ring_->size()) return false;
        for (std::size_t j = 0; j < e.size(); ++j)
            if (j < head_count_ ? e[j] > -1 : e[j] < 0) return false;
        return true;
    }

    void add_term(SignedExponents e, Rational c) {
        if (!in_region(e)) throw InvalidArgument("exponent vector outside the Laurent region");
        ring_->domain().normalize(c);
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            ring_->domain().normalize(it->second);
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) {
        a.require_compatible(b);
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }

    LaurentElement scaled(const Rational& c) const {
        LaurentElement r(ring_, head_count_);
        for (const auto& [e, v] : terms_) r.add_term(e, v * c);
        return r;
    }

    friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
        return same_ring(a.ring_, b.ring_) && a.head_count_ == b.head_count_ && a.terms_ == b.terms_;
    }

    void require_compatible(const LaurentElement& o) const {
        if (!same_ring(ring_, o.ring_) || head_count_ != o.head_count_)
            throw ContextMismatch("Laurent elements from different models");
    }

    std::string to_string() const {
        std::vector<FormattedTerm> out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            FormattedTerm t;
            t.negative = it->second < 0;
            Rational mag = abs(it->second);
            t.coefficient = mag == 1 ? "" : mag.get_str();
            t.monomial = format_monomial(*ring_, it->first);
            out.push_back(std::move(t));
        }
        return join_terms(out);
    }

private:
    Ring ring_;
    std::size_t head_count_;
    std::map<SignedExponents, Rational> terms_;
};

/// f . v: x^c . x^e = x^(c+e) when every head coordinate stays <= -1, else 0.
inline LaurentElement laurent_act(const Polynomial& f, const LaurentElement& v) {
    if (!same_ring(f.ring(), v.ring())) throw ContextMismatch("polynomial and Laurent element live in different rings");
    LaurentElement r(v.ring(), v.head_count());
    for (const auto& t : f.terms())
        for (const auto& [e, c] : v.terms()) {
            SignedExponents s = e;
            bool alive = true;
            for (std::size_t j = 0; j < s.size(); ++j) {
                s[j] += static_cast<std::int64_t>(t.monomial[j]);
                if (j < v.head_count() && s[j] > -1) alive = false;
            }
            if (alive) r.add_term(std::move(s), t.coefficient * c);
        }
    return r;
}

/// Class of a representative in R/(x1^l, ..., xi^l); the colimit over l with
/// transition maps r -> (x1...xi) r presents H^i_{(x1..xi)}(R).
class ColimitClass {
public:
    ColimitClass(Exponent level, Polynomial representative, std::size_t head_count)
        : level_(level), head_count_(head_count), rep_(reduce(representative, level, head_count)) {
        if (level_ < 1) throw InvalidArgument("colimit level must be >= 1");
        if (head_count_ < 1 || head_count_ > rep_.ring()->size()) throw InvalidArgument("head count must satisfy 1 <= i <= n");
    }

    Exponent level() const noexcept { return level_; }
    std::size_t head_count() const noexcept { return head_count_; }
    const Polynomial& representative() const noexcept { return rep_; }

    /// Image at level l+1 under multiplication by x1...xi.
    ColimitClass transition() const {
        const std::size_t n = rep_.ring()->size();
        Monomial m(n);
        for (std::size_t j = 0; j < head_count_; ++j) m[j] = 1;
        return ColimitClass(level_ + 1, rep_.times_term(m, 1), head_count_);
    }

private:
    static Polynomial reduce(const Polynomial& f, Exponent level, std::size_t head_count) {
        std::vector<Term> kept;
        for (const auto& t : f.terms()) {
            bool dead = false;
            for (std::size_t j = 0; j < head_count && j < t.monomial.size(); ++j)
                if (t.monomial[j] >= level) dead = true;
            if (!dead) kept.push_back(t);
        }
        return Polynomial::from_terms(f.ring(), std::move(kept));
    }

    Exponent level_;
    std::size_t head_count_;
    Polynomial rep_;
};

/// [r at level l] -> r * (x1...xi)^-l.
inline LaurentElement colimit_embed(const ColimitClass& c) {
    const Ring& ring = c.representative().ring();
    LaurentElement v(ring, c.head_count());
    for (const auto& t : c.representative().terms()) {
        SignedExponents e(ring->size());
        for (std::size_t j = 0; j < e.size(); ++j) {
            e[j] = static_cast<std::int64_t>(t.monomial[j]);
            if (j < c.head_count()) e[j] -= static_cast<std::int64_t>(c.level());
        }
        v.add_term(std::move(e), t.coefficient);
    }
    return v;
}

struct ImageSearchResult {
    bool found = false;
    std::optional<LaurentElement> witness;
    /// Box radius searched: head exponents in [-box, -1], tail in [0, box].
    Exponent box = 0;
};

inline constexpr std::size_t default_box_unknown_cap = 40'000;

/// Looks for w supported in the exponent box with f . w = target, by exact
/// linear algebra over the box. A negative answer only covers the box.
inline ImageSearchResult image_membership_bounded(const Polynomial& f, const LaurentElement& target, Exponent box,
                                                  std::size_t unknown_cap = default_box_unknown_cap) {
    if (!same_ring(f.ring(), target.ring())) throw ContextMismatch("polynomial and target live in different rings");
    if (box < 1) throw InvalidArgument("box radius must be >= 1");
    const Ring& ring = target.ring();
    const std::size_t n = ring->size();
    const std::size_t i = target.head_count();

    double count = 1;
    for (std::size_t j = 0; j < n; ++j) count *= static_cast<double>(j < i ? box : box + 1);
    if (count > static_cast<double>(unknown_cap))
        throw ResourceBound("box of radius " + std::to_string(box) + " has too many unknowns");

    std::vector<SignedExponents> unknowns;
    SignedExponents e(n);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == n) {
            unknowns.push_back(e);
            return;
        }
        std::int64_t lo = j < i ? -static_cast<std::int64_t>(box) : 0;
        std::int64_t hi = j < i ? -1 : static_cast<std::int64_t>(box);
        for (std::int64_t x = lo; x <= hi; ++x) {
            e[j] = x;
            self(self, j + 1);
        }
    };
    rec(rec, 0);

    std::map<SignedExponents, std::size_t> equation;
    auto row_of = [&](const SignedExponents& m) { return equation.emplace(m, equation.size()).first->second; };
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;
    for (const auto& u : unknowns) {
        auto image = laurent_act(f, LaurentElement::basis(ring, i, u));
        std::vector<std::pair<std::size_t, Rational>> col;
        for (const auto& [m, c] : image.terms()) col.emplace_back(row_of(m), c);
        columns.push_back(std::move(col));
    }
    for (const auto& [m, c] : target.terms()) row_of(m);
    std::vector<SparseRow> rows(equation.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto& [r, v] : columns[c]) rows[r].emplace_back(c, v);
    std::vector<Rational> rhs(equation.size(), 0);
    for (const auto& [m, c] : target.terms()) rhs[equation[m]] = c;

    ImageSearchResult result;
    result.box = box;
    auto solution = solve_linear(rows, rhs, unknowns.size(), ring->domain());
    if (!solution) return result;
    LaurentElement w(ring, i);
    for (std::size_t c = 0; c < unknowns.size(); ++c)
        if ((*solution)[c] != 0) w.add_term(unknowns[c], (*solution)[c]);
    result.found = true;
    result.witness = std::move(w);
    return result;
}

} // namespace mlab

#endif
