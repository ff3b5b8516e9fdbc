#ifndef MLAB_RING_HPP
#define MLAB_RING_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/scalar.hpp"

namespace mlab {

/// Cap on user-declared variables; internal rings may add auxiliary ones.
inline constexpr std::size_t max_variables = 16;
inline constexpr std::size_t max_internal_variables = 32;

using Exponent = std::uint64_t;

inline Exponent checked_add(Exponent a, Exponent b) {
    if (a > std::numeric_limits<Exponent>::max() - b) throw ResourceBound("exponent overflow");
    return a + b;
}

inline Exponent checked_mul(Exponent a, Exponent b) {
    if (a != 0 && b > std::numeric_limits<Exponent>::max() / a) throw ResourceBound("exponent overflow");
    return a * b;
}

/// n! with overflow detection (fits up to 20!).
inline Exponent factorial(Exponent n) {
    Exponent r = 1;
    for (Exponent k = 2; k <= n; ++k) r = checked_mul(r, k);
    return r;
}

/// Exponent vector x1^e1 ... xn^en.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : e_(n, 0) {}
    explicit Monomial(std::vector<Exponent> e) : e_(std::move(e)) {}

    static Monomial variable(std::size_t n, std::size_t index, Exponent power = 1) {
        Monomial m(n);
        m.e_[index] = power;
        return m;
    }

    std::size_t size() const noexcept { return e_.size(); }
    Exponent operator[](std::size_t i) const { return e_[i]; }
    Exponent& operator[](std::size_t i) { return e_[i]; }
    const std::vector<Exponent>& exponents() const noexcept { return e_; }

    Exponent degree() const {
        Exponent d = 0;
        for (auto x : e_) d = checked_add(d, x);
        return d;
    }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    /// Variables with positive exponent, as a bit mask.
    std::uint32_t support() const {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0) s |= (std::uint32_t{1} << i);
        return s;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = checked_add(a.e_[i], b.e_[i]);
        return r;
    }

    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support() & b.support()) == 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<Exponent> e_;
};

enum class OrderKind { lex, grevlex, block_eliminate };

/// Monomial order. `block_eliminate(k)` compares the first k variables by
/// grevlex first and breaks ties by grevlex on the remaining ones.
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;
    std::size_t block = 0;

    static MonomialOrder lex() { return {OrderKind::lex, 0}; }
    static MonomialOrder grevlex() { return {OrderKind::grevlex, 0}; }
    static MonomialOrder block_eliminate(std::size_t k) { return {OrderKind::block_eliminate, k}; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        switch (kind) {
        case OrderKind::lex:
            return a.exponents() <=> b.exponents();
        case OrderKind::grevlex:
            return grevlex_range(a, b, 0, a.size());
        case OrderKind::block_eliminate: {
            auto c = grevlex_range(a, b, 0, block);
            if (c != 0) return c;
            return grevlex_range(a, b, block, a.size());
        }
        }
        return std::strong_ordering::equal;
    }

    std::string name() const {
        switch (kind) {
        case OrderKind::lex: return "lex";
        case OrderKind::grevlex: return "grevlex";
        case OrderKind::block_eliminate: return "block-eliminate(" + std::to_string(block) + ")";
        }
        return "?";
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    static std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                              std::size_t hi) {
        Exponent da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da <=> db;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return b[i] <=> a[i];
        return std::strong_ordering::equal;
    }
};

/// Polynomial ring k[x1..xn] over one of the supported coefficient domains.
class RingContext {
public:
    RingContext(std::vector<std::string> names, CoefficientDomain domain,
                MonomialOrder order = MonomialOrder::grevlex())
        : names_(std::move(names)), domain_(domain), order_(order) {
        if (names_.empty()) throw InvalidArgument("a ring needs at least one variable");
        if (names_.size() > max_internal_variables)
            throw InvalidArgument("at most " + std::to_string(max_internal_variables) + " variables supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!valid_identifier(names_[i])) throw InvalidArgument("invalid variable name '" + names_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw InvalidArgument("duplicate variable name '" + names_[i] + "'");
        }
        if (order_.kind == OrderKind::block_eliminate && order_.block > names_.size())
            throw InvalidArgument("elimination block larger than the variable count");
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const CoefficientDomain& domain() const noexcept { return domain_; }
    const MonomialOrder& order() const noexcept { return order_; }

    /// Index of a variable, or -1.
    int index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    std::string to_string() const {
        std::string s = domain_.name() + "[";
        for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
        return s + "]";
    }

    friend bool operator==(const RingContext&, const RingContext&) = default;

    static bool valid_identifier(std::string_view s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    }

private:
    std::vector<std::string> names_;
    CoefficientDomain domain_;
    MonomialOrder order_;
};

using Ring = std::shared_ptr<const RingContext>;

inline Ring make_ring(std::vector<std::string> names, CoefficientDomain domain,
                      MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const RingContext>(std::move(names), domain, order);
}

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

/// Same variables and domain with a different monomial order.
inline Ring with_order(const Ring& r, MonomialOrder order) {
    if (r->order() == order) return r;
    return make_ring(r->names(), r->domain(), order);
}

/// Parses `QQ[x1,x2]`, `F101[x,y]` or `Zp(2)[x1,x2]`.
inline Ring parse_ring(std::string_view text, MonomialOrder order = MonomialOrder::grevlex()) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_number = [&]() -> std::uint64_t {
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) throw ParseError("number too large", start);
            v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        }
        if (pos == start) throw ParseError("expected a number", start);
        return v;
    };
    skip();
    std::size_t domain_pos = pos;
    auto domain = CoefficientDomain::rationals();
    try {
        if (text.substr(pos, 2) == "QQ") {
            pos += 2;
        } else if (text.substr(pos, 3) == "Zp(") {
            pos += 3;
            std::uint64_t p = read_number();
            if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
            ++pos;
            domain = CoefficientDomain::p_integral(p);
        } else if (pos < text.size() && text[pos] == 'F') {
            ++pos;
            domain = CoefficientDomain::prime_field(read_number());
        } else {
            throw ParseError("unknown coefficient domain (expected QQ, F<q> or Zp(<p>))", pos);
        }
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), domain_pos);
    }
    skip();
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    std::vector<std::string> names;
    for (;;) {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        std::string name(text.substr(start, pos - start));
        if (!RingContext::valid_identifier(name)) throw ParseError("expected a variable name", start);
        names.push_back(std::move(name));
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < text.size() && text[pos] == ']') {
            ++pos;
            break;
        }
        throw ParseError("expected ',' or ']'", pos);
    }
    skip();
    if (pos != text.size()) throw ParseError("trailing characters after ring", pos);
    if (names.size() > max_variables)
        throw ParseError("at most " + std::to_string(max_variables) + " variables supported", 0);
    try {
        return make_ring(std::move(names), domain, order);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0);
    }
}

} // namespace mlab

#endif
