#ifndef MLAB_PARSE_HPP
#define MLAB_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/polynomial.hpp"

namespace mlab {

class UnknownVariable : public ParseError {
public:
    UnknownVariable(const std::string& name, std::size_t position)
        : ParseError("unknown variable '" + name + "'", position) {}
};

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | '+' unary | power
// power  := atom ('^' natural)?
// atom   := number ('/' number)? | identifier | '(' expr ')'
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, Ring ring) : text_(text), ring_(std::move(ring)) {}

    Polynomial parse() {
        skip();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Polynomial p = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip();
            std::size_t at = pos_;
            if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", at);
            Integer e = digits();
            if (!e.fits_ulong_p()) throw ParseError("exponent too large", at);
            return pow(base, e.get_ui());
        }
        return base;
    }

    Integer digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected a number", start);
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Polynomial atom() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            Rational value(digits());
            skip();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                Integer den = digits();
                if (den == 0) throw ParseError("zero denominator", start);
                value /= Rational(den);
            }
            try {
                return Polynomial::constant(ring_, value);
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), start);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            int idx = ring_->index_of(name);
            if (idx < 0) throw UnknownVariable(name, start);
            return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    Ring ring_;
    std::size_t pos_ = 0;
};

// Splits on `sep` outside parentheses; returns pieces with their offsets.
inline std::vector<std::pair<std::string, std::size_t>> split_top_level(std::string_view text, char sep) {
    std::vector<std::pair<std::string, std::size_t>> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == sep && depth == 0)) {
            out.emplace_back(std::string(text.substr(start, i - start)), start);
            start = i + 1;
        } else if (text[i] == '(') {
            ++depth;
        } else if (text[i] == ')') {
            if (--depth < 0) throw ParseError("unbalanced ')'", i);
        }
    }
    if (depth != 0) throw ParseError("unbalanced '('", text.size());
    return out;
}

} // namespace detail

inline Polynomial parse_poly(std::string_view text, const Ring& ring) {
    return detail::ExpressionParser(text, ring).parse();
}

/// Comma-separated generator list, e.g. "y1*y3, y2*y4".
inline std::vector<Polynomial> parse_poly_list(std::string_view text, const Ring& ring) {
    std::vector<Polynomial> out;
    for (auto& [piece, offset] : detail::split_top_level(text, ',')) {
        try {
            out.push_back(parse_poly(piece, ring));
        } catch (const ParseError& e) {
            throw ParseError(std::string("in generator list: ") + e.what(), offset + e.position());
        }
    }
    return out;
}

struct SignedTerm {
    std::vector<std::int64_t> exponents;
    Rational coefficient;
};

/// Sums of monomials with integer (possibly negative) exponents, such as
/// "x1^-2*x2^-1 - 3/2*x1^-1*x2^4". Products only, no parentheses.
inline std::vector<SignedTerm> parse_signed_terms(std::string_view text, const Ring& ring) {
    std::vector<SignedTerm> out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto digits = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a number", start);
        return std::string(text.substr(start, pos - start));
    };
    skip();
    if (text.substr(pos) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (pos >= text.size()) {
            if (first) throw ParseError("empty expression", pos);
            break;
        }
        bool negative = false;
        if (text[pos] == '+' || text[pos] == '-') {
            negative = text[pos] == '-';
            ++pos;
            skip();
        } else if (!first) {
            throw ParseError("expected '+' or '-'", pos);
        }
        first = false;
        SignedTerm term{std::vector<std::int64_t>(ring->size(), 0), Rational(negative ? -1 : 1)};
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                Rational c{Integer(digits())};
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    Integer den(digits());
                    if (den == 0) throw ParseError("division by zero", pos);
                    c /= den;
                }
                term.coefficient *= c;
            } else {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                std::string name(text.substr(start, pos - start));
                if (name.empty()) throw ParseError("expected a factor", start);
                int index = ring->index_of(name);
                if (index < 0) throw UnknownVariable(name, start);
                std::int64_t e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    bool neg = pos < text.size() && text[pos] == '-';
                    if (neg) ++pos;
                    std::size_t at = pos;
                    std::string d = digits();
                    if (d.size() > 17) throw ParseError("exponent too large", at);
                    e = std::stoll(d) * (neg ? -1 : 1);
                }
                term.exponents[static_cast<std::size_t>(index)] += e;
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        out.push_back(std::move(term));
    }
    return out;
}

/// Formats x^e with signed exponents: `x1^-2*x3`. Returns "" for the unit monomial.
inline std::string format_monomial(const RingContext& ring, std::span<const std::int64_t> exps) {
    std::string s;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += ring.name(i);
        if (exps[i] != 1) s += "^" + std::to_string(exps[i]);
    }
    return s;
}

inline std::string format_monomial(const RingContext& ring, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += ring.name(i);
        if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

/// Joins signed terms: "x1^2*x2 - 3*x1". `coefficient` is the magnitude text
/// ("" for 1), `negative` its sign.
struct FormattedTerm {
    bool negative = false;
    std::string coefficient;
    std::string monomial;
};

inline std::string join_terms(const std::vector<FormattedTerm>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i == 0) s += t.negative ? "-" : "";
        else s += t.negative ? " - " : " + ";
        if (t.monomial.empty()) s += t.coefficient.empty() ? "1" : t.coefficient;
        else if (t.coefficient.empty()) s += t.monomial;
        else s += t.coefficient + "*" + t.monomial;
    }
    return s;
}

inline std::string to_string(const Polynomial& f) {
    std::vector<FormattedTerm> out;
    for (const auto& t : f.terms()) {
        FormattedTerm ft;
        ft.negative = t.coefficient < 0;
        Rational mag = abs(t.coefficient);
        ft.coefficient = mag == 1 ? "" : mag.get_str();
        ft.monomial = format_monomial(*f.ring(), t.monomial);
        out.push_back(std::move(ft));
    }
    return join_terms(out);
}

inline std::string to_string(const std::vector<Polynomial>& fs) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + to_string(fs[i]);
    return s;
}

} // namespace mlab

#endif
