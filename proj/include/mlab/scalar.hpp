#ifndef MLAB_SCALAR_HPP
#define MLAB_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "mlab/error.hpp"

namespace mlab {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline Integer integer_power(std::uint64_t base, std::uint64_t exponent) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

enum class DomainKind { rational, prime_field, p_integral };

/// Coefficient domain of a ring. Every coefficient is stored as a GMP rational;
/// prime-field elements are kept as representatives in [0, q), p-integral
/// coefficients are plain integers (the p-adic integers restricted to Z).
class CoefficientDomain {
public:
    static CoefficientDomain rationals() { return CoefficientDomain(DomainKind::rational, 0); }

    static CoefficientDomain prime_field(std::uint64_t q) {
        if (!is_prime(q) || q >= (std::uint64_t{1} << 31))
            throw InvalidArgument("prime field modulus must be a prime below 2^31, got " +
                                  std::to_string(q));
        return CoefficientDomain(DomainKind::prime_field, static_cast<std::uint32_t>(q));
    }

    static CoefficientDomain p_integral(std::uint64_t p) {
        if (!is_prime(p) || p >= (std::uint64_t{1} << 31))
            throw InvalidArgument("p-integral domain needs a prime p, got " + std::to_string(p));
        return CoefficientDomain(DomainKind::p_integral, static_cast<std::uint32_t>(p));
    }

    DomainKind kind() const noexcept { return kind_; }
    std::uint32_t prime() const noexcept { return prime_; }
    bool is_field() const noexcept { return kind_ != DomainKind::p_integral; }

    /// Brings `x` into canonical form for this domain.
    void normalize(Rational& x) const {
        switch (kind_) {
        case DomainKind::rational:
            return;
        case DomainKind::prime_field: {
            Integer q = prime_;
            Integer num = x.get_num() % q;
            Integer den = x.get_den() % q;
            if (den == 0) throw InvalidArgument("division by zero in F" + std::to_string(prime_));
            Integer inv;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
            Integer r = (num * inv) % q;
            if (r < 0) r += q;
            x = Rational(r);
            return;
        }
        case DomainKind::p_integral:
            if (x.get_den() != 1)
                throw InvalidArgument("coefficients over Zp(" + std::to_string(prime_) +
                                      ") must be integers");
            return;
        }
    }

    Rational normalized(Rational x) const {
        normalize(x);
        return x;
    }

    Rational inverse(const Rational& x) const {
        if (x == 0) throw InvalidArgument("inverse of zero");
        if (!is_field()) throw InvalidArgument("inverse requested in a non-field domain");
        Rational r = 1 / x;
        normalize(r);
        return r;
    }

    std::string name() const {
        switch (kind_) {
        case DomainKind::rational: return "QQ";
        case DomainKind::prime_field: return "F" + std::to_string(prime_);
        case DomainKind::p_integral: return "Zp(" + std::to_string(prime_) + ")";
        }
        return "?";
    }

    friend bool operator==(const CoefficientDomain&, const CoefficientDomain&) = default;

private:
    CoefficientDomain(DomainKind kind, std::uint32_t prime) : kind_(kind), prime_(prime) {}

    DomainKind kind_;
    std::uint32_t prime_;
};

/// Element u * p^-k of the Pruefer group Q_p/Z_p.
///
/// Canonical form: k == 0 and u == 0 for zero; otherwise p does not divide u and
/// u is the symmetric residue modulo p^k, i.e. -p^k/2 < u <= p^k/2. The symmetric
/// range lets small numerators avoid ever materializing p^k, which matters when k
/// is a factorial like 11!.
class PrueferScalar {
public:
    PrueferScalar() = default;

    static PrueferScalar zero(std::uint64_t p) {
        PrueferScalar s;
        s.p_ = p;
        return s;
    }

    /// Canonical representative of u * p^-k.
    static PrueferScalar make(std::uint64_t p, std::uint64_t k, Integer u) {
        if (!is_prime(p)) throw InvalidArgument("Pruefer scalar needs a prime, got " + std::to_string(p));
        PrueferScalar s;
        s.p_ = p;
        if (k == 0 || u == 0) return s;
        Integer stripped;
        Integer prime = static_cast<unsigned long>(p);
        auto removed = mpz_remove(stripped.get_mpz_t(), u.get_mpz_t(), prime.get_mpz_t());
        if (removed >= k) return s;
        s.k_ = k - removed;
        s.u_ = std::move(stripped);
        s.reduce();
        return s;
    }

    std::uint64_t prime() const noexcept { return p_; }
    std::uint64_t denominator_exponent() const noexcept { return k_; }
    const Integer& numerator() const noexcept { return u_; }
    bool is_zero() const noexcept { return k_ == 0; }

    PrueferScalar operator-() const {
        PrueferScalar s = *this;
        s.u_ = -s.u_;
        s.reduce();
        return s;
    }

    friend PrueferScalar operator+(const PrueferScalar& a, const PrueferScalar& b) {
        if (a.is_zero()) return b.with_prime(a.p_);
        if (b.is_zero()) return a.with_prime(b.p_);
        if (a.p_ != b.p_) throw ContextMismatch("adding Pruefer scalars for different primes");
        std::uint64_t k = std::max(a.k_, b.k_);
        Integer u = a.u_ * integer_power(a.p_, k - a.k_) + b.u_ * integer_power(b.p_, k - b.k_);
        return make(a.p_, k, std::move(u));
    }

    friend PrueferScalar operator-(const PrueferScalar& a, const PrueferScalar& b) { return a + (-b); }

    /// Action of an integer (an element of Z inside the p-adic integers).
    friend PrueferScalar operator*(const Integer& c, const PrueferScalar& s) {
        if (s.is_zero() || c == 0) return zero(s.p_);
        return make(s.p_, s.k_, c * s.u_);
    }

    /// Multiplication by p^t lowers the denominator exponent by t.
    PrueferScalar times_prime_power(std::uint64_t t) const {
        if (is_zero() || t >= k_) return zero(p_);
        return make(p_, k_ - t, u_);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        return u_.get_str() + "/" + std::to_string(p_) + "^" + std::to_string(k_);
    }

    friend bool operator==(const PrueferScalar& a, const PrueferScalar& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.p_ == b.p_ && a.k_ == b.k_ && a.u_ == b.u_;
    }

private:
    PrueferScalar with_prime(std::uint64_t p) const {
        PrueferScalar s = *this;
        if (s.p_ == 0) s.p_ = p;
        return s;
    }

    // Moves u into (-p^k/2, p^k/2]. Skips computing p^k when |u| is clearly small.
    void reduce() {
        if (k_ == 0) {
            u_ = 0;
            return;
        }
        double modulus_bits = static_cast<double>(k_) * std::log2(static_cast<double>(p_));
        double u_bits = static_cast<double>(mpz_sizeinbase(u_.get_mpz_t(), 2));
        if (u_bits + 2.0 < modulus_bits) return;
        Integer modulus = integer_power(p_, k_);
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), u_.get_mpz_t(), modulus.get_mpz_t());
        if (2 * r > modulus) r -= modulus;
        u_ = std::move(r);
        if (u_ == 0) k_ = 0;
    }

    std::uint64_t p_ = 0;
    std::uint64_t k_ = 0;
    Integer u_ = 0;
};

} // namespace mlab

#endif
