#include <gtest/gtest.h>

#include "mlab/decompose.hpp"
#include "mlab/parse.hpp"
#include "mlab/scalar.hpp"
#include "support.hpp"

using namespace mlab;
using mlab::test::mono;
using mlab::test::P;

namespace {

Ring qq(std::vector<std::string> names) { return make_ring(std::move(names), CoefficientDomain::rationals()); }

std::vector<Ring> domain_rings() {
    return {make_ring({"x", "y", "z"}, CoefficientDomain::rationals()),
            make_ring({"x", "y", "z"}, CoefficientDomain::prime_field(101)),
            make_ring({"x", "y", "z"}, CoefficientDomain::p_integral(5))};
}

} // namespace

TEST(Parse, TermsOfSimpleExpression) {
    Ring r = qq({"x1", "x2"});
    Polynomial f = P("x1^2*x2 - 3*x1", r);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.coefficient(mono({2, 1})), 1);
    EXPECT_EQ(f.coefficient(mono({1, 0})), -3);
}

TEST(Parse, ZeroAndBinomials) {
    Ring r = qq({"y1", "y2", "y3", "y4"});
    EXPECT_TRUE(P("0", r).is_zero());
    Polynomial f = P("y1*y4 + y2*y3", r);
    ASSERT_EQ(f.size(), 2u);
    for (const auto& t : f.terms()) EXPECT_EQ(t.coefficient, 1);
}

TEST(Parse, PrecedenceAndUnaryMinus) {
    Ring r = qq({"x", "y"});
    EXPECT_EQ(P("-x^2", r), -P("x*x", r));
    EXPECT_EQ(P("2*x^2*3", r), P("6*x*x", r));
    EXPECT_EQ(P("(x+y)^2", r), P("x^2 + 2*x*y + y^2", r));
    EXPECT_EQ(P("x - -y", r), P("x + y", r));
    EXPECT_EQ(P("3/4*x", r).coefficient(mono({1, 0})), Rational(3, 4));
}

TEST(Parse, ErrorsCarryPositions) {
    Ring r = qq({"x", "y"});
    try {
        P("x + z", r);
        FAIL();
    } catch (const UnknownVariable& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    try {
        P("x + * y", r);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(P("(x + y", r), ParseError);
    EXPECT_THROW(P("x^-1", r), ParseError);
    EXPECT_THROW(P("", r), ParseError);
    EXPECT_THROW(P("1/0", r), ParseError);
}

TEST(Parse, RingSpecs) {
    EXPECT_EQ(parse_ring("QQ[x1,x2]")->size(), 2u);
    EXPECT_EQ(parse_ring("F101[x,y]")->domain(), CoefficientDomain::prime_field(101));
    EXPECT_EQ(parse_ring("Zp(2)[x1,x2]")->domain(), CoefficientDomain::p_integral(2));
    EXPECT_THROW(parse_ring("F100[x]"), ParseError);
    EXPECT_THROW(parse_ring("QQ[x,x]"), ParseError);
    EXPECT_THROW(parse_ring("RR[x]"), ParseError);
    EXPECT_THROW(parse_ring("QQ[]"), ParseError);
    EXPECT_THROW(parse_ring("QQ[a,b,c,d,e,f,g,h,i,j,k,l,m,n,o,p,q]"), ParseError);
}

TEST(Parse, IntegerDomainRejectsFractions) {
    Ring r = parse_ring("Zp(3)[x]");
    EXPECT_THROW(P("x/2", r), ParseError);
    EXPECT_THROW(P("1/2*x", r), ParseError);
    EXPECT_NO_THROW(P("6*x - 9", r));
}

TEST(Parse, FormatParseRoundTrip) {
    gen::Rng rng(7);
    for (const Ring& r : domain_rings()) {
        for (int k = 0; k < 200; ++k) {
            Polynomial f = gen::random_polynomial(rng, r, 4, 6);
            EXPECT_EQ(P(to_string(f).c_str(), r), f) << to_string(f);
        }
    }
}

TEST(Arithmetic, Examples) {
    Ring r = qq({"x"});
    EXPECT_EQ(P("(x+1)", r) * P("x-1", r), P("x^2-1", r));
    EXPECT_TRUE((P("x+1", r) * P("0", r)).is_zero());
    Ring y = qq({"y1", "y2", "y3", "y4"});
    EXPECT_EQ(P("y1*y3", y) * P("y2*y4", y), P("y1*y2*y3*y4", y));
    EXPECT_EQ(pow(P("x+1", r), 3), P("x^3 + 3*x^2 + 3*x + 1", r));
    EXPECT_EQ(pow(P("x", r), 0), P("1", r));
}

TEST(Arithmetic, ContextMismatch) {
    Ring a = qq({"x"});
    Ring b = qq({"y"});
    EXPECT_THROW(P("x", a) + P("y", b), ContextMismatch);
    EXPECT_THROW(P("x", a) * P("y", b), ContextMismatch);
    // equal rings by value are compatible
    EXPECT_NO_THROW(P("x", a) + P("x", qq({"x"})));
}

TEST(Arithmetic, PrimeFieldWrapsAround) {
    Ring r = parse_ring("F7[x]");
    EXPECT_EQ(P("3*x", r) + P("4*x", r), P("0", r));
    EXPECT_EQ(P("1/2", r), P("4", r));
}

TEST(Arithmetic, RingAxiomsOnRandomTriples) {
    gen::Rng rng(2024);
    for (const Ring& r : domain_rings()) {
        for (int k = 0; k < 500; ++k) {
            Polynomial f = gen::random_polynomial(rng, r, 3, 4);
            Polynomial g = gen::random_polynomial(rng, r, 3, 4);
            Polynomial h = gen::random_polynomial(rng, r, 3, 4);
            ASSERT_EQ((f + g) + h, f + (g + h));
            ASSERT_EQ((f * g) * h, f * (g * h));
            ASSERT_EQ(f * (g + h), f * g + f * h);
            ASSERT_EQ(f + g, g + f);
            ASSERT_EQ(f * g, g * f);
            ASSERT_TRUE((f - f).is_zero());
        }
    }
}

TEST(Arithmetic, ExactDivision) {
    Ring r = qq({"x", "y"});
    EXPECT_EQ(divide_exact(P("x^2*y - y", r), P("x - 1", r)), P("x*y + y", r));
    EXPECT_THROW(divide_exact(P("x^2 + 1", r), P("x - 1", r)), InvalidArgument);
}

TEST(Pruefer, Normalization) {
    auto s = PrueferScalar::make(2, 3, 4);
    EXPECT_EQ(s.denominator_exponent(), 1u);
    EXPECT_EQ(s.numerator(), 1);
    EXPECT_TRUE(PrueferScalar::make(2, 2, 4).is_zero());
    auto half = PrueferScalar::make(2, 1, 1);
    EXPECT_TRUE((half + half).is_zero());
    EXPECT_EQ(PrueferScalar::make(5, 1, 7), PrueferScalar::make(5, 1, 2));
    EXPECT_EQ(PrueferScalar::make(5, 2, -1).numerator(), -1);
    EXPECT_EQ(PrueferScalar::make(5, 2, 24).numerator(), -1);
    EXPECT_EQ(PrueferScalar::make(2, 1, -1), half);
}

TEST(Pruefer, HugeDenominatorStaysCheap) {
    auto s = PrueferScalar::make(5, factorial(11), 1);
    EXPECT_EQ(s.denominator_exponent(), 39916800u);
    EXPECT_EQ((Integer(-3) * s).numerator(), -3);
    EXPECT_TRUE(s.times_prime_power(factorial(11)).is_zero());
    EXPECT_EQ(s.times_prime_power(factorial(11) - 1), PrueferScalar::make(5, 1, 1));
}

TEST(Pruefer, GroupLawsOnRandomSamples) {
    gen::Rng rng(99);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        for (int k = 0; k < 500; ++k) {
            auto draw = [&] {
                return PrueferScalar::make(p, static_cast<std::uint64_t>(gen::uniform_int(rng, 0, 6)),
                                           Integer(static_cast<long>(gen::uniform_int(rng, -400, 400))));
            };
            auto a = draw(), b = draw(), c = draw();
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ(a + b, b + a);
            ASSERT_TRUE((a - a).is_zero());
            // p^k kills an element with denominator exponent k
            ASSERT_TRUE(a.times_prime_power(a.denominator_exponent()).is_zero());
            ASSERT_TRUE((integer_power(p, a.denominator_exponent()) * a).is_zero());
            // canonical forms are unique: equal values have equal fields
            auto a2 = PrueferScalar::make(p, a.denominator_exponent() + 2,
                                          a.numerator() * integer_power(p, 2) + integer_power(p, a.denominator_exponent() + 2));
            if (!a.is_zero()) {
                ASSERT_EQ(a2.denominator_exponent(), a.denominator_exponent());
                ASSERT_EQ(a2.numerator(), a.numerator());
            }
        }
    }
}

TEST(Decompose, Examples) {
    Ring r = qq({"x1", "x2"});
    auto d = min_support_decompose(P("x1^3 + x1^2*x2", r), 1);
    EXPECT_EQ(d.a, 2u);
    EXPECT_EQ(d.heads[0], P("1", r));
    EXPECT_EQ(d.tail, P("x2", r));
    EXPECT_EQ(d.b, std::vector<Exponent>{1});

    d = min_support_decompose(P("x1", r), 1);
    EXPECT_EQ(d.a, 1u);
    EXPECT_TRUE(d.heads[0].is_zero());
    EXPECT_EQ(d.tail, P("1", r));
    EXPECT_EQ(d.b, std::vector<Exponent>{0});

    d = min_support_decompose(P("x1 - x2", r), 1);
    EXPECT_EQ(d.a, 0u);
    EXPECT_EQ(d.heads[0], P("1", r));
    EXPECT_EQ(d.tail, P("-x2", r));
    EXPECT_EQ(d.b, std::vector<Exponent>{1});
}

TEST(Decompose, NormalizationEqualizesHeadTuple) {
    Ring r = qq({"x1", "x2", "x3"});
    auto d = min_support_decompose(P("x1*x2^3*x3 + x1^2*x2", r), 2);
    // lex smallest head tuple is (1,3); lifted by x1^2 to (3,3)
    EXPECT_EQ(d.a, 3u);
    EXPECT_EQ(d.normalized, P("x1^3*x2^3*x3 + x1^4*x2", r));
    EXPECT_EQ(d.tail, P("x3", r));
    EXPECT_EQ(d.reassemble(), d.normalized);
}

TEST(Decompose, Errors) {
    Ring r = qq({"x1", "x2"});
    EXPECT_THROW(min_support_decompose(P("0", r), 1), InvalidArgument);
    EXPECT_THROW(min_support_decompose(P("x1", r), 0), InvalidArgument);
    EXPECT_THROW(min_support_decompose(P("x1", r), 2), InvalidArgument);
}

TEST(Decompose, ReassemblyOnRandomPolynomials) {
    gen::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 4));
        std::vector<std::string> names;
        for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
        Ring r = qq(names);
        std::size_t i = static_cast<std::size_t>(gen::uniform_int(rng, 1, static_cast<std::int64_t>(n) - 1));
        Polynomial f = gen::random_nonzero_polynomial(rng, r, 4, 5);
        auto d = min_support_decompose(f, i);
        ASSERT_EQ(d.reassemble(), d.normalized);
        ASSERT_FALSE(d.tail.is_zero());
        for (const auto& t : d.tail.terms())
            for (std::size_t j = 0; j < i; ++j) ASSERT_EQ(t.monomial[j], 0u);
        // b is componentwise minimal in the support of the tail
        for (const auto& t : d.tail.terms()) {
            bool below = true, equal = true;
            for (std::size_t j = i; j < n; ++j) {
                below = below && t.monomial[j] <= d.b[j - i];
                equal = equal && t.monomial[j] == d.b[j - i];
            }
            ASSERT_TRUE(!below || equal);
        }
    }
}

namespace {

// Independent oracle: first m >= a + 2 with s! >= b_max and s! - b_min > (s-1)!, s = m - a,
// evaluated with long double factorials.
Exponent bound_oracle(Exponent a, Exponent b_min, Exponent b_max) {
    for (Exponent m = 0;; ++m) {
        if (m < a + 2) continue;
        long double big = 1, small = 1;
        for (Exponent k = 1; k <= m - a; ++k) big *= static_cast<long double>(k);
        for (Exponent k = 1; k + 1 <= m - a; ++k) small *= static_cast<long double>(k);
        if (big >= static_cast<long double>(b_max) && big - static_cast<long double>(b_min) > small) return m;
    }
}

MinSupportDecomposition fake(Exponent a, std::vector<Exponent> b) {
    Ring r = make_ring({"x", "y"}, CoefficientDomain::rationals());
    MinSupportDecomposition d{1, a, Polynomial(r), {}, Polynomial(r), std::move(b), 1};
    return d;
}

} // namespace

TEST(WitnessBound, Examples) {
    EXPECT_EQ(witness_level_bound(fake(0, {1})), 3u);
    EXPECT_EQ(witness_level_bound(fake(0, {0})), 2u);
    // a = 1, b = 0: (m-1)! - 0 > (m-2)! first holds at m = 3
    EXPECT_EQ(witness_level_bound(fake(1, {0})), 3u);
    EXPECT_EQ(bound_oracle(1, 0, 0), 3u);
}

TEST(WitnessBound, MatchesOracleAndPersists) {
    for (Exponent a = 0; a < 4; ++a)
        for (Exponent b1 = 0; b1 < 30; ++b1)
            for (Exponent b2 = 0; b2 < 30; b2 += 7) {
                auto d = fake(a, {b1, b2});
                Exponent m = witness_level_bound(d);
                ASSERT_GE(m, 2u);
                ASSERT_EQ(m, bound_oracle(a, std::min(b1, b2), std::max(b1, b2)));
                Exponent bmin = std::min(b1, b2);
                for (Exponent mm = m; mm < m + 6; ++mm)
                    ASSERT_GT(factorial(mm - a) - bmin, factorial(mm - a - 1));
                // monotone in b
                ASSERT_LE(witness_level_bound(fake(a, {b1, b2})), witness_level_bound(fake(a, {b1 + 1, b2 + 1})));
            }
}
