#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zadic/errors.hpp"
#include "zadic/parse.hpp"

using namespace zadic;
using namespace zadic::arith;

namespace {

Poly P(const char* s)
{
    return parse_poly(s);
}

Rational Q(long n, long d = 1)
{
    return make_rational(n, d);
}

} // namespace

TEST(PadicVal, Examples)
{
    EXPECT_EQ(padic_val(18, 3), PValue::from_exponent(2));
    EXPECT_TRUE(padic_val(0, 3).is_zero());
    EXPECT_EQ(padic_val(Q(3, 2), 3), PValue::from_exponent(1));
    EXPECT_EQ(padic_val(Q(1, 9), 3), PValue::from_exponent(-2));
    EXPECT_THROW(padic_val(18, 4), InvalidInput);
    EXPECT_THROW(padic_val(18, 1), InvalidInput);
    EXPECT_THROW(padic_val(18, 999), InvalidInput);
    EXPECT_NO_THROW(padic_val(18, 997));
}

TEST(PadicVal, OrderIsOrderOfAbsoluteValues)
{
    PValue zero = PValue::zero();
    EXPECT_LT(zero, PValue::from_exponent(100));
    EXPECT_LT(PValue::from_exponent(2), PValue::from_exponent(1));
    EXPECT_LT(PValue::from_exponent(0), PValue::from_exponent(-1));
    EXPECT_EQ(PValue::from_exponent(2) * PValue::from_exponent(-3), PValue::from_exponent(-1));
    EXPECT_TRUE((zero * PValue::from_exponent(-3)).is_zero());
}

TEST(PadicVal, AgreesWithRepeatedDivision)
{
    Rng rng(11);
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int i = 0; i < 500; ++i) {
            Rational q = oracle::random_rational(rng, 2000);
            if (q == 0)
                continue;
            EXPECT_EQ(padic_val(q, p).exponent(), oracle::naive_val(q, p));
        }
    }
}

TEST(PadicVal, MultiplicativeAndUltrametric)
{
    Rng rng(12);
    for (long p : {3L, 5L}) {
        for (int i = 0; i < 1000; ++i) {
            Rational a = oracle::random_rational(rng, 500);
            Rational b = oracle::random_rational(rng, 500);
            EXPECT_EQ(padic_val(a * b, p), padic_val(a, p) * padic_val(b, p));
            PValue sum = padic_val(a + b, p);
            PValue bound = std::max(padic_val(a, p), padic_val(b, p));
            EXPECT_LE(sum, bound);
            if (padic_val(a, p) != padic_val(b, p))
                EXPECT_EQ(sum, bound);
        }
    }
}

TEST(PolyGcd, Examples)
{
    EXPECT_EQ(poly_gcd(P("t^2 - 1"), P("t - 1")), P("t - 1"));
    EXPECT_EQ(poly_gcd(P("t + 1"), P("t - 1")), Poly(1));
    EXPECT_EQ(poly_gcd(Poly(), P("t")), P("t"));
    EXPECT_EQ(poly_gcd(P("3*t + 6"), Poly()), P("t + 2"));
    EXPECT_THROW(poly_gcd(Poly(), Poly()), InvalidInput);
}

TEST(PolyGcd, DividesBothAndIsMaximal)
{
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        Poly common = oracle::random_poly(rng, 2, 5);
        Poly a = common * oracle::random_poly(rng, 3, 5);
        Poly b = common * oracle::random_poly(rng, 3, 5);
        if (a.is_zero() && b.is_zero())
            continue;
        Poly g = poly_gcd(a, b);
        EXPECT_EQ(g.lead(), 1);
        EXPECT_TRUE(divides(g, a));
        EXPECT_TRUE(divides(g, b));
        if (!common.is_zero())
            EXPECT_TRUE(divides(common, g));
    }
}

TEST(Bezout, Examples)
{
    std::vector<Poly> fs{P("t + 1"), P("t - 1")};
    auto g = bezout(fs);
    EXPECT_EQ(g[0], Poly(Q(1, 2)));
    EXPECT_EQ(g[1], Poly(Q(-1, 2)));

    std::vector<Poly> one_t{Poly(1), P("t")};
    auto h = bezout(one_t);
    EXPECT_EQ(h[0], Poly(1));
    EXPECT_EQ(h[1], Poly());

    std::vector<Poly> tt{P("t"), P("t")};
    EXPECT_THROW(bezout(tt), NoBezout);
    std::vector<Poly> zeros{Poly(), Poly()};
    EXPECT_THROW(bezout(zeros), NoBezout);
}

TEST(Bezout, IdentityHoldsForRandomCoprimeLists)
{
    Rng rng(14);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<Poly> fs;
        int n = static_cast<int>(rng.uniform(1, 4));
        for (int k = 0; k < n; ++k)
            fs.push_back(oracle::random_poly(rng, 3, 6));
        Poly g;
        for (const auto& f : fs)
            if (!f.is_zero())
                g = g.is_zero() ? f.monic() : poly_gcd(g, f);
        if (g.is_zero() || g.degree() > 0) {
            EXPECT_THROW(bezout(fs), NoBezout);
            continue;
        }
        auto cs = bezout(fs);
        std::vector<Rational> sum;
        for (size_t k = 0; k < fs.size(); ++k)
            sum = oracle::add_coeffs(sum, oracle::mul_coeffs(cs[k].coeffs(), fs[k].coeffs()));
        EXPECT_TRUE(oracle::coeffs_equal(sum, {Rational(1)}));
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(ContentVal, Examples)
{
    EXPECT_EQ(content_val(P("3*t + 9"), 3), PValue::from_exponent(1));
    EXPECT_EQ(content_val(P("t + 1/3"), 3), PValue::from_exponent(-1));
    EXPECT_EQ(content_val(P("5*(t^2 - 1)"), 5), PValue::from_exponent(1));
    EXPECT_TRUE(content_val(Poly(), 5).is_zero());
    EXPECT_FALSE(content_val(P("t"), 5).is_zero());
}

TEST(ContentVal, GaussLemma)
{
    Rng rng(15);
    for (long p : {3L, 5L, 7L}) {
        for (int i = 0; i < 400; ++i) {
            Poly f = oracle::random_poly(rng, 4, 30);
            Poly g = oracle::random_poly(rng, 4, 30);
            if (f.is_zero() || g.is_zero())
                continue;
            Poly fg(oracle::mul_coeffs(f.coeffs(), g.coeffs()));
            EXPECT_EQ(content_exp(fg, p), content_exp(f, p) + content_exp(g, p));
            EXPECT_EQ(content_exp(f, p), oracle::naive_content(f, p));
        }
    }
}

TEST(ReduceModP, Examples)
{
    EXPECT_EQ(reduce_mod_p(P("t^2 - 1 + 3"), 3), PolyFp(3, {2, 0, 1}));
    EXPECT_EQ(reduce_mod_p(P("t^2 - 1"), 5), PolyFp(5, {4, 0, 1}));
    EXPECT_THROW(reduce_mod_p(P("t/3"), 3), InvalidInput);
    EXPECT_THROW(reduce_mod_p(P("t"), 6), InvalidInput);
    EXPECT_THROW(PolyFp(3, {1}) + PolyFp(5, {1}), InvalidInput);
    EXPECT_EQ(reduce_mod_p(P("t^2 - 1 + 3"), 3).modulus(), 3);
}

TEST(ReduceModP, IsARingHomomorphism)
{
    Rng rng(16);
    for (long p : {3L, 5L, 11L}) {
        for (int i = 0; i < 300; ++i) {
            Poly f = oracle::random_p_integral_poly(rng, 4, 40, p);
            Poly g = oracle::random_p_integral_poly(rng, 4, 40, p);
            EXPECT_EQ(reduce_mod_p(f * g, p), reduce_mod_p(f, p) * reduce_mod_p(g, p));
            EXPECT_EQ(reduce_mod_p(f + g, p), reduce_mod_p(f, p) + reduce_mod_p(g, p));
            PolyFp r = reduce_mod_p(f, p);
            for (int k = 0; k <= f.degree(); ++k)
                EXPECT_EQ(r.coeff(k), oracle::brute_residue(f.coeff(k), p));
        }
    }
}

TEST(PolyFp, XgcdIdentity)
{
    Rng rng(17);
    for (long p : {3L, 7L}) {
        for (int i = 0; i < 200; ++i) {
            PolyFp a = reduce_mod_p(oracle::random_integer_poly(rng, 5, 20), p);
            PolyFp b = reduce_mod_p(oracle::random_integer_poly(rng, 5, 20), p);
            if (a.is_zero() && b.is_zero())
                continue;
            XgcdFp x = xgcd(a, b);
            EXPECT_EQ(x.s * a + x.t * b, x.g);
            EXPECT_EQ(x.g.lead(), 1);
            EXPECT_TRUE(rem(a, x.g).is_zero());
            EXPECT_TRUE(rem(b, x.g).is_zero());
        }
    }
}

TEST(IrreducibleQuadratic, Examples)
{
    EXPECT_TRUE(irreducible_quadratic_over_Q(P("t^2 + 2")));
    EXPECT_FALSE(irreducible_quadratic_over_Q(P("t^2 - 1")));
    EXPECT_FALSE(irreducible_quadratic_over_Q(P("t^2 - 4")));
    EXPECT_FALSE(irreducible_quadratic_over_Q(P("4*t^2 - 1/9")));
    EXPECT_TRUE(irreducible_quadratic_over_Q(P("t^2 - 2")));
    EXPECT_THROW(irreducible_quadratic_over_Q(P("t^3 - 1")), InvalidInput);
    EXPECT_THROW(irreducible_quadratic_over_Q(P("t - 1")), InvalidInput);
}

TEST(IrreducibleQuadratic, AgreesWithRationalRootSearch)
{
    // A quadratic with integer coefficients has a rational root a/b with
    // a | c0 and b | c2; search them all.
    Rng rng(18);
    for (int i = 0; i < 300; ++i) {
        long c0 = rng.uniform(-30, 30), c1 = rng.uniform(-30, 30), c2 = rng.uniform(1, 12);
        Poly f({Rational(c0), Rational(c1), Rational(c2)});
        bool has_root = c0 == 0;
        for (long a = 1; a <= std::abs(c0) && !has_root; ++a) {
            if (c0 % a)
                continue;
            for (long b = 1; b <= c2 && !has_root; ++b) {
                if (c2 % b)
                    continue;
                for (long s : {1L, -1L})
                    if (oracle::eval_coeffs(f.coeffs(), make_rational(s * a, b)) == 0)
                        has_root = true;
            }
        }
        EXPECT_EQ(irreducible_quadratic_over_Q(f), !has_root) << f.to_string();
    }
}

TEST(RatFunc, NormalFormInvariants)
{
    RatFunc r(P("2*t^2 - 2"), P("4*t + 4"));
    EXPECT_EQ(r.num(), P("1/2*t - 1/2"));
    EXPECT_EQ(r.den(), Poly(1));
    RatFunc s(P("3"), P("2*t"));
    EXPECT_EQ(s.den(), P("t"));
    EXPECT_EQ(s.num(), Poly(Q(3, 2)));
    EXPECT_THROW(RatFunc(P("t"), Poly()), InvalidInput);
}

TEST(RatFunc, NormalizeIsIdempotentAndMatchesCrossMultiplication)
{
    Rng rng(19);
    for (int i = 0; i < 500; ++i) {
        Poly n = oracle::random_poly(rng, 4, 9), d = oracle::random_poly(rng, 3, 9);
        if (d.is_zero())
            continue;
        Poly c = oracle::random_poly(rng, 2, 9);
        if (c.is_zero())
            continue;
        RatFunc r(n * c, d * c);
        RatFunc again(r.num(), r.den());
        EXPECT_EQ(r, again);
        EXPECT_TRUE(oracle::same_fraction(r.num(), r.den(), n, d));
        if (!r.is_zero()) {
            EXPECT_EQ(r.den().lead(), 1);
            EXPECT_EQ(poly_gcd(r.num(), r.den()), Poly(1));
        }
    }
}

TEST(RatFunc, FieldOperationsAgreeWithOracle)
{
    Rng rng(20);
    for (int i = 0; i < 300; ++i) {
        Poly an = oracle::random_poly(rng, 3, 7), ad = oracle::random_poly(rng, 2, 7);
        Poly bn = oracle::random_poly(rng, 3, 7), bd = oracle::random_poly(rng, 2, 7);
        if (ad.is_zero() || bd.is_zero())
            continue;
        RatFunc a(an, ad), b(bn, bd);
        RatFunc sum = a + b, prod = a * b;
        Poly sn(oracle::add_coeffs(oracle::mul_coeffs(an.coeffs(), bd.coeffs()),
                                   oracle::mul_coeffs(bn.coeffs(), ad.coeffs())));
        Poly sd(oracle::mul_coeffs(ad.coeffs(), bd.coeffs()));
        EXPECT_TRUE(oracle::same_fraction(sum.num(), sum.den(), sn, sd));
        EXPECT_TRUE(oracle::same_fraction(prod.num(), prod.den(), an * bn, ad * bd));
        Rational x = oracle::random_rational(rng, 20);
        if (ad.eval(x) != 0 && bd.eval(x) != 0 && sum.den().eval(x) != 0)
            EXPECT_EQ(sum.eval(x), an.eval(x) / ad.eval(x) + bn.eval(x) / bd.eval(x));
    }
}

TEST(RatFunc, OrderAndGaussValuation)
{
    RatFunc f(P("(t-1)^2*(t+1)"));
    EXPECT_EQ(*f.order_at(1).value, 2);
    EXPECT_EQ(*f.order_at(-1).value, 1);
    EXPECT_EQ(*f.order_at(0).value, 0);
    RatFunc g(P("t - 1"), P("(t - 1)^3"));
    EXPECT_EQ(*g.order_at(1).value, -2);
    EXPECT_TRUE(RatFunc().order_at(1).is_infinite());
    EXPECT_EQ(RatFunc(P("9*t"), P("t + 1/3")).gauss_val(3), PValue::from_exponent(3));
}

TEST(Parser, AcceptsDocumentedSyntax)
{
    EXPECT_EQ(P("t^2 - 1 + 3"), P("t^2 + 2"));
    EXPECT_EQ(P("3t + 2(t - 1)"), P("5*t - 2"));
    EXPECT_EQ(P("-t/3 + 1/2"), Poly({Q(1, 2), Q(-1, 3)}));
    EXPECT_EQ(P("(t+1)^3"), P("t^3 + 3*t^2 + 3*t + 1"));
    MPoly m = parse_mpoly("X*Y^2 - u0 + 3/2");
    EXPECT_EQ(m.degree_in(var_Y), 2u);
    EXPECT_EQ(m.constant_term(), Q(3, 2));
    RatFunc r = parse_ratfunc("1/(1 + 3/(t^2 - 1))");
    EXPECT_EQ(r, RatFunc(P("t^2 - 1"), P("t^2 + 2")));
}

TEST(Parser, RejectsWithPosition)
{
    auto column_of = [](const char* s) {
        try {
            parse_mpoly(s);
        } catch (const ParseError& e) {
            return e.column();
        }
        return -1;
    };
    EXPECT_EQ(column_of("t + z"), 5);
    EXPECT_EQ(column_of("t + "), 5);
    EXPECT_EQ(column_of("1/(t+1)"), 3);
    EXPECT_EQ(column_of("t^"), 3);
    EXPECT_EQ(column_of("(t+1"), 5);
    EXPECT_EQ(column_of("t $ 1"), 3);
    try {
        parse_mpoly("t +\n  q");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    EXPECT_THROW(parse_ratfunc("X + 1"), ParseError);
    EXPECT_THROW(parse_ratfunc("1/(t - t)"), ParseError);
    EXPECT_THROW(parse_poly("t*X"), ParseError);
}

TEST(Parser, RoundTripsPrintedForms)
{
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        Poly f = oracle::random_poly(rng, 5, 50);
        EXPECT_EQ(parse_poly(f.to_string()), f);
        Poly d = oracle::random_poly(rng, 3, 9);
        if (d.is_zero())
            continue;
        RatFunc r(f, d);
        EXPECT_EQ(parse_ratfunc(r.to_string()), r);
    }
    MPoly m = parse_mpoly("3/4*X^2*u2 - t*Y + 5");
    EXPECT_EQ(parse_mpoly(m.to_string()), m);
}
