#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "zadic/parse.hpp"
#include "zadic/rational_subset.hpp"

using namespace zadic;
using namespace zadic::rational;
using arith::parse_mpoly;
using arith::parse_poly;
using fadic::AffinoidPresentation;
using fadic::BaseKind;

namespace {

AdicDomain domain(BaseKind base, long p)
{
    AdicDomain d;
    d.base = base;
    d.p = p;
    return d;
}

AffinoidPresentation affinoid(const fadic::RingPresentation& r)
{
    std::vector<MPoly> plus;
    auto vars = fadic::carrier_vars(*r.carrier);
    if (std::find(vars.begin(), vars.end(), arith::var_t) != vars.end())
        plus.push_back(MPoly::var(arith::var_t));
    return fadic::make_affinoid(r, plus);
}

AffinoidPresentation ncex(long p) { return affinoid(fadic::to_presentation(domain(BaseKind::PolyQ, p))); }

RatFunc R(const char* s) { return arith::parse_ratfunc(s); }

// Independent evaluations of each kind, on coefficient lists.
long oracle_exp(const DiscreteValuation& v, const Poly& f)
{
    const long p = v.p;
    switch (v.kind) {
    case ValKind::EvalPAdic:
        return oracle::naive_val(oracle::eval_coeffs(f.coeffs(), v.point), p);
    case ValKind::Gauss:
        return oracle::naive_content(f, p);
    case ValKind::Disc: {
        // f(c + p^k s) by Horner on coefficient vectors.
        Rational step = 1;
        for (long i = 0; i < v.radius; ++i)
            step *= p;
        std::vector<Rational> lin{v.point, step}, acc;
        const auto& c = f.coeffs();
        for (size_t i = c.size(); i-- > 0;)
            acc = oracle::add_coeffs(oracle::mul_coeffs(acc, lin), {c[i]});
        return oracle::naive_content(Poly(acc), p);
    }
    case ValKind::ResidueTrivial:
        return oracle::naive_content(f, p) > 0 ? oracle::naive_val(0, p) : 0;
    default:
        ADD_FAILURE() << "no multiplicative oracle";
        return 0;
    }
}

long oracle_order(const Poly& f, const Rational& a)
{
    std::vector<Rational> c = f.coeffs();
    long k = 0;
    while (!c.empty() && oracle::eval_coeffs(c, a) == 0) {
        // Synthetic division by t - a.
        std::vector<Rational> q(c.size() - 1);
        Rational carry = 0;
        for (size_t i = c.size(); i-- > 1;) {
            carry = c[i] + carry * a;
            q[i - 1] = carry;
        }
        c = q;
        ++k;
    }
    return k;
}

long exp_or_big(const PValue& v) { return v.is_zero() ? oracle::naive_val(0, 2) : v.exponent(); }

} // namespace

TEST(Valuation, Examples)
{
    EXPECT_EQ(val_apply(DiscreteValuation::gauss(3), R("t+1")).exponent(), 0);
    EXPECT_EQ(val_apply(DiscreteValuation::eval_padic(3, 0), R("t-1")).exponent(), 0);
    EXPECT_EQ(order_apply(DiscreteValuation::tadic_at(1), R("(t-1)^2*(t+1)")).value, 2);
    EXPECT_THROW(val_apply(DiscreteValuation::eval_padic(3, -1), R("1/(t+1)")), InvalidInput);
    EXPECT_THROW(val_apply(DiscreteValuation::tadic_at(1), R("t")), InvalidInput);
    EXPECT_THROW(DiscreteValuation::eval_padic(3, Rational(1, 3)), InvalidInput);
    EXPECT_TRUE(order_apply(DiscreteValuation::tadic_at(1), R("0")).is_infinite());
    // v(t - 1) = v(t + 1 - 2) = 1 once v(t + 1) < 1.
    EXPECT_EQ(val_apply(DiscreteValuation::eval_padic(3, 2), R("t-1")).exponent(), 0);
    EXPECT_EQ(val_apply(DiscreteValuation::eval_padic(3, 2), R("t+1")).exponent(), 1);
    EXPECT_EQ(val_apply(DiscreteValuation::disc(3, -1, 2), R("t+1")).exponent(), 2);
    EXPECT_EQ(val_apply(DiscreteValuation::residue_trivial(3), R("6")), PValue::zero());
    EXPECT_EQ(val_apply(DiscreteValuation::residue_trivial(3), R("5/2")), PValue::one());
}

TEST(Valuation, ParseRoundTrip)
{
    for (auto v : {DiscreteValuation::gauss(5), DiscreteValuation::eval_padic(5, Rational(-3, 2)),
                   DiscreteValuation::disc(5, 4, 3), DiscreteValuation::residue_trivial(5),
                   DiscreteValuation::tadic_at(Rational(1, 5))})
        EXPECT_EQ(parse_valuation(v.to_string(), 5), v) << v.to_string();
    EXPECT_THROW(parse_valuation("gaus", 5), InvalidInput);
}

TEST(Valuation, MultiplicativeAndUltrametric)
{
    for (long p : {3L, 5L}) {
        Rng rng(0x7a1 + p);
        for (auto kind : {ValKind::EvalPAdic, ValKind::Gauss, ValKind::Disc, ValKind::ResidueTrivial}) {
            for (int trial = 0; trial < 1000; ++trial) {
                Rational c = oracle::random_p_integral(rng, 9, p);
                DiscreteValuation v = kind == ValKind::EvalPAdic ? DiscreteValuation::eval_padic(p, c)
                                      : kind == ValKind::Gauss   ? DiscreteValuation::gauss(p)
                                      : kind == ValKind::Disc    ? DiscreteValuation::disc(p, c, rng.uniform(0, 3))
                                                                 : DiscreteValuation::residue_trivial(p);
                bool integral = kind == ValKind::ResidueTrivial;
                Poly f = integral ? oracle::random_p_integral_poly(rng, 4, 12, p) : oracle::random_poly(rng, 4, 12);
                Poly g = integral ? oracle::random_p_integral_poly(rng, 4, 12, p) : oracle::random_poly(rng, 4, 12);
                PValue vf = val_apply(v, RatFunc(f)), vg = val_apply(v, RatFunc(g));
                ASSERT_EQ(exp_or_big(vf), oracle_exp(v, f)) << v.to_string() << " " << f.to_string();
                ASSERT_EQ(val_apply(v, RatFunc(f * g)), vf * vg) << v.to_string();
                ASSERT_LE(val_apply(v, RatFunc(f + g)), std::max(vf, vg)) << v.to_string();
            }
        }
    }
}

TEST(Valuation, AdditiveOrder)
{
    Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        Rational a(rng.uniform(-3, 3));
        Poly lin(std::vector<Rational>{-a, 1});
        Poly f = oracle::random_poly(rng, 3, 9) * lin.pow(static_cast<unsigned>(rng.uniform(0, 2)));
        Poly g = oracle::random_poly(rng, 3, 9) * lin.pow(static_cast<unsigned>(rng.uniform(0, 2)));
        auto v = DiscreteValuation::tadic_at(a);
        Order of = order_apply(v, RatFunc(f)), og = order_apply(v, RatFunc(g));
        if (f.is_zero() || g.is_zero())
            continue;
        ASSERT_EQ(*of.value, oracle_order(f, a));
        ASSERT_EQ(*order_apply(v, RatFunc(f * g)).value, *of.value + *og.value);
        Order os = order_apply(v, RatFunc(f + g));
        if (!os.is_infinite())
            ASSERT_GE(*os.value, std::min(*of.value, *og.value));
    }
}

TEST(RationalSubset, Construction)
{
    auto a = ncex(3);
    auto u1 = mk_rational_subset(a, {Poly(1)}, parse_poly("t+1"));
    EXPECT_TRUE(u1.openness.open);
    auto u12 = parse_rational_subset(a, "R(1/(t^2-1))");
    EXPECT_EQ(u12.den, parse_poly("t^2-1"));
    EXPECT_THROW(mk_rational_subset(a, {parse_poly("t")}, parse_poly("t")), NotOpen);
    EXPECT_THROW(parse_rational_subset(a, "R(t/t)"), NotOpen);
    EXPECT_THROW(parse_rational_subset(a, "R(1, t+1)"), InvalidInput);
    auto multi = parse_rational_subset(a, "R(t, (t-1)/3 / t+2)");
    EXPECT_EQ(multi.nums.size(), 2u);
    EXPECT_EQ(multi.scaled_den, parse_poly("3*t+6"));
    auto z5 = affinoid(fadic::to_presentation(domain(BaseKind::Integers, 5)));
    auto piece = parse_rational_subset(z5, "R(2, 3 / 2)");
    EXPECT_EQ(piece.scaled_den, Poly(2));
    EXPECT_THROW(parse_rational_subset(z5, "R(2 / 6)"), NotOpen);
    EXPECT_EQ(parse_rational_subset(z5, "R(5 / 10)").scaled_den, Poly(10));
    EXPECT_THROW(parse_rational_subset(z5, "R(1/2 / 1)"), InvalidInput);
}

TEST(RationalSubset, Localization)
{
    auto a = ncex(3);
    auto loc1 = rational_localization(a, parse_rational_subset(a, "R(1/(t+1))"));
    EXPECT_EQ(loc1.domain.inverted, parse_poly("t+1"));
    EXPECT_TRUE(loc1.domain.zariskised);
    EXPECT_EQ(loc1.domain.ratio_nums, std::vector<Poly>{Poly(1)});
    EXPECT_EQ(loc1.map_from_a.apply(parse_mpoly("t^2")), parse_mpoly("t^2"));
    auto trivial = rational_localization(a, parse_rational_subset(a, "R(1/1)"));
    EXPECT_EQ(trivial.domain, zariski::zariskisation(a.ring).ring->domain);
    auto loc12 = rational_localization(a, parse_rational_subset(a, "R(1/(t^2-1))"));
    EXPECT_EQ(loc12.domain.inverted, parse_poly("t^2-1"));
    // 1 + 3t is a unit once Zariskised.
    EXPECT_TRUE(zariski::is_unit_zar(LocElement(loc12.ring, parse_poly("1+3*t"))).unit);
    EXPECT_FALSE(zariski::is_unit_zar(LocElement(loc12.ring, parse_poly("t"))).unit);
    EXPECT_TRUE(zariski::is_unit_zar(LocElement(loc12.ring, parse_poly("t+1"))).unit);
}

TEST(RationalSubset, Membership)
{
    auto a = ncex(3);
    auto u1 = parse_rational_subset(a, "R(1/(t+1))");
    auto u2 = parse_rational_subset(a, "R(1/(t-1))");
    EXPECT_TRUE(in_rational_subset(DiscreteValuation::gauss(3), u1));
    EXPECT_FALSE(in_rational_subset(DiscreteValuation::eval_padic(3, -1), u1));
    EXPECT_TRUE(in_rational_subset(DiscreteValuation::eval_padic(3, -1), u2));
    EXPECT_THROW(in_rational_subset(DiscreteValuation::tadic_at(1), u1), InvalidInput);
}

TEST(RationalSubset, CoverLaw)
{
    for (long p : {3L, 5L, 7L, 11L}) {
        auto a = ncex(p);
        auto u1 = parse_rational_subset(a, "R(1/(t+1))");
        auto u2 = parse_rational_subset(a, "R(1/(t-1))");
        auto sample = sample_valuations(p, 400, 9 + p);
        ASSERT_EQ(sample.size(), 400u);
        for (const auto& v : sample) {
            PValue plus = val_apply(v, R("t+1")), minus = val_apply(v, R("t-1"));
            if (plus < PValue::one())
                EXPECT_EQ(minus, PValue::one()) << v.to_string();
            EXPECT_TRUE(in_rational_subset(v, u1) || in_rational_subset(v, u2)) << v.to_string();
        }
    }
}

TEST(RationalSubset, KernelPoints)
{
    const long p = 3;
    auto a = affinoid(zariski::zariskisation(ncex(p).ring).presentation);
    Rng rng(606);
    std::vector<Rational> grid{0, 1, -1, 2, -2, 4, Rational(1, 2), Rational(-5, 4), Rational(7, 2), 9};
    for (const auto& c : grid) {
        Poly lin(std::vector<Rational>{-c, 1});
        auto kp = kernel_point_for_maximal(a, MPoly::from_poly(lin));
        ASSERT_TRUE(kp.point.has_value()) << kp.reason;
        EXPECT_EQ(kp.point->kind, ValKind::EvalPAdic);
        EXPECT_EQ(val_apply(*kp.point, RatFunc(lin)), PValue::zero());
        for (int k = 0; k < 60; ++k) {
            Poly f = oracle::random_poly(rng, 6, 9);
            if (k % 2 == 0 && f.degree() < 6)
                f = f * lin;
            bool in_m = oracle::eval_coeffs(f.coeffs(), c) == 0;
            EXPECT_EQ(val_apply(*kp.point, RatFunc(f)).is_zero(), in_m) << f.to_string();
        }
    }
    EXPECT_THROW(kernel_point_for_maximal(a, parse_mpoly("1+3*t")), InvalidInput);
    EXPECT_THROW(kernel_point_for_maximal(a, parse_mpoly("t^2-1")), InvalidInput);
    auto quad = kernel_point_for_maximal(a, parse_mpoly("t^2+1"));
    EXPECT_FALSE(quad.point.has_value());

    auto z3 = affinoid(fadic::to_presentation(domain(BaseKind::PLocal, 3)));
    auto res = kernel_point_for_maximal(z3, parse_mpoly("3"));
    ASSERT_TRUE(res.point.has_value());
    EXPECT_EQ(res.point->kind, ValKind::ResidueTrivial);
    for (long n = -30; n <= 30; ++n)
        for (long d : {1L, 2L, 4L, 5L})
            EXPECT_EQ(val_apply(*res.point, RatFunc(Poly(Rational(n, d)))).is_zero(), n % 3 == 0);

    auto zint = affinoid(fadic::to_presentation(domain(BaseKind::Integers, 3)));
    auto none = kernel_point_for_maximal(zint, parse_mpoly("5"));
    EXPECT_FALSE(none.point.has_value());
    EXPECT_NE(none.reason.find("not Zariskian"), std::string::npos) << none.reason;
}

TEST(RationalSubset, RestrictionCompatibility)
{
    auto a = ncex(3);
    auto az = zariski::zariskisation(a.ring).ring;
    auto z1 = rational_localization(a, parse_rational_subset(a, "R(1/(t+1))")).ring;
    auto z12 = rational_localization(a, parse_rational_subset(a, "R(1/(t^2-1))")).ring;
    auto r_a1 = make_restriction(az, z1);
    auto r_12 = make_restriction(z1, z12);
    auto r_a12 = make_restriction(az, z12);
    Rng rng(77);
    for (int k = 0; k < 200; ++k) {
        LocElement x(az, oracle::random_poly(rng, 4, 9));
        EXPECT_EQ(r_12.apply(r_a1.apply(x)), r_a12.apply(x));
        LocElement y(z1, oracle::random_poly(rng, 4, 9), static_cast<unsigned>(rng.uniform(0, 3)),
                     MPoly(Rational(3 * rng.uniform(-2, 2))) * MPoly::var(arith::var_u(0)));
        EXPECT_EQ(r_12.apply(y).value(), y.value());
    }
    EXPECT_THROW(make_restriction(z12, z1), InvalidInput);
}
