#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zadic/descriptor.hpp"
#include "zadic/fadic.hpp"
#include "zadic/parse.hpp"

using namespace zadic;
using namespace zadic::fadic;
using arith::parse_mpoly;
using arith::var_t;
using arith::var_X;

namespace {

MPoly M(const char* s)
{
    return parse_mpoly(s);
}

AdicDomain domain(BaseKind base, std::optional<long> p, const char* f = "1", std::vector<const char*> ratios = {},
                  bool zar = false)
{
    AdicDomain d;
    d.base = base;
    d.p = p;
    d.inverted = arith::parse_poly(f);
    for (auto r : ratios)
        d.ratio_nums.push_back(arith::parse_poly(r));
    d.zariskised = zar;
    return d;
}

RingPresentation qt(long p)
{
    return to_presentation(domain(BaseKind::PolyQ, p));
}

RingPresentation q_padic(long p)
{
    return to_presentation(domain(BaseKind::Rationals, p));
}

RingPresentation qx(long p)
{
    return make_presentation(Carrier::polynomials({var_X}), {M("X")}, {MPoly(p)}, p);
}

bool equal_in(const RingPresentation& a, const MPoly& x, const MPoly& y)
{
    auto d = carrier_equal(*a.carrier, x, y);
    EXPECT_TRUE(d.decided()) << d.reason();
    return d.decided() && d.value();
}

RingMap with_cert(RingMap m)
{
    auto c = certify_continuity(m);
    EXPECT_TRUE(c.decided()) << c.reason();
    m.continuity = c.value();
    return m;
}

} // namespace

TEST(Presentation, CataloguedRoundTrip)
{
    std::vector<AdicDomain> ds = {
        domain(BaseKind::PolyQ, 3),
        domain(BaseKind::PolyQ, 3, "t+1", {"1"}),
        domain(BaseKind::PolyQ, 5, "t^2-1", {"t+1", "t-1"}),
        domain(BaseKind::PolyQ, 3, "t+1", {"1"}, true),
        domain(BaseKind::Integers, 5),
        domain(BaseKind::Integers, 5, "2", {"3"}, true),
        domain(BaseKind::PLocal, 3),
        domain(BaseKind::Rationals, 7),
        domain(BaseKind::PolyQ, std::nullopt),
    };
    for (const auto& d : ds) {
        auto a = to_presentation(d);
        auto back = classify(a);
        ASSERT_TRUE(back.decided()) << back.reason();
        EXPECT_EQ(back.value(), d);
        EXPECT_NO_THROW(make_presentation(a.carrier, a.ring_of_def, a.ideal_of_def, a.prime));
    }
}

TEST(Presentation, RejectsBadTopology)
{
    // X is not in the ring of definition: X * p^m A0 never lands in A0.
    EXPECT_THROW(make_presentation(Carrier::polynomials({var_t, var_X}), {M("t")}, {MPoly(3)}, 3), InvalidInput);
    // The ideal of definition must lie in p A0.
    EXPECT_THROW(make_presentation(Carrier::polynomials(), {M("t")}, {M("t")}, 3), InvalidInput);
    // A ratio numerator that together with f does not generate the unit ideal.
    EXPECT_THROW(to_presentation(domain(BaseKind::PolyQ, 3, "t^2-1", {"t-1"})), InvalidInput);
    // Coefficients outside Z_(p).
    EXPECT_THROW(to_presentation(domain(BaseKind::PolyQ, 3, "t/3+1", {"1"})), InvalidInput);
    EXPECT_THROW(to_presentation(domain(BaseKind::PolyQ, 4)), InvalidInput);
    EXPECT_THROW(make_presentation(Carrier::integers(), {}, {M("1/2")}, 5), InvalidInput);
}

TEST(Presentation, Affinoid)
{
    auto a = qt(3);
    EXPECT_NO_THROW(make_affinoid(a, {M("t")}));
    EXPECT_THROW(make_affinoid(a, {}), InvalidInput);
    EXPECT_THROW(make_affinoid(a, {M("t"), M("t/3")}), InvalidInput);
}

TEST(Quotient, ByTIsTheRationals)
{
    auto q = quotient_fadic(qt(3), {M("t")});
    EXPECT_EQ(q.ring.carrier->kind, CarrierKind::Quotient);
    EXPECT_TRUE(equal_in(q.ring, M("t"), MPoly()));
    EXPECT_TRUE(equal_in(q.ring, M("t^3 + 5*t + 2"), MPoly(2)));
    EXPECT_FALSE(equal_in(q.ring, MPoly(1), MPoly()));
    ASSERT_TRUE(q.simplified.has_value());
    EXPECT_EQ(q.simplified->images.at(var_t), MPoly());
    auto field = classify(q.simplified->target);
    ASSERT_TRUE(field.decided());
    EXPECT_EQ(field.value(), domain(BaseKind::Rationals, 3));
    // Generators of A0 and I0 evaluated at t = 0.
    for (const auto& g : q.ring.ring_of_def)
        EXPECT_EQ(q.simplified->apply(g), g.substitute([](arith::Var) { return MPoly(); }));
    EXPECT_EQ(q.ring.ideal_of_def, std::vector<MPoly>{MPoly(3)});
}

TEST(Quotient, ZeroAndUnitIdeal)
{
    auto a = qt(3);
    auto same = quotient_fadic(a, {MPoly()});
    EXPECT_EQ(same.ring, a);
    auto zero = quotient_fadic(a, {MPoly(1)});
    auto z = is_zero_ring(*zero.ring.carrier);
    ASSERT_TRUE(z.decided());
    EXPECT_TRUE(z.value());
    EXPECT_TRUE(equal_in(zero.ring, M("t^2 + 7"), MPoly()));
    EXPECT_FALSE(zero.simplified.has_value());
}

TEST(Quotient, IntegersModN)
{
    auto z5 = to_presentation(domain(BaseKind::Integers, 5));
    auto q = quotient_fadic(z5, {MPoly(4), MPoly(6)});
    EXPECT_TRUE(equal_in(q.ring, MPoly(10), MPoly()));
    EXPECT_FALSE(equal_in(q.ring, MPoly(3), MPoly()));
    auto z3 = to_presentation(domain(BaseKind::PLocal, 3));
    auto q3 = quotient_fadic(z3, {MPoly(18)});
    EXPECT_TRUE(equal_in(q3.ring, M("9/2"), MPoly()));
    EXPECT_FALSE(equal_in(q3.ring, MPoly(3), MPoly()));
}

TEST(Quotient, IteratedEqualsSum)
{
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Poly j1 = oracle::random_poly(rng, 2, 5) * Poly::linear_root(rng.uniform(-3, 3));
        Poly j2 = oracle::random_poly(rng, 2, 5) * Poly::linear_root(rng.uniform(-3, 3));
        if (j1.is_zero() || j2.is_zero())
            continue;
        auto a = qt(3);
        auto first = quotient_fadic(a, {MPoly::from_poly(j1)});
        auto twice = quotient_fadic(first.ring, {MPoly::from_poly(j2)});
        auto sum = quotient_fadic(a, {MPoly::from_poly(j1), MPoly::from_poly(j2)});
        // Elements of J1 + J2 vanish in both.
        Poly x = oracle::random_poly(rng, 3, 5) * j1 + oracle::random_poly(rng, 3, 5) * j2;
        EXPECT_TRUE(equal_in(twice.ring, MPoly::from_poly(x), MPoly()));
        EXPECT_TRUE(equal_in(sum.ring, MPoly::from_poly(x), MPoly()));
        // Random elements: both quotients agree, and the generator images match.
        for (int k = 0; k < 5; ++k) {
            MPoly y = MPoly::from_poly(oracle::random_poly(rng, 4, 5));
            EXPECT_EQ(equal_in(twice.ring, y, MPoly()), equal_in(sum.ring, y, MPoly()));
        }
        EXPECT_EQ(twice.ring.ring_of_def, sum.ring.ring_of_def);
        EXPECT_EQ(twice.ring.ideal_of_def, sum.ring.ideal_of_def);
    }
}

TEST(Quotient, MultivariateByElimination)
{
    auto a = make_presentation(Carrier::polynomials({var_t, var_X}), {M("t"), M("X")}, {MPoly(3)}, 3);
    auto q = quotient_fadic(a, {M("X - t^2"), M("t^2 - 1")});
    EXPECT_TRUE(equal_in(q.ring, M("X^2"), MPoly(1)));
    EXPECT_TRUE(equal_in(q.ring, M("X*t - t"), MPoly()));
    EXPECT_FALSE(equal_in(q.ring, M("t"), MPoly(1)));
    auto hard = quotient_fadic(a, {M("t^2 + X^2 - 1"), M("t*X")});
    EXPECT_FALSE(carrier_equal(*hard.ring.carrier, M("t"), MPoly()).decided());
}

TEST(Quotient, UniversalProperty)
{
    auto a = qt(3);
    auto q = quotient_fadic(a, {M("t^2 - 1")});
    auto g = make_ring_map(a, q_padic(3), {{var_t, MPoly(1)}});
    auto induced = factor_through_quotient(q, g);
    EXPECT_EQ(induced.apply(M("t^3 + t")), MPoly(2));
    auto bad = make_ring_map(a, q_padic(3), {{var_t, MPoly(2)}});
    EXPECT_THROW(factor_through_quotient(q, bad), InvalidInput);
    // Maps out of a quotient must kill its relations.
    EXPECT_NO_THROW(make_ring_map(q.ring, q_padic(3), {{var_t, MPoly(-1)}}));
    EXPECT_THROW(make_ring_map(q.ring, q_padic(3), {{var_t, MPoly(2)}}), InvalidInput);
}

TEST(Tensor, TwoPolynomialRings)
{
    auto r = q_padic(3);
    auto phi = with_cert(make_ring_map(r, qt(3), {}));
    auto psi = with_cert(make_ring_map(r, qx(3), {}));
    auto t = tensor_fadic(phi, psi);
    ASSERT_TRUE(t.decided()) << t.reason();
    const auto& T = t.value();
    EXPECT_EQ(T.ring.carrier->vars, (std::vector<arith::Var>{var_t, var_X}));
    EXPECT_EQ(T.ring.ring_of_def, (std::vector<MPoly>{M("t"), M("X")}));
    EXPECT_EQ(T.ring.ideal_of_def, std::vector<MPoly>{MPoly(3)});
    ASSERT_TRUE(T.from_left.continuity && T.from_right.continuity);

    // Universal factorization against a hand-built Q[t, X].
    auto c = make_presentation(Carrier::polynomials({var_t, var_X}), {M("t"), M("X")}, {MPoly(3)}, 3);
    auto left = make_ring_map(qt(3), c, {{var_t, M("t + X")}});
    auto right = make_ring_map(qx(3), c, {{var_X, M("t*X")}});
    auto theta = tensor_factor(T, phi, psi, left, right);
    EXPECT_EQ(theta.apply(M("t")), M("t + X"));
    EXPECT_EQ(theta.apply(M("X")), M("t*X"));
    EXPECT_EQ(theta.apply(T.from_left.apply(M("t^2"))), left.apply(M("t^2")));
    EXPECT_TRUE(theta.continuity.has_value());
}

TEST(Tensor, OverItselfIsItself)
{
    auto a = qt(3);
    auto id = identity_map(a);
    auto t = tensor_fadic(id, id);
    ASSERT_TRUE(t.decided()) << t.reason();
    const auto& T = t.value();
    EXPECT_EQ(T.ring.carrier->vars, std::vector<arith::Var>{var_t});
    EXPECT_EQ(T.ring.ring_of_def, a.ring_of_def);
    EXPECT_EQ(T.ring.ideal_of_def, a.ideal_of_def);
    EXPECT_EQ(T.from_left.apply(M("t")), M("t"));
    EXPECT_EQ(T.from_right.apply(M("t")), M("t"));
    // The canonical isomorphism back to A.
    auto back = tensor_factor(T, id, id, id, id);
    EXPECT_EQ(back.apply(M("t^2 + 1")), M("t^2 + 1"));
}

TEST(Tensor, VariableClashIsRenamed)
{
    auto r = q_padic(3);
    auto phi = with_cert(make_ring_map(r, qt(3), {}));
    auto t = tensor_fadic(phi, phi);
    ASSERT_TRUE(t.decided());
    EXPECT_EQ(t.value().ring.carrier->vars, (std::vector<arith::Var>{var_t, var_X}));
    EXPECT_EQ(t.value().from_right.apply(M("t")), M("X"));
}

TEST(Tensor, WithZeroRing)
{
    auto a = qt(3);
    auto zero = quotient_fadic(a, {MPoly(1)});
    auto t = tensor_fadic(identity_map(a), zero.projection);
    ASSERT_TRUE(t.decided());
    EXPECT_TRUE(t.value().zero);
    auto z = is_zero_ring(*t.value().ring.carrier);
    ASSERT_TRUE(z.decided());
    EXPECT_TRUE(z.value());
}

TEST(Tensor, MissingContinuityCertificate)
{
    auto r = q_padic(3);
    auto phi = make_ring_map(r, qt(3), {});
    auto psi = with_cert(make_ring_map(r, qx(3), {}));
    EXPECT_THROW(tensor_fadic(phi, psi), InvalidInput);
}

TEST(Continuity, RejectsUnboundedImages)
{
    auto m = make_ring_map(qt(3), qt(3), {{var_t, M("t/3")}});
    EXPECT_FALSE(certify_continuity(m).decided());
    auto ok = make_ring_map(qt(3), qt(3), {{var_t, M("t^2 + 3")}});
    auto c = certify_continuity(ok);
    ASSERT_TRUE(c.decided());
    EXPECT_EQ(c.value().levels.size(), 8u);
}

TEST(OpenIdeal, Examples)
{
    auto a = qt(3);
    auto yes = is_open_ideal(a, {MPoly(1), M("t+1")});
    ASSERT_TRUE(yes.decided());
    EXPECT_TRUE(yes.value().open);
    auto no = is_open_ideal(a, {M("t")});
    ASSERT_TRUE(no.decided());
    EXPECT_FALSE(no.value().open);
    auto local = is_open_ideal(to_presentation(domain(BaseKind::PLocal, 3)), {MPoly(3)});
    ASSERT_TRUE(local.decided());
    EXPECT_TRUE(local.value().open);
    EXPECT_EQ(local.value().exponent, 1);
    auto z5 = to_presentation(domain(BaseKind::Integers, 5));
    EXPECT_TRUE(is_open_ideal(z5, {MPoly(50), MPoly(75)}).value().open);
    EXPECT_FALSE(is_open_ideal(z5, {MPoly(10)}).value().open);
    auto loc = to_presentation(domain(BaseKind::PolyQ, 3, "t+1", {"1"}));
    EXPECT_FALSE(is_open_ideal(loc, {M("t")}).decided());
    auto quo = quotient_fadic(a, {M("t^2")});
    EXPECT_FALSE(is_open_ideal(quo.ring, {M("t")}).decided());
}

TEST(OpenIdeal, CertificateExpandsToAConstant)
{
    Rng rng(5);
    auto a = qt(3);
    for (int trial = 0; trial < 200; ++trial) {
        Poly f = oracle::random_poly(rng, 3, 9);
        Poly g = oracle::random_poly(rng, 3, 9);
        Poly common = trial % 2 ? Poly(1) : Poly::linear_root(rng.uniform(-5, 5));
        std::vector<MPoly> gens = {MPoly::from_poly(f * common), MPoly::from_poly(g * common)};
        auto r = is_open_ideal(a, gens);
        ASSERT_TRUE(r.decided());
        // Oracle: a shared rational root is an obstruction, otherwise check the expansion.
        bool shared_root = false;
        for (long c = -5; c <= 5; ++c)
            if ((f * common).eval(c) == 0 && (g * common).eval(c) == 0)
                shared_root = true;
        if (shared_root)
            EXPECT_FALSE(r.value().open);
        if (r.value().open) {
            MPoly sum;
            for (size_t i = 0; i < gens.size(); ++i)
                sum += r.value().coefficients[i] * gens[i];
            EXPECT_TRUE(sum.is_constant());
            EXPECT_NE(sum.constant_term(), 0);
        }
    }
}

TEST(HausdorffKernel, Examples)
{
    auto k = hausdorff_kernel_domain(qt(3));
    ASSERT_TRUE(k.decided());
    EXPECT_TRUE(k.value().generators.empty());
    auto k2 = hausdorff_kernel_domain(to_presentation(domain(BaseKind::PLocal, 5)));
    ASSERT_TRUE(k2.decided());
    EXPECT_TRUE(k2.value().generators.empty());
    auto sq = quotient_fadic(qt(3), {M("t^2")});
    EXPECT_FALSE(hausdorff_kernel_domain(sq.ring).decided());
}

TEST(Carrier, LocalizedEquality)
{
    auto a = to_presentation(domain(BaseKind::PolyQ, 3, "t+1", {"1"}));
    EXPECT_TRUE(equal_in(a, M("u0*t + u0"), MPoly(1)));
    EXPECT_TRUE(equal_in(a, M("u0^2*(t+1)"), M("u0")));
    EXPECT_FALSE(equal_in(a, M("u0"), MPoly(1)));
}

TEST(Descriptor, RoundTrip)
{
    auto a = qt(3);
    std::vector<RingPresentation> cases = {
        a,
        to_presentation(domain(BaseKind::PolyQ, 3, "t^2-1", {"t+1", "t-1"}, true)),
        to_presentation(domain(BaseKind::Integers, 5, "6", {"2", "3"})),
        to_presentation(domain(BaseKind::PLocal, 7)),
        quotient_fadic(a, {M("t^2 - 1")}).ring,
        qx(3),
    };
    auto r = q_padic(3);
    auto phi = with_cert(make_ring_map(r, a, {}));
    cases.push_back(tensor_fadic(phi, phi).value().ring);
    for (const auto& x : cases) {
        std::string text = descriptor::dump(descriptor::to_json(x));
        auto back = descriptor::parse_presentation(text);
        EXPECT_EQ(back, x) << text;
        EXPECT_EQ(descriptor::dump(descriptor::to_json(back)), text);
    }
    auto m = make_ring_map(a, q_padic(3), {{var_t, MPoly(1)}});
    m.continuity = certify_continuity(m).value();
    auto mj = descriptor::to_json(m);
    auto mb = descriptor::ring_map_from_json(mj);
    EXPECT_EQ(mb.images, m.images);
    EXPECT_EQ(mb.continuity->levels, m.continuity->levels);
}

TEST(Descriptor, Shorthand)
{
    auto a = descriptor::parse_presentation(R"({"carrier": "Q[t]", "ring_of_def": ["t"], "ideal_of_def": ["3"], "prime": 3})");
    EXPECT_EQ(a, qt(3));
    auto z = descriptor::parse_presentation(R"j({"carrier": "Z_(3)", "ideal_of_def": ["3"], "prime": 3})j");
    EXPECT_EQ(classify(z).value(), domain(BaseKind::PLocal, 3));
}

TEST(Descriptor, ErrorPositions)
{
    try {
        descriptor::parse_presentation("{\n  \"carrier\": \"Q[t]\",\n  \"ring_of_def\": [\"t\", \"t + z\"],\n"
                                       "  \"ideal_of_def\": [\"3\"], \"prime\": 3\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.column(), 29); // the z
    }
    try {
        descriptor::parse_presentation("{\n  \"carrier\": \"Q[t]\",\n  \"prime\" 3\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.column(), 11);
    }
    try {
        descriptor::parse_presentation("{\"carrier\": {\"kind\": \"p_local_integers\", \"p\": 4}}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 47);
    }
    try {
        descriptor::parse_presentation("{\"ring_of_def\": []}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("missing field \"carrier\""), std::string::npos);
    }
}
