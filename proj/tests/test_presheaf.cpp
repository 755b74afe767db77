#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"
#include "zadic/parse.hpp"
#include "zadic/presheaf.hpp"

using namespace zadic;
using namespace zadic::presheaf;
using arith::parse_mpoly;
using arith::parse_poly;
using arith::parse_ratfunc;
using fadic::BaseKind;

namespace {

AffinoidPresentation affinoid(BaseKind base, long p)
{
    AdicDomain d;
    d.base = base;
    d.p = p;
    std::vector<MPoly> plus;
    if (base == BaseKind::PolyQ)
        plus.push_back(MPoly::var(arith::var_t));
    return fadic::make_affinoid(fadic::to_presentation(d), plus);
}

std::vector<Poly> polys(std::initializer_list<const char*> xs)
{
    std::vector<Poly> out;
    for (auto x : xs)
        out.push_back(parse_poly(x));
    return out;
}

CechComplex ncex(long p, const Module& m = Module::free(1))
{
    return cech_complex(make_cover(affinoid(BaseKind::PolyQ, p), polys({"t+1", "t-1"})), m);
}

CechComplex zint(std::initializer_list<const char*> cover, const Module& m = Module::free(1))
{
    return cech_complex(make_cover(affinoid(BaseKind::Integers, 5), polys(cover)), m);
}

SectionElement global(const CechComplex& cx, const char* num, const char* cert = "0")
{
    return {cx.global, {LocElement(cx.global->ring, parse_poly(num), 0, parse_mpoly(cert))}};
}

} // namespace

TEST(Presheaf, ModuleParsing)
{
    EXPECT_EQ(parse_module("A").components(), 1u);
    EXPECT_EQ(parse_module("A^2").rank, 2u);
    EXPECT_EQ(parse_module("A + A").rank, 2u);
    EXPECT_EQ(parse_module("0").rank, 0u);
    auto c = parse_module("A/(t-1)");
    EXPECT_EQ(c.kind, Module::Kind::Cyclic);
    EXPECT_EQ(c.relation, parse_poly("t-1"));
    EXPECT_EQ(c.to_string(), "A/(t - 1)");
    EXPECT_THROW(parse_module("B"), InvalidInput);
}

TEST(Presheaf, SectionRings)
{
    auto cover = make_cover(affinoid(BaseKind::PolyQ, 3), polys({"t+1", "t-1"}));
    auto u0 = sections(cover, Module::free(1), Piece::single(0));
    EXPECT_EQ(u0->domain.inverted, parse_poly("t+1"));
    EXPECT_EQ(u0->domain.ratio_nums, polys({"t-1"}));
    EXPECT_TRUE(u0->domain.zariskised);
    EXPECT_FALSE(u0->zero());
    auto ov = sections(cover, Module::free(1), Piece::overlap(1, 0));
    EXPECT_EQ(ov->domain.inverted, parse_poly("t^2-1"));
    EXPECT_EQ(ov->domain.ratio_nums, polys({"(t+1)^2", "(t-1)^2"}));
    EXPECT_TRUE(sections(cover, Module::free(0), Piece::single(0))->zero());

    auto zc = make_cover(affinoid(BaseKind::Integers, 5), polys({"2", "3"}));
    auto z0 = sections(zc, Module::free(1), Piece::single(0));
    // 1/(1 + 5/2) with 5/2 = 5 * (3/2) - 5.
    LocElement x(z0->ring, Poly(1), 0, parse_mpoly("5*u0 - 5"));
    EXPECT_EQ(x.value(), parse_ratfunc("2/7"));
    EXPECT_TRUE(zariski::contains(*z0->ring, parse_ratfunc("2/7")));
    EXPECT_FALSE(zariski::contains(*z0->ring, parse_ratfunc("1/5")));

    EXPECT_THROW(make_cover(affinoid(BaseKind::PolyQ, 3), polys({"3", "t"})), NotACover);
    EXPECT_THROW(make_cover(affinoid(BaseKind::Integers, 5), polys({"5", "10"})), NotACover);
    EXPECT_THROW(make_cover(affinoid(BaseKind::PolyQ, 3), {}), NotACover);
}

TEST(Presheaf, RestrictionExamples)
{
    auto cx = ncex(3);
    Piece ov = Piece::overlap(0, 1);
    SectionElement c{cx.pieces[0], {LocElement(cx.pieces[0]->ring, Poly(5))}};
    EXPECT_EQ(restrict(cx, c, 0, ov).comps[0].value(), parse_ratfunc("5"));
    SectionElement inv{cx.pieces[0], {LocElement(cx.pieces[0]->ring, Poly(1), 1)}};
    auto r = restrict(cx, inv, 0, ov);
    EXPECT_TRUE(oracle::same_fraction(r.comps[0].value().num(), r.comps[0].value().den(), parse_poly("t-1"),
                                      parse_poly("t^2-1")));
    // 1/(1 + 3/(t+1)) with 1/(t+1) = (1 - u0)/2.
    SectionElement y{cx.pieces[0], {LocElement(cx.pieces[0]->ring, Poly(1), 0, parse_mpoly("3/2 - 3/2*u0"))}};
    EXPECT_EQ(y.comps[0].value(), parse_ratfunc("(t+1)/(t+4)"));
    auto ry = restrict(cx, y, 0, ov);
    EXPECT_EQ(ry.comps[0].value(), parse_ratfunc("(t+1)/(t+4)"));
    EXPECT_FALSE(ry.comps[0].cert().is_zero());
    EXPECT_THROW(restrict(cx, y, 1, Piece::overlap(0, 0)), InvalidInput);
}

TEST(Presheaf, RestrictionIsMultiplicative)
{
    auto cx = ncex(5);
    Rng rng(5150);
    for (int k = 0; k < 200; ++k) {
        auto a = random_global(cx, rng), b = random_global(cx, rng);
        auto ca = random_cocycle(cx, a, rng), cb = random_cocycle(cx, b, rng);
        Piece ov = Piece::overlap(0, 1);
        SectionElement prod{cx.pieces[0], {ca[0].comps[0] * cb[0].comps[0]}};
        auto lhs = restrict(cx, prod, 0, ov);
        auto ra = restrict(cx, ca[0], 0, ov), rb = restrict(cx, cb[0], 0, ov);
        ASSERT_EQ(lhs.comps[0], ra.comps[0] * rb.comps[0]);
    }
}

TEST(Presheaf, CechMaps)
{
    auto cx = ncex(3);
    for (const auto& s : phi(cx, global(cx, "1")))
        EXPECT_EQ(s.comps[0].value(), parse_ratfunc("1"));
    auto pt = phi(cx, global(cx, "t"));
    EXPECT_EQ(pt[0].comps[0].value(), parse_ratfunc("t"));
    EXPECT_EQ(pt[1].comps[0].value(), parse_ratfunc("t"));
    auto m = global(cx, "t^3 - 2/7", "3*t");
    for (const auto& s : psi(cx, phi(cx, m)))
        EXPECT_TRUE(section_equal(s, section_zero(s.ring)));
}

TEST(Presheaf, GlueIntegersByHand)
{
    auto cx = zint({"2", "3"});
    auto m = global(cx, "7");
    auto c = phi(cx, m);
    auto g = glue(cx, c, std::vector<Poly>{Poly(2), Poly(-1)});
    ASSERT_TRUE(g.decided()) << g.reason();
    EXPECT_EQ(g.value().comps[0].value(), parse_ratfunc("7"));
    EXPECT_TRUE(g.value().comps[0].cert().is_zero());
    EXPECT_THROW(glue(cx, c, std::vector<Poly>{Poly(1), Poly(1)}), InvalidInput);
}

TEST(Presheaf, NotACocycle)
{
    auto cx = ncex(3);
    auto c = phi(cx, global(cx, "t"));
    c[1] = SectionElement{cx.pieces[1], {LocElement(cx.pieces[1]->ring, parse_poly("t+1"))}};
    EXPECT_THROW(glue(cx, c), NotACocycle);
}

TEST(Presheaf, TrivialCover)
{
    auto cx = cech_complex(make_cover(affinoid(BaseKind::PolyQ, 3), polys({"1"})), Module::free(1));
    EXPECT_TRUE(cx.overlaps.empty());
    auto m = global(cx, "t^2/5", "3*t");
    auto g = glue(cx, phi(cx, m));
    ASSERT_TRUE(g.decided());
    EXPECT_EQ(g.value().comps[0], m.comps[0]);
    EXPECT_TRUE(cech_check(cx, 20, 1).ok());
}

TEST(Presheaf, GlueMatchesCrossMultiplication)
{
    for (long p : {3L, 5L}) {
        auto cx = ncex(p);
        Rng rng(900 + p);
        for (int trial = 0; trial < 100; ++trial) {
            auto m = random_global(cx, rng);
            auto c = random_cocycle(cx, m, rng);
            for (const auto& s : c)
                ASSERT_FALSE(s.comps[0].cert().is_zero());
            auto g = glue(cx, c);
            ASSERT_TRUE(g.decided()) << g.reason();
            const auto& gv = g.value().comps[0].value();
            for (size_t k = 0; k < c.size(); ++k) {
                auto piece = c[k].comps[0].value();
                auto back = restrict_global(cx, g.value(), static_cast<int>(k)).comps[0].value();
                ASSERT_TRUE(oracle::same_fraction(piece.num(), piece.den(), gv.num(), gv.den()));
                ASSERT_TRUE(oracle::same_fraction(piece.num(), piece.den(), back.num(), back.den()));
            }
        }
    }
}

TEST(Presheaf, CechCheckConfigurations)
{
    struct Config {
        CechComplex cx;
        const char* name;
    };
    std::vector<Config> configs;
    for (const auto& m : {Module::free(1), Module::free(2), Module::cyclic(Poly(7))}) {
        configs.push_back({zint({"2", "3"}, m), "Z (2,3)"});
        configs.push_back({zint({"3", "5", "7"}, m), "Z (3,5,7)"});
    }
    for (const auto& m : {Module::free(1), Module::free(2), Module::cyclic(parse_poly("t"))})
        configs.push_back({ncex(3, m), "Q[t] (t+1,t-1)"});
    configs.push_back({ncex(3, Module::free(0)), "Q[t] M=0"});
    for (const auto& [cx, name] : configs) {
        auto rep = cech_check(cx, 40, 42);
        EXPECT_TRUE(rep.ok()) << name << " " << rep.module << ": "
                              << (rep.failures.empty() ? "" : rep.failures.front());
    }
}

TEST(Presheaf, CechCheckDeterministic)
{
    auto cx = zint({"3", "5", "7"}, Module::free(2));
    auto a = cech_check(cx, 30, 7), b = cech_check(cx, 30, 7);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.glue_roundtrips, b.glue_roundtrips);
    Rng r1(3), r2(3);
    EXPECT_EQ(random_global(cx, r1).to_string(), random_global(cx, r2).to_string());
}

TEST(Presheaf, CyclicNonDomain)
{
    // A/(6) over Z: restrictions of globals still glue.
    auto cx = zint({"2", "3"}, Module::cyclic(Poly(6)));
    // 6 = 2 * 3 and 3 * 2 = 1 + 5, so A/(6) vanishes on U0.
    EXPECT_TRUE(cx.pieces[0]->zero());
    Rng rng(12);
    auto m = random_global(cx, rng);
    auto g = glue(cx, phi(cx, m));
    ASSERT_TRUE(g.decided());
    EXPECT_TRUE(section_equal(g.value(), m));
}
