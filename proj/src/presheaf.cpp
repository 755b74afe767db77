#include "zadic/presheaf.hpp"

#include <algorithm>
#include <regex>

#include "zadic/parallel.hpp"
#include "zadic/parse.hpp"

namespace zadic::presheaf {

using arith::Var;
using arith::var_t;
using arith::var_u0;
using fadic::BaseKind;

std::string Module::to_string() const
{
    if (kind == Kind::Cyclic)
        return "A/(" + relation.to_string() + ")";
    if (rank == 0)
        return "0";
    return rank == 1 ? "A" : "A^" + std::to_string(rank);
}

Module parse_module(const std::string& text)
{
    static const std::regex power(R"(\s*A\s*\^\s*(\d+)\s*)");
    static const std::regex sum(R"(\s*A(\s*\+\s*A)*\s*)");
    static const std::regex cyclic(R"(\s*A\s*/\s*\((.*)\)\s*)");
    std::smatch m;
    if (std::regex_match(text, m, power))
        return Module::free(static_cast<unsigned>(std::stoul(m[1].str())));
    if (std::regex_match(text, sum))
        return Module::free(static_cast<unsigned>(std::count(text.begin(), text.end(), 'A')));
    if (std::regex_match(text, m, cyclic))
        return Module::cyclic(arith::parse_poly(m[1].str()));
    if (text.find_first_not_of(" ") != std::string::npos && text.substr(text.find_first_not_of(" "), 1) == "0" &&
        text.find_first_not_of(" 0") == std::string::npos)
        return Module::free(0);
    throw InvalidInput("unknown module \"" + text + "\"; expected A, A^n, A+A, A/(g) or 0");
}

std::string Piece::to_string() const
{
    if (is_global())
        return "X";
    if (k1 == k2)
        return "U" + std::to_string(k1);
    return "U" + std::to_string(k1) + "&U" + std::to_string(k2);
}

namespace {

bool is_lambda_unit(const AdicDomain& d, const Poly& f)
{
    return f.is_constant() && !f.is_zero() && fadic::in_scalars(d, 1 / f.constant_term());
}

// The cert as H / f^m with H a polynomial: each term c t^a prod u_i^e_i
// becomes c t^a prod r_i^e_i f^(m - |e|), m the largest u-degree.
std::pair<Poly, unsigned> homogenize(const AdicDomain& d, const MPoly& cert)
{
    unsigned m = 0;
    for (const auto& [mono, c] : cert.terms()) {
        unsigned deg = 0;
        for (Var v = var_u0; v < mono.size(); ++v)
            deg += mono[v];
        m = std::max(m, deg);
    }
    Poly h;
    for (const auto& [mono, c] : cert.terms()) {
        Poly term(c);
        unsigned deg = 0;
        for (Var v = 0; v < mono.size(); ++v) {
            if (!mono[v])
                continue;
            if (v == var_t)
                term *= Poly::monomial(1, mono[v]);
            else if (v >= var_u0 && v - var_u0 < d.ratio_nums.size())
                term *= d.ratio_nums[v - var_u0].pow(mono[v]);
            else
                throw InvalidInput("certificate uses " + arith::var_name(v));
            if (v >= var_u0)
                deg += mono[v];
        }
        h += term * d.inverted.pow(m - deg);
    }
    return {h, m};
}

AdicDomain piece_domain(const Cover& cover, Piece piece)
{
    AdicDomain d = cover.global;
    const auto& f = cover.gens;
    if (piece.is_global())
        return d;
    int n = static_cast<int>(f.size());
    if (piece.k1 >= n || piece.k2 >= n)
        throw InvalidInput("no cover element with index " + std::to_string(piece.k2));
    if (piece.k1 == piece.k2) {
        d.inverted = f[piece.k1];
        for (int j = 0; j < n; ++j)
            if (j != piece.k1)
                d.ratio_nums.push_back(f[j]);
    } else {
        d.inverted = f[piece.k1] * f[piece.k2];
        for (int l1 = 0; l1 < n; ++l1)
            for (int l2 = l1; l2 < n; ++l2)
                if (!(l1 == piece.k1 && l2 == piece.k2))
                    d.ratio_nums.push_back(f[l1] * f[l2]);
    }
    if (is_lambda_unit(d, d.inverted)) {
        d.inverted = Poly(1);
        d.ratio_nums.clear();
    }
    return d;
}

Poly random_scalar_poly(const AdicDomain& d, Rng& rng, int max_deg, long height)
{
    long p = *d.p;
    auto scalar = [&]() -> Rational {
        long num = rng.uniform(-height, height);
        if (d.base == BaseKind::Integers)
            return Rational(num);
        long den;
        do {
            den = rng.uniform(1, height);
        } while (d.base == BaseKind::PLocal && den % p == 0);
        Rational q(num, den);
        q.canonicalize();
        return q;
    };
    if (d.constants_only())
        return Poly(scalar());
    int deg = static_cast<int>(rng.uniform(0, max_deg));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(scalar());
    return Poly(std::move(c));
}

// p * c * t^a * (ratio monomial of degree 1..2), c in {+-1, +-2}.
MPoly random_cert(const AdicDomain& d, Rng& rng)
{
    long c = rng.uniform(1, 2) * (rng.coin() ? 1 : -1);
    MPoly h(Rational(*d.p * c));
    if (!d.constants_only() && rng.coin())
        h = h * MPoly::var(var_t);
    if (!d.ratio_nums.empty()) {
        long deg = rng.uniform(1, 2);
        for (long k = 0; k < deg; ++k)
            h = h * MPoly::var(arith::var_u(static_cast<unsigned>(rng.uniform(0, d.ratio_nums.size() - 1))));
    }
    return h;
}

// The same element rewritten as num (1 + h) / (f^n (1 + cert)(1 + h)).
LocElement with_extra_cert(const LocElement& x, const MPoly& h)
{
    const AdicDomain& d = x.ring()->domain;
    auto [hh, m] = homogenize(d, h);
    Poly num = x.num() * (d.inverted.pow(m) + hh);
    return LocElement(x.ring(), num, x.inv_power() + m, x.cert() + h + x.cert() * h);
}

} // namespace

Cover make_cover(const AffinoidPresentation& a, const std::vector<Poly>& gens)
{
    auto cls = fadic::classify(a.ring);
    if (!cls.decided())
        throw InvalidInput("covers are built over catalogued domains: " + cls.reason());
    AdicDomain d = cls.value();
    if (!(d.inverted == Poly(1)) || !d.p)
        throw InvalidInput("covers are built over unlocalized rings with a prime");
    if (gens.empty())
        throw NotACover("the empty family covers nothing");
    d.zariskised = true;
    d.ratio_nums.clear();
    Cover c;
    c.over = a;
    c.global = d;
    c.gens = rational::scale_to_lambda(d, gens);
    for (const auto& f : c.gens)
        if (f.is_zero())
            throw NotACover("a cover element is zero");
    if (d.constants_only())
        for (const auto& f : c.gens)
            if (!f.is_constant())
                throw InvalidInput("cover elements of a constant ring must be constants");
    AdicDomain bd = d;
    bd.zariskised = false;
    bd.inverted = c.gens[0];
    bd.ratio_nums.assign(c.gens.begin() + 1, c.gens.end());
    auto bz = zariski::residual_bezout(bd);
    if (!bz)
        throw NotACover("the cover elements do not generate the unit ideal modulo p");
    c.bezout.push_back(bz->coeff_f);
    c.bezout.insert(c.bezout.end(), bz->coeffs.begin(), bz->coeffs.end());
    c.bezout_z = bz->z;
    Poly sum;
    for (size_t i = 0; i < c.gens.size(); ++i)
        sum += c.bezout[i] * c.gens[i];
    require_certificate(sum == Poly(1) + c.bezout_z, "cover Bezout identity");
    return c;
}

SectionRingPtr sections(const Cover& cover, const Module& m, Piece piece)
{
    auto s = std::make_shared<SectionRing>();
    s->piece = piece;
    s->module = m;
    s->domain = piece_domain(cover, piece);
    auto ring = zariski::make_ring(s->domain);
    if (!ring.decided())
        throw InvalidInput(ring.reason());
    s->ring = ring.value();
    s->presentation = fadic::to_presentation(s->domain);
    if (s->ring->zero || m.components() == 0)
        s->module_zero = true;
    else if (m.kind == Module::Kind::Cyclic)
        s->module_zero = m.relation.is_zero() ? false : zariski::is_unit_zar(LocElement(s->ring, m.relation)).unit;
    return s;
}

std::string SectionElement::to_string() const
{
    if (comps.size() == 1)
        return comps[0].to_string();
    std::string s = "(";
    for (size_t i = 0; i < comps.size(); ++i)
        s += (i ? ", " : "") + comps[i].to_string();
    return s + ")";
}

bool section_equal(const SectionElement& a, const SectionElement& b)
{
    if (!(a.ring->domain == b.ring->domain) || a.comps.size() != b.comps.size())
        throw InvalidInput("sections over different pieces");
    if (a.ring->zero())
        return true;
    const Module& m = a.ring->module;
    for (size_t i = 0; i < a.comps.size(); ++i) {
        if (m.kind == Module::Kind::Cyclic && !m.relation.is_zero()) {
            RatFunc diff = (a.comps[i] - b.comps[i]).value();
            if (!zariski::contains(*a.ring->ring, diff / RatFunc(m.relation)))
                return false;
        } else if (!(a.comps[i] == b.comps[i])) {
            return false;
        }
    }
    return true;
}

SectionElement section_sub(const SectionElement& a, const SectionElement& b)
{
    SectionElement out{a.ring, {}};
    for (size_t i = 0; i < a.comps.size(); ++i)
        out.comps.push_back(a.comps[i] - b.comps.at(i));
    return out;
}

SectionElement section_zero(const SectionRingPtr& ring)
{
    return {ring, std::vector<LocElement>(ring->module.components(), LocElement(ring->ring, Poly()))};
}

CechComplex cech_complex(const Cover& cover, const Module& m)
{
    CechComplex cx;
    cx.cover = cover;
    cx.module = m;
    cx.global = sections(cover, m, Piece::global());
    int n = static_cast<int>(cover.gens.size());
    for (int k = 0; k < n; ++k) {
        cx.pieces.push_back(sections(cover, m, Piece::single(k)));
        cx.to_piece.push_back(rational::make_restriction(cx.global->ring, cx.pieces.back()->ring));
    }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = k1 + 1; k2 < n; ++k2) {
            auto ov = sections(cover, m, Piece::overlap(k1, k2));
            cx.overlaps.emplace_back(k1, k2);
            cx.overlap_rings.push_back(ov);
            cx.from_left.push_back(rational::make_restriction(cx.pieces[k1]->ring, ov->ring));
            cx.from_right.push_back(rational::make_restriction(cx.pieces[k2]->ring, ov->ring));
        }
    return cx;
}

namespace {

SectionElement apply_restriction(const rational::Restriction& r, const SectionRingPtr& target, const SectionElement& s)
{
    SectionElement out{target, {}};
    for (const auto& x : s.comps)
        out.comps.push_back(r.apply(x));
    return out;
}

} // namespace

SectionElement restrict_global(const CechComplex& cx, const SectionElement& s, int k)
{
    return apply_restriction(cx.to_piece.at(k), cx.pieces.at(k), s);
}

SectionElement restrict(const CechComplex& cx, const SectionElement& s, int k, Piece overlap)
{
    auto it = std::find(cx.overlaps.begin(), cx.overlaps.end(), std::make_pair(overlap.k1, overlap.k2));
    if (it == cx.overlaps.end())
        throw InvalidInput(overlap.to_string() + " is not an overlap of the cover");
    size_t idx = it - cx.overlaps.begin();
    if (k == overlap.k1)
        return apply_restriction(cx.from_left[idx], cx.overlap_rings[idx], s);
    if (k == overlap.k2)
        return apply_restriction(cx.from_right[idx], cx.overlap_rings[idx], s);
    throw InvalidInput("U" + std::to_string(k) + " does not contain " + overlap.to_string());
}

std::vector<SectionElement> phi(const CechComplex& cx, const SectionElement& m)
{
    std::vector<SectionElement> out;
    for (size_t k = 0; k < cx.pieces.size(); ++k)
        out.push_back(restrict_global(cx, m, static_cast<int>(k)));
    return out;
}

std::vector<SectionElement> psi(const CechComplex& cx, const std::vector<SectionElement>& pieces)
{
    if (pieces.size() != cx.pieces.size())
        throw InvalidInput("expected one section per cover element");
    std::vector<SectionElement> out;
    for (auto [k1, k2] : cx.overlaps) {
        Piece ov = Piece::overlap(k1, k2);
        out.push_back(section_sub(restrict(cx, pieces[k1], k1, ov), restrict(cx, pieces[k2], k2, ov)));
    }
    return out;
}

Decidable<SectionElement> glue(const CechComplex& cx, const Cocycle& c,
                               const std::optional<std::vector<Poly>>& bezout_override)
{
    const size_t r = cx.pieces.size();
    if (c.size() != r)
        throw InvalidInput("expected one section per cover element");
    for (size_t k = 0; k < r; ++k)
        if (!(c[k].ring->domain == cx.pieces[k]->domain))
            throw InvalidInput("section " + std::to_string(k) + " lives on the wrong piece");
    for (auto [k1, k2] : cx.overlaps) {
        Piece ov = Piece::overlap(k1, k2);
        if (!section_equal(restrict(cx, c[k1], k1, ov), restrict(cx, c[k2], k2, ov)))
            throw NotACocycle("the sections on U" + std::to_string(k1) + " and U" + std::to_string(k2) +
                              " disagree on " + ov.to_string());
    }
    if (cx.global->zero())
        return section_zero(cx.global);

    const AdicDomain& gd = cx.global->domain;
    SectionElement out{cx.global, {}};
    for (size_t comp = 0; comp < cx.module.components(); ++comp) {
        // Collapse every piece to (a_i / F_i) / (1 + x_i / F_i), F_i = f_i^N.
        unsigned n = 1;
        std::vector<Poly> h(r);
        std::vector<unsigned> m(r);
        for (size_t i = 0; i < r; ++i) {
            if (cx.pieces[i]->ring->zero)
                continue;
            const LocElement& x = c[i].comps.at(comp);
            std::tie(h[i], m[i]) = homogenize(cx.pieces[i]->domain, x.cert());
            n = std::max({n, x.inv_power(), m[i]});
        }
        std::vector<Poly> big_f(r), a(r), x(r);
        for (size_t i = 0; i < r; ++i) {
            const Poly& f = cx.pieces[i]->domain.inverted;
            big_f[i] = f.pow(n);
            if (cx.pieces[i]->ring->zero) {
                // f_i lies in I, so f_i + x_i = 0 with a_i = 0 satisfies the relations.
                x[i] = -big_f[i];
                continue;
            }
            const LocElement& e = c[i].comps[comp];
            a[i] = e.num() * f.pow(n - e.inv_power());
            x[i] = h[i] * f.pow(n - m[i]);
        }
        std::vector<Poly> g;
        Poly z;
        Poly check;
        if (bezout_override && n == 1) {
            g = *bezout_override;
            if (g.size() != r)
                throw InvalidInput("the Bezout override needs one coefficient per cover element");
            for (size_t i = 0; i < r; ++i)
                check += g[i] * big_f[i];
            if (!(check == Poly(1)))
                throw InvalidInput("the Bezout override does not sum to 1");
        } else {
            AdicDomain bd = gd;
            bd.zariskised = false;
            bd.inverted = big_f[0];
            bd.ratio_nums.assign(big_f.begin() + 1, big_f.end());
            auto bz = zariski::residual_bezout(bd);
            require_certificate(bz.has_value(), "powers of a cover generate the unit ideal modulo p");
            g.push_back(bz->coeff_f);
            g.insert(g.end(), bz->coeffs.begin(), bz->coeffs.end());
            z = bz->z;
        }
        // With g_i = G_i / (1 + z): a = sum a_j G_j / (1 + z) and
        // (1 + sum x_j g_j)^-1 a = sum a_j G_j / (1 + z + sum x_j G_j).
        Poly num, cert = z;
        for (size_t j = 0; j < r; ++j) {
            num += a[j] * g[j];
            cert += x[j] * g[j];
        }
        out.comps.emplace_back(cx.global->ring, num, 0, MPoly::from_poly(cert));
    }
    for (size_t k = 0; k < r; ++k)
        if (!section_equal(restrict_global(cx, out, static_cast<int>(k)), c[k]))
            return Undecidable{"the glued element does not restrict to the section on U" + std::to_string(k) +
                               "; the gluing argument needs M = A/(g) with A/(g) a domain"};
    return out;
}

SectionElement random_global(const CechComplex& cx, Rng& rng)
{
    const AdicDomain& d = cx.global->domain;
    SectionElement zero = section_zero(cx.global);
    for (int attempt = 0; attempt < 100; ++attempt) {
        SectionElement m{cx.global, {}};
        for (size_t i = 0; i < cx.module.components(); ++i) {
            Poly num = random_scalar_poly(d, rng, 4, 20);
            MPoly cert;
            if (rng.coin()) {
                // p times an integer polynomial of degree <= 2.
                int deg = d.constants_only() ? 0 : static_cast<int>(rng.uniform(0, 2));
                for (int e = 0; e <= deg; ++e)
                    cert += MPoly::monomial(Rational(*d.p * rng.uniform(-2, 2)), {static_cast<unsigned>(e)});
            }
            m.comps.emplace_back(cx.global->ring, num, 0, cert);
        }
        if (cx.global->zero() || !section_equal(m, zero))
            return m;
    }
    throw InvalidInput("could not draw a nonzero global section");
}

Cocycle random_cocycle(const CechComplex& cx, const SectionElement& m, Rng& rng)
{
    Cocycle c = phi(cx, m);
    for (size_t k = 0; k < c.size(); ++k) {
        const auto& piece = cx.pieces[k];
        if (piece->ring->zero)
            continue;
        for (auto& x : c[k].comps) {
            x = with_extra_cert(x, random_cert(piece->domain, rng));
            if (cx.module.kind == Module::Kind::Cyclic && rng.coin()) {
                Poly q = random_scalar_poly(piece->domain, rng, 2, 3);
                x = x + LocElement(piece->ring, q * cx.module.relation);
            }
        }
    }
    return c;
}

CechReport cech_check(const CechComplex& cx, std::size_t trials, std::uint64_t seed)
{
    CechReport rep;
    rep.module = cx.module.to_string();
    for (const auto& f : cx.cover.gens)
        rep.cover.push_back(f.to_string());
    rep.trials = trials;
    rep.seed = seed;

    struct Outcome {
        bool injective = true, psi_zero = true, glue_ok = false, cocycle_ok = false;
        std::string failure;
    };
    std::vector<Outcome> out(trials);
    parallel_for(trials, [&](size_t i) {
        Outcome& o = out[i];
        try {
            Rng rng(Rng::derive(seed, i));
            SectionElement m = random_global(cx, rng);
            auto ph = phi(cx, m);
            if (!cx.global->zero())
                o.injective = std::any_of(ph.begin(), ph.end(), [&](const SectionElement& s) {
                    return !section_equal(s, section_zero(s.ring));
                });
            for (const auto& s : psi(cx, ph))
                o.psi_zero = o.psi_zero && section_equal(s, section_zero(s.ring));
            auto back = glue(cx, ph);
            o.glue_ok = back.decided() && section_equal(back.value(), m);
            Cocycle c = random_cocycle(cx, m, rng);
            auto glued = glue(cx, c);
            if (glued.decided()) {
                o.cocycle_ok = section_equal(glued.value(), m);
                auto again = phi(cx, glued.value());
                for (size_t k = 0; k < c.size(); ++k)
                    o.cocycle_ok = o.cocycle_ok && section_equal(again[k], c[k]);
            }
            if (!o.injective)
                o.failure = "phi killed " + m.to_string();
            else if (!o.psi_zero)
                o.failure = "psi(phi(" + m.to_string() + ")) is not zero";
            else if (!o.glue_ok)
                o.failure = "glue(phi(" + m.to_string() + ")) differs from it";
            else if (!o.cocycle_ok)
                o.failure = glued.decided() ? "glued cocycle does not restrict back" : glued.reason();
        } catch (const Error& e) {
            o.failure = e.what();
        }
    });
    for (size_t i = 0; i < trials; ++i) {
        rep.phi_injective = rep.phi_injective && out[i].injective;
        rep.psi_after_phi_zero = rep.psi_after_phi_zero && out[i].psi_zero;
        rep.glue_roundtrips += out[i].glue_ok;
        rep.cocycle_roundtrips += out[i].cocycle_ok;
        if (!out[i].failure.empty())
            rep.failures.push_back("trial " + std::to_string(i) + ": " + out[i].failure);
    }
    return rep;
}

} // namespace zadic::presheaf
