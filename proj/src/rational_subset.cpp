#include "zadic/rational_subset.hpp"

#include <algorithm>

#include "zadic/parse.hpp"
#include "zadic/rng.hpp"

namespace zadic::rational {

using arith::Integer;
using arith::var_t;
using arith::var_u;
using arith::var_u0;
using fadic::BaseKind;

namespace {

AdicDomain base_domain(const fadic::AffinoidPresentation& a)
{
    auto cls = fadic::classify(a.ring);
    if (!cls.decided())
        throw InvalidInput("rational subsets are built over catalogued domains: " + cls.reason());
    const AdicDomain& d = cls.value();
    if (!(d.inverted == Poly(1)))
        throw InvalidInput("rational subsets are built over unlocalized rings");
    if (!d.p)
        throw InvalidInput("rational subsets need a prime");
    return d;
}

// Smallest p-adic exponent among nonzero coefficients.
long min_exponent(const std::vector<Poly>& fs, long p)
{
    long best = 0;
    bool first = true;
    for (const auto& f : fs) {
        if (f.is_zero())
            continue;
        long e = arith::content_exp(f, p);
        if (first || e < best)
            best = e;
        first = false;
    }
    return best;
}

std::vector<Poly> normalize(const AdicDomain& d, std::vector<Poly> all)
{
    // Only rings where p is invertible may be rescaled: dividing by p would
    // otherwise shrink the subset.
    if (d.base == BaseKind::Integers || d.base == BaseKind::PLocal) {
        for (const auto& f : all)
            if (!std::all_of(f.coeffs().begin(), f.coeffs().end(), [&](const Rational& c) { return fadic::in_scalars(d, c); }))
                throw InvalidInput(f.to_string() + " is not an element of the ring");
        return all;
    }
    Rational scale = arith::pow(Rational(*d.p), -min_exponent(all, *d.p));
    for (auto& f : all)
        f *= scale;
    return all;
}

} // namespace

std::vector<Poly> scale_to_lambda(const AdicDomain& d, std::vector<Poly> fs)
{
    return normalize(d, std::move(fs));
}

std::string RationalSubset::to_string() const
{
    std::string s = "R(";
    for (size_t i = 0; i < nums.size(); ++i)
        s += (i ? ", " : "") + nums[i].to_string();
    return s + " / " + den.to_string() + ")";
}

RationalSubset mk_rational_subset(const fadic::AffinoidPresentation& a, std::vector<Poly> nums, Poly den)
{
    AdicDomain d = base_domain(a);
    if (den.is_zero())
        throw NotOpen("the denominator is zero");
    std::vector<MPoly> gens;
    for (const auto& f : nums)
        gens.push_back(MPoly::from_poly(f));
    gens.push_back(MPoly::from_poly(den));
    auto open = fadic::is_open_ideal(a.ring, gens);
    if (!open.decided())
        throw InvalidInput(open.reason());
    if (!open.value().open)
        throw NotOpen("(f_1, ..., f_r, g) is not open: " + open.value().explanation);
    RationalSubset u;
    u.over = a;
    u.nums = nums;
    u.den = den;
    std::vector<Poly> all = nums;
    all.push_back(den);
    all = normalize(d, all);
    u.scaled_den = all.back();
    all.pop_back();
    u.scaled_nums = all;
    u.openness = open.value();
    return u;
}

RationalSubset parse_rational_subset(const fadic::AffinoidPresentation& a, const std::string& text)
{
    std::string s = text;
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos || s.compare(first, 2, "R(") != 0 || s[last] != ')')
        throw InvalidInput("expected R(f1, ..., fr / g), got \"" + text + "\"");
    std::string body = s.substr(first + 2, last - first - 2);
    int depth = 0;
    size_t slash = std::string::npos;
    std::vector<size_t> commas;
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth == 0 && c == '/')
            slash = i;
        else if (depth == 0 && c == ',')
            commas.push_back(i);
    }
    if (slash == std::string::npos)
        throw InvalidInput("missing '/' in \"" + text + "\"");
    std::vector<Poly> nums;
    size_t start = 0;
    for (size_t c : commas) {
        if (c > slash)
            throw InvalidInput("the denominator must be a single element");
        nums.push_back(arith::parse_poly(body.substr(start, c - start)));
        start = c + 1;
    }
    nums.push_back(arith::parse_poly(body.substr(start, slash - start)));
    Poly den = arith::parse_poly(body.substr(slash + 1));
    return mk_rational_subset(a, nums, den);
}

LocalizedAffinoid rational_localization(const fadic::AffinoidPresentation& a, const RationalSubset& u)
{
    AdicDomain base = base_domain(a);
    AdicDomain d = base;
    d.zariskised = true;
    const Poly& g = u.scaled_den;
    bool unit_den = g.is_constant() && fadic::in_scalars(d, 1 / g.constant_term());
    if (!unit_den) {
        d.inverted = g;
        d.ratio_nums = u.scaled_nums;
    }
    LocalizedAffinoid out;
    out.domain = d;
    auto ring = zariski::make_ring(d);
    if (!ring.decided())
        throw InvalidInput(ring.reason());
    out.ring = ring.value();
    out.carrier = fadic::to_presentation(d);
    out.plus = a.plus_ring;
    for (size_t i = 0; i < d.ratio_nums.size(); ++i)
        out.plus.push_back(MPoly::from_poly(d.ratio_nums[i]) * MPoly::var(var_u0));
    std::map<Var, MPoly> images;
    if (!d.constants_only())
        images[var_t] = MPoly::var(var_t);
    out.map_from_a = fadic::RingMap{a.ring, out.carrier, images, std::nullopt};
    fadic::ContinuityCertificate cert;
    for (int n = 1; n <= 8; ++n)
        cert.levels.emplace_back(n, n);
    out.map_from_a.continuity = cert;
    return out;
}

bool in_rational_subset(const DiscreteValuation& v, const RationalSubset& u)
{
    if (!v.is_spa_point())
        throw InvalidInput("the (t - a)-adic valuation is not a point of Spa A");
    PValue g = val_apply(v, RatFunc(u.den));
    if (g.is_zero())
        return false;
    for (const auto& f : u.nums)
        if (val_apply(v, RatFunc(f)) > g)
            return false;
    return true;
}

LocElement Restriction::apply(const LocElement& x) const
{
    if (!(x.ring()->domain == source->domain))
        throw InvalidInput("element of a different ring");
    MPoly cert = x.cert().substitute([&](Var v) {
        if (v == var_t)
            return MPoly::var(var_t);
        auto it = ratio_images.find(v);
        if (it == ratio_images.end())
            throw InvalidInput("no image for " + arith::var_name(v));
        return it->second;
    });
    LocElement y(target, x.num() * factor.pow(x.inv_power()), x.inv_power(), cert);
    require_certificate(target->zero || source->zero || y.value() == x.value(), "restriction preserves the value");
    return y;
}

Restriction make_restriction(const zariski::Ring& source, const zariski::Ring& target)
{
    const AdicDomain& s = source->domain;
    const AdicDomain& t = target->domain;
    if (s.base != t.base || s.p != t.p || s.zariskised != t.zariskised)
        throw InvalidInput("restriction between rings of different kinds");
    auto [c, r] = arith::divmod(t.inverted, s.inverted);
    if (!r.is_zero() || (s.p && !arith::is_p_integral(c, *s.p)))
        throw InvalidInput("the target does not invert the source's element");
    if (s.base == BaseKind::Integers && !(c.is_constant() && arith::is_integer(c.constant_term())))
        throw InvalidInput("the factor is not an integer");
    Restriction out{source, target, c, {}};
    for (size_t i = 0; i < s.ratio_nums.size(); ++i) {
        Poly want = s.ratio_nums[i] * c;
        bool found = false;
        for (size_t j = 0; j < t.ratio_nums.size() && !found; ++j) {
            auto [q, rem] = arith::divmod(want, t.ratio_nums[j]);
            if (!rem.is_zero())
                continue;
            if (s.p ? !arith::is_p_integral(q, *s.p)
                    : !std::all_of(q.coeffs().begin(), q.coeffs().end(), arith::is_integer))
                continue;
            if (s.base == BaseKind::Integers && !std::all_of(q.coeffs().begin(), q.coeffs().end(), arith::is_integer))
                continue;
            out.ratio_images[var_u(i)] = MPoly::from_poly(q) * MPoly::var(var_u(j));
            found = true;
        }
        if (!found)
            throw InvalidInput("cannot express " + s.ratio(i).to_string() + " in the target's ratio generators");
    }
    return out;
}

KernelPoint kernel_point_for_maximal(const fadic::AffinoidPresentation& a, const MPoly& m)
{
    auto cls = fadic::classify(a.ring);
    if (!cls.decided())
        return {std::nullopt, "outside the catalogued family: " + cls.reason()};
    AdicDomain d = cls.value();
    if (!d.p)
        return {std::nullopt, "no ideal of definition"};
    long p = *d.p;
    auto zar = zariski::is_zariskian(a.ring);
    if (!zar.decided() || !zar.value().zariskian) {
        std::string why = zar.decided() && zar.value().witness
                              ? "A is not Zariskian: " + zar.value().witness->to_string() +
                                    " lies in 1 + I but is not a unit, so a maximal ideal need not be the kernel of a "
                                    "point"
                              : "A is not known to be Zariskian";
        return {std::nullopt, why};
    }
    if (!(d.inverted == Poly(1)))
        return {std::nullopt, "kernel points are constructed over unlocalized rings only"};
    auto mp = m.to_poly(var_t);
    if (!mp || mp->is_zero())
        throw InvalidInput("the generator must be a nonzero element of the carrier");
    auto ring = zariski::make_ring(d);
    if (!ring.decided())
        return {std::nullopt, ring.reason()};
    if (zariski::is_unit_zar(LocElement(ring.value(), *mp)).unit)
        throw InvalidInput(m.to_string() + " is a unit, so it generates the whole ring");
    if (d.constants_only()) {
        if (d.base == BaseKind::Rationals)
            throw InvalidInput("a field has no nonzero proper ideals");
        // A non-unit of a ring inside Z_(p) with p in m: the ideal is (p) up to units.
        Rational c = mp->constant_term();
        if (arith::padic_val(c, p).exponent() != 1)
            throw InvalidInput("(" + m.to_string() + ") is not the maximal ideal (p)");
        return {DiscreteValuation::residue_trivial(p), "reduce mod p, then take the trivial valuation on F_p"};
    }
    if (mp->degree() == 1) {
        Rational c = -mp->constant_term() / mp->lead();
        return {DiscreteValuation::eval_padic(p, c), "evaluation at t = " + arith::to_string(c)};
    }
    if (mp->degree() == 2 && arith::irreducible_quadratic_over_Q(*mp))
        return {std::nullopt, "(" + m.to_string() +
                                  ") is maximal with residue field a quadratic extension of Q; a point with this "
                                  "kernel needs a valuation on that extension, which is not modelled"};
    if (mp->degree() == 2)
        throw InvalidInput("(" + m.to_string() + ") is not maximal: the quadratic has a rational root");
    return {std::nullopt, "maximal ideals of degree above 2 are outside the catalogue"};
}

std::vector<DiscreteValuation> sample_valuations(long p, size_t count, std::uint64_t seed)
{
    std::vector<DiscreteValuation> out;
    out.push_back(DiscreteValuation::gauss(p));
    Rng rng(seed);
    while (out.size() < count) {
        long kind = rng.uniform(0, 3);
        // Centres: small integers and p-integral fractions.
        long num = rng.uniform(-3 * p, 3 * p);
        long den = rng.uniform(1, 4);
        while (den % p == 0)
            den = rng.uniform(1, 4);
        Rational c = arith::make_rational(num, den);
        if (kind == 0)
            out.push_back(DiscreteValuation::disc(p, c, rng.uniform(1, 3)));
        else
            out.push_back(DiscreteValuation::eval_padic(p, c));
    }
    return out;
}

} // namespace zadic::rational
