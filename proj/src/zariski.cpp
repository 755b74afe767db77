#include "zadic/zariski.hpp"

#include <algorithm>

namespace zadic::zariski {

using arith::Integer;
using arith::Monomial;
using arith::Var;
using arith::var_t;
using arith::var_u;
using arith::var_u0;
using fadic::BaseKind;

namespace {

Rational p_unit_inverse_mod(const Rational& c, long p)
{
    long r = arith::residue_mod_p(c, p);
    return Rational(arith::inverse_mod(r, p));
}

std::optional<ResidualBezout> residual_constants(const AdicDomain& d, const std::vector<Rational>& gens)
{
    long p = *d.p;
    size_t m = gens.size();
    ResidualBezout out;
    out.coeffs.assign(m - 1, Poly());
    auto set = [&](size_t i, const Rational& c) {
        if (i + 1 == m)
            out.coeff_f = Poly(c);
        else
            out.coeffs[i] = Poly(c);
    };
    for (size_t i = 0; i < m; ++i) {
        if (gens[i] == 0 || arith::padic_val(gens[i], p).exponent() != 0)
            continue;
        if (d.base == BaseKind::Integers) {
            // Exact over Z when the generator is a unit, else mod p.
            Integer g(gens[i].get_num());
            if (g == 1 || g == -1) {
                set(i, Rational(g));
            } else {
                set(i, p_unit_inverse_mod(gens[i], p));
            }
        } else {
            set(i, 1 / gens[i]);
        }
        Rational total = i + 1 == m ? out.coeff_f.constant_term() * gens[i] : out.coeffs[i].constant_term() * gens[i];
        out.z = Poly(total - 1);
        return out;
    }
    return std::nullopt;
}

} // namespace

std::optional<ResidualBezout> residual_bezout(const AdicDomain& d)
{
    if (!d.p)
        return std::nullopt;
    long p = *d.p;
    std::vector<Poly> gens = d.ratio_nums;
    gens.push_back(d.inverted);
    if (d.constants_only()) {
        std::vector<Rational> cs;
        for (const auto& g : gens)
            cs.push_back(g.constant_term());
        return residual_constants(d, cs);
    }
    ResidualBezout out;
    // An exact identity with p-integral coefficients needs no correction term.
    try {
        auto cs = arith::bezout(gens);
        if (std::all_of(cs.begin(), cs.end(), [&](const Poly& c) { return arith::is_p_integral(c, p); })) {
            out.coeff_f = cs.back();
            cs.pop_back();
            out.coeffs = cs;
            return out;
        }
    } catch (const NoBezout&) {
        return std::nullopt;
    }
    std::vector<PolyFp> red;
    for (const auto& g : gens)
        red.push_back(arith::reduce_mod_p(g, p));
    PolyFp acc(p);
    std::vector<PolyFp> co(gens.size(), PolyFp(p));
    for (size_t i = 0; i < red.size(); ++i) {
        if (red[i].is_zero())
            continue;
        if (acc.is_zero()) {
            acc = red[i];
            co[i] = PolyFp::constant(p, 1);
            continue;
        }
        auto x = arith::xgcd(acc, red[i]);
        for (size_t k = 0; k < i; ++k)
            co[k] = co[k] * x.s;
        co[i] = x.t;
        acc = x.g;
    }
    if (acc.is_zero() || acc.degree() > 0)
        return std::nullopt;
    long inv = arith::inverse_mod(acc.lead(), p);
    Poly total;
    for (size_t i = 0; i < gens.size(); ++i) {
        Poly c = co[i].scaled(inv).lift();
        total += c * gens[i];
        if (i + 1 == gens.size())
            out.coeff_f = c;
        else
            out.coeffs.push_back(c);
    }
    out.z = total - Poly(1);
    require_certificate(out.z.is_zero() || (arith::is_p_integral(out.z, p) && arith::content_exp(out.z, p) >= 1),
                        "residual Bezout correction lies in p*Lambda[t]");
    return out;
}

Decidable<Ring> make_ring(const AdicDomain& d)
{
    fadic::validate(d);
    auto r = std::make_shared<LocRing>();
    r->domain = d;
    if (d.p) {
        r->bezout = residual_bezout(d);
        if (d.zariskised && !r->bezout)
            return Undecidable{"the generators have no residual Bezout identity mod p"};
    }
    if (r->bezout) {
        MPoly e = MPoly::from_poly(r->bezout->coeff_f);
        for (size_t i = 0; i < r->bezout->coeffs.size(); ++i)
            e += MPoly::from_poly(r->bezout->coeffs[i]) * MPoly::var(var_u(i));
        r->e_element = e;
    }
    if (d.zariskised) {
        const Poly& f = d.inverted;
        r->zero = arith::content_exp(f, *d.p) >= 1;
    }
    return Ring(r);
}

RatFunc cert_value(const LocRing& ring, const MPoly& cert)
{
    const AdicDomain& d = ring.domain;
    RatFunc v = cert.evaluate<RatFunc>([&](Var x) -> RatFunc {
        if (x == var_t)
            return RatFunc(Poly::t());
        if (x < var_u0 || x - var_u0 >= d.ratio_nums.size())
            throw InvalidInput("certificate uses an unknown variable " + arith::var_name(x));
        return d.ratio(x - var_u0);
    });
    return RatFunc(Poly(1)) + v;
}

namespace {

// num * f^D after substituting u_i = r_i / f, with D the u-degree of x.
std::pair<Poly, unsigned> clear_u(const LocRing& ring, const MPoly& x)
{
    const AdicDomain& d = ring.domain;
    unsigned deg = 0;
    for (const auto& [m, c] : x.terms()) {
        unsigned k = 0;
        for (Var v = var_u0; v < m.size(); ++v)
            k += m[v];
        deg = std::max(deg, k);
    }
    Poly out;
    for (const auto& [m, c] : x.terms()) {
        Poly term(c);
        unsigned k = 0;
        for (Var v = 0; v < m.size(); ++v) {
            if (!m[v])
                continue;
            if (v == var_t)
                term *= Poly::t().pow(m[v]);
            else if (v >= var_u0)
                term *= d.ratio_nums.at(v - var_u0).pow(m[v]), k += m[v];
            else
                throw InvalidInput("unexpected variable " + arith::var_name(v));
        }
        out += term * d.inverted.pow(deg - k);
    }
    return {out, deg};
}

void check_cert(const LocRing& ring, const MPoly& cert)
{
    for (const auto& [m, c] : cert.terms())
        if (!fadic::in_scalar_ideal(ring.domain, c))
            throw CertificateFailure("certificate coefficient " + arith::to_string(c) + " is not in the ideal of definition");
    if (!cert.is_zero() && !ring.domain.zariskised)
        throw CertificateFailure("a certificate in a ring that is not Zariskised");
}

} // namespace

LocElement::LocElement(Ring ring, Poly num, unsigned n, MPoly cert)
    : ring_(std::move(ring)), num_(std::move(num)), n_(n), cert_(std::move(cert))
{
    check_cert(*ring_, cert_);
}

RatFunc LocElement::value() const
{
    if (ring_->zero)
        return RatFunc();
    RatFunc den = RatFunc(ring_->f().pow(n_));
    if (!cert_.is_zero())
        den = den * cert_value(*ring_, cert_);
    return RatFunc(num_) / den;
}

namespace {

const Ring& common(const LocElement& a, const LocElement& b)
{
    if (a.ring() != b.ring() && !(a.ring()->domain == b.ring()->domain))
        throw InvalidInput("elements of different rings");
    return a.ring();
}

} // namespace

LocElement operator*(const LocElement& a, const LocElement& b)
{
    const Ring& r = common(a, b);
    MPoly cert = a.cert() + b.cert() + a.cert() * b.cert();
    return LocElement(r, a.num() * b.num(), a.inv_power() + b.inv_power(), cert);
}

LocElement operator+(const LocElement& a, const LocElement& b)
{
    const Ring& r = common(a, b);
    unsigned n = std::max(a.inv_power(), b.inv_power());
    const Poly& f = r->f();
    Poly an = a.num() * f.pow(n - a.inv_power());
    Poly bn = b.num() * f.pow(n - b.inv_power());
    if (a.cert() == b.cert())
        return LocElement(r, an + bn, n, a.cert());
    MPoly top = MPoly::from_poly(an) * (MPoly(1) + b.cert()) + MPoly::from_poly(bn) * (MPoly(1) + a.cert());
    auto [num, deg] = clear_u(*r, top);
    MPoly cert = a.cert() + b.cert() + a.cert() * b.cert();
    return LocElement(r, num, n + deg, cert);
}

LocElement LocElement::operator-() const
{
    return LocElement(ring_, -num_, n_, cert_);
}

LocElement operator-(const LocElement& a, const LocElement& b)
{
    return a + (-b);
}

LocElement LocElement::pow(unsigned e) const
{
    LocElement out(ring_, Poly(1));
    LocElement base = *this;
    while (e) {
        if (e & 1)
            out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

bool operator==(const LocElement& a, const LocElement& b)
{
    common(a, b);
    if (a.ring()->zero)
        return true;
    return a.value() == b.value();
}

std::string LocElement::to_string() const
{
    std::string s = "(" + num_.to_string() + ")";
    if (n_ == 0 && cert_.is_zero())
        return s;
    s += " / (";
    if (n_ > 0)
        s += "(" + ring_->f().to_string() + ")^" + std::to_string(n_);
    if (!cert_.is_zero())
        s += std::string(n_ > 0 ? " * " : "") + "(1 + " + cert_.to_string() + ")";
    return s + ")";
}

namespace {

struct Split {
    Poly shared;   // factors of the denominator that divide a power of f
    Poly rest;     // coprime to f
    unsigned k = 0; // shared | f^k
};

Split split_against(const Poly& den, const Poly& f)
{
    Split s;
    s.shared = Poly(1);
    s.rest = den;
    for (;;) {
        Poly g = arith::poly_gcd(s.rest, f);
        if (g.degree() <= 0)
            break;
        s.rest = arith::exact_div(s.rest, g);
        s.shared *= g;
    }
    Poly fk(1);
    while (!arith::divides(s.shared, fk)) {
        fk *= f;
        ++s.k;
    }
    return s;
}

struct SplitZ {
    Integer shared = 1;
    Integer rest;
    unsigned k = 0;
};

SplitZ split_against(Integer den, const Integer& f)
{
    SplitZ s;
    s.rest = den;
    Integer af = abs(f);
    for (;;) {
        Integer g = gcd(s.rest, af);
        if (g == 1 || af == 0)
            break;
        s.rest /= g;
        s.shared *= g;
    }
    Integer fk = 1;
    while (fk % s.shared != 0) {
        fk *= af;
        ++s.k;
    }
    return s;
}

std::optional<LocElement> represent_constant(const Ring& ring, const Rational& y)
{
    const AdicDomain& d = ring->domain;
    if (ring->zero)
        return LocElement(ring, Poly());
    Rational f = d.inverted.constant_term();
    switch (d.base) {
    case BaseKind::Rationals:
        if (!d.p || arith::is_p_integral(y, *d.p))
            return LocElement(ring, Poly(y));
        [[fallthrough]];
    case BaseKind::PLocal: {
        long p = *d.p;
        if (arith::is_p_integral(y, p))
            return LocElement(ring, Poly(y));
        long s = arith::padic_val(f, p).exponent();
        if (s <= 0) {
            if (d.base == BaseKind::PLocal)
                return std::nullopt;
            // Q with A0 = Z_(p)[r/f] and f a p-unit: a numerator of 1.
            return LocElement(ring, Poly(y));
        }
        long e = -arith::padic_val(y, p).exponent();
        unsigned n = static_cast<unsigned>((e + s - 1) / s);
        return LocElement(ring, Poly(y * arith::pow(f, n)), n);
    }
    case BaseKind::Integers: {
        Integer fz(f.get_num());
        SplitZ sp = split_against(Integer(y.get_den()), fz);
        Integer fk = 1;
        for (unsigned i = 0; i < sp.k; ++i)
            fk *= fz;
        Rational base_num = Rational(Integer(y.get_num()) * (fk / sp.shared));
        if (sp.rest == 1)
            return LocElement(ring, Poly(base_num), sp.k);
        if (!d.zariskised || sp.rest % *d.p == 0)
            return std::nullopt;
        long p = *d.p;
        Rational b(sp.rest);
        Rational c = p_unit_inverse_mod(b, p);
        Rational w = (b * c - 1) / p;
        return LocElement(ring, Poly(base_num * c), sp.k, MPoly(w * p));
    }
    case BaseKind::PolyQ:
        break;
    }
    return std::nullopt;
}

MPoly mpoly_pow(const MPoly& x, unsigned e)
{
    return x.pow(e);
}

} // namespace

std::optional<unsigned> power_divisible(const PolyFp& b, const PolyFp& a)
{
    if (b.is_zero())
        return std::nullopt;
    if (b.is_constant())
        return 0u;
    if (a.is_zero())
        return std::nullopt;
    PolyFp acc = PolyFp::constant(b.modulus(), 1);
    for (int j = 1; j <= b.degree(); ++j) {
        acc = acc * a;
        if (arith::rem(acc, b).is_zero())
            return static_cast<unsigned>(j);
    }
    return std::nullopt;
}

std::optional<LocElement> represent(const Ring& ring, const RatFunc& y)
{
    const AdicDomain& d = ring->domain;
    if (d.constants_only()) {
        if (!y.is_constant())
            return std::nullopt;
        auto out = represent_constant(ring, y.num().constant_term());
        if (out && !ring->zero)
            require_certificate(out->value() == y, "representation has the requested value");
        return out;
    }
    if (ring->zero)
        return LocElement(ring, Poly());
    if (y.is_zero())
        return LocElement(ring, Poly());
    const Poly& f = d.inverted;
    Split sp = split_against(y.den(), f);
    Poly base_num = y.num() * arith::exact_div(f.pow(sp.k), sp.shared);
    std::optional<LocElement> out;
    if (sp.rest.degree() == 0) {
        out = LocElement(ring, base_num * (1 / sp.rest.constant_term()), sp.k);
    } else if (d.zariskised) {
        long p = *d.p;
        auto pp = arith::p_primitive(sp.rest, p);
        PolyFp bbar = arith::reduce_mod_p(pp.primitive, p);
        PolyFp fbar = arith::reduce_mod_p(f, p);
        auto j = power_divisible(bbar, fbar);
        if (!j)
            return std::nullopt;
        PolyFp fj = PolyFp::constant(p, 1);
        for (unsigned i = 0; i < *j; ++i)
            fj = fj * fbar;
        auto [cbar, r] = arith::divmod(fj, bbar);
        require_certificate(r.is_zero(), "reduction divides a power of f");
        Poly c = cbar.lift();
        Poly w = (pp.primitive * c - f.pow(*j)) * Rational(1, p);
        require_certificate(arith::is_p_integral(w, p), "lifted cofactor agrees mod p");
        const ResidualBezout& bz = *ring->bezout;
        MPoly one_z = MPoly(1) + MPoly::from_poly(bz.z);
        MPoly cert = mpoly_pow(one_z, *j) - MPoly(1) +
                     MPoly::from_poly(w * Rational(p)) * mpoly_pow(ring->e_element, *j);
        Poly num = base_num * c * (Poly(1) + bz.z).pow(*j) * arith::pow(Rational(p), -pp.exponent);
        out = LocElement(ring, num, sp.k + *j, cert);
    } else {
        return std::nullopt;
    }
    require_certificate(out->value() == y, "representation has the requested value");
    return out;
}

bool contains(const LocRing& ring, const RatFunc& y)
{
    auto self = std::shared_ptr<const LocRing>(std::shared_ptr<const LocRing>(), &ring);
    return represent(self, y).has_value();
}

ZariskisationDescriptor zariskisation(const fadic::RingPresentation& a)
{
    auto cls = fadic::classify(a);
    if (!cls.decided())
        throw InvalidInput("outside the catalogued family: " + cls.reason());
    AdicDomain d = cls.value();
    ZariskisationDescriptor out;
    out.base = a;
    if (d.p) {
        d.zariskised = true;
        out.inverted_ideal_gens = {MPoly(Rational(*d.p))};
    }
    auto ring = make_ring(d);
    if (!ring.decided())
        throw InvalidInput(ring.reason());
    out.ring = ring.value();
    out.presentation = fadic::to_presentation(d);
    return out;
}

UnitDecision is_unit_zar(const LocElement& x)
{
    UnitDecision out;
    const Ring& ring = x.ring();
    if (ring->zero) {
        out.unit = true;
        out.inverse = LocElement(ring, Poly());
        out.reason = "the ring is zero";
        return out;
    }
    RatFunc v = x.value();
    if (v.is_zero()) {
        out.reason = "zero is not a unit";
        return out;
    }
    auto inv = represent(ring, v.inverse());
    if (inv) {
        require_certificate((x * *inv).value() == RatFunc(Poly(1)), "x times its inverse is 1");
        out.unit = true;
        out.inverse = inv;
        out.reason = "inverse found and verified";
        return out;
    }
    const AdicDomain& d = ring->domain;
    if (d.p && !d.constants_only()) {
        Split sp = split_against(v.num(), d.inverted);
        auto pp = arith::p_primitive(sp.rest, *d.p);
        out.evidence = arith::reduce_mod_p(pp.primitive, *d.p);
        out.reason = "the primitive part of the numerator away from f reduces to " + out.evidence->to_string() +
                     ", which divides no power of f mod p";
        if (!d.zariskised)
            out.reason = "the numerator has factors other than those of f";
    } else if (d.p && d.constants_only()) {
        out.reason = "1/" + arith::to_string(v.num().constant_term()) + " is not in the ring";
    } else {
        out.reason = "the numerator has factors other than those of f";
    }
    return out;
}

UnitDecision is_unit_zar(const MPoly& x, const ZariskisationDescriptor& z)
{
    auto p = x.to_poly(var_t);
    if (!p || (z.ring->domain.constants_only() && !p->is_constant()))
        throw InvalidInput("element " + x.to_string() + " is not in the carrier");
    return is_unit_zar(LocElement(z.ring, *p));
}

namespace {

ZariskianDecision not_zariskian(const RatFunc& w, const std::string& why)
{
    ZariskianDecision z;
    z.witness = w;
    z.justification = why;
    return z;
}

} // namespace

Decidable<ZariskianDecision> is_zariskian(const fadic::RingPresentation& a)
{
    using fadic::CarrierKind;
    auto cls = fadic::classify(a);
    if (!cls.decided()) {
        const auto& c = *a.carrier;
        if (c.kind == CarrierKind::Quotient && c.base->kind == CarrierKind::Integers && a.prime) {
            Integer n = 0;
            for (const auto& g : c.ideal)
                n = gcd(n, Integer(g.constant_term().get_num()));
            long p = *a.prime;
            Integer rest = n;
            while (rest != 0 && rest % p == 0)
                rest /= p;
            if (n == 0)
                return Undecidable{"Z with a zero ideal should be given as Z"};
            if (rest == 1 || rest == -1) {
                ZariskianDecision z;
                z.zariskian = true;
                z.justification = "every prime factor of " + n.get_str() + " is p, so p is nilpotent and 1 + pA is units";
                return z;
            }
            // A prime q != p dividing n: 1 + p*m = 0 mod q.
            Integer q = 2;
            while (rest % q != 0)
                ++q;
            Integer m = q - Integer(arith::inverse_mod(p % q.get_si(), q.get_si()));
            return not_zariskian(RatFunc(Poly(Rational(Integer(1) + p * m))),
                                 "1 + p*" + m.get_str() + " is divisible by " + q.get_str() + ", a prime factor of " +
                                     n.get_str());
        }
        if (c.kind == CarrierKind::Quotient && c.base->kind == CarrierKind::PolyRingOverQ) {
            auto q = fadic::quotient_fadic(fadic::make_presentation(c.base, a.ring_of_def, a.ideal_of_def, a.prime),
                                           c.ideal);
            if (q.simplified) {
                ZariskianDecision z;
                z.zariskian = true;
                z.justification = "isomorphic to Q with the p-adic topology, a field in which 1 + pZ_(p) avoids 0";
                return z;
            }
        }
        return Undecidable{"outside the catalogued family: " + cls.reason()};
    }
    const AdicDomain& d = cls.value();
    ZariskianDecision z;
    if (!d.p) {
        z.zariskian = true;
        z.justification = "the ideal of definition is zero, so 1 + I = {1}";
        return z;
    }
    long p = *d.p;
    if (d.zariskised) {
        auto ring = make_ring(d);
        if (!ring.decided())
            return Undecidable{ring.reason()};
        z.zariskian = true;
        z.justification = "A is a Zariskisation: 1 + pA0 is inverted by construction, and an element 1 + y with y "
                          "topologically nilpotent is (1 + pa)/s with s in 1 + pA0, again of that form";
        return z;
    }
    switch (d.base) {
    case BaseKind::PolyQ: {
        Poly w = Poly(1) + d.inverted * Poly::t() * Rational(p);
        auto ring = make_ring(d);
        require_certificate(!contains(*ring.value(), RatFunc(Poly(1), w)), "1 + p*f*t is not a unit");
        return not_zariskian(RatFunc(w), "1 + p*f*t is coprime to f and not constant, so it is not a unit of Q[t,1/f]");
    }
    case BaseKind::Integers: {
        Integer f(d.inverted.constant_term().get_num());
        if (f % p == 0)
            return Undecidable{"p divides the inverted integer"};
        auto ring = make_ring(d).value();
        for (long k = 1; k <= 5; ++k) {
            Rational w = 1 + Rational(p * k) * Rational(f);
            if (!contains(*ring, RatFunc(Poly(1 / w))))
                return not_zariskian(RatFunc(Poly(w)), "1 + p*" + std::to_string(k) + "*f = " + arith::to_string(w) +
                                                            " has a prime factor not dividing f");
        }
        return Undecidable{"no witness among 1 + p*k*f"};
    }
    case BaseKind::PLocal:
    case BaseKind::Rationals: {
        for (size_t i = 0; i < d.ratio_nums.size(); ++i) {
            Rational r = d.ratio(i).num().constant_term();
            if (!arith::is_p_integral(r, p))
                return not_zariskian(RatFunc(), "A0 contains 1/p, so 1 + p*(-1/p) = 0 lies in 1 + I");
        }
        z.zariskian = true;
        z.justification = "A0 lies in Z_(p), and every element of 1 + pZ_(p) is a p-adic unit";
        return z;
    }
    }
    return Undecidable{"unreachable"};
}

Decidable<bool> is_top_nilpotent_zar(const LocElement& x)
{
    const LocRing& ring = *x.ring();
    if (ring.zero || x.num().is_zero())
        return true;
    const AdicDomain& d = ring.domain;
    if (!d.p)
        return false; // a domain with the discrete topology: only 0
    long p = *d.p;
    bool inverse_bounded = d.inverted == Poly(1) || d.zariskised ||
                           (ring.bezout && ring.bezout->z.is_zero());
    if (!inverse_bounded)
        return Undecidable{"1/f is not known to be power-bounded"};
    if (arith::content_exp(d.inverted, p) != 0 && !d.constants_only())
        return Undecidable{"f has positive content"};
    if (!arith::is_p_integral(x.num(), p))
        return false;
    return arith::content_exp(x.num(), p) >= 1;
}

TruncatedInverse truncated_inverse(const AdicDomain& d, const Poly& y, unsigned n_terms)
{
    if (!d.p)
        throw InvalidInput("no ideal of definition");
    if (!(d.inverted == Poly(1)))
        throw InvalidInput("truncated inverses are taken in the unlocalized ring");
    if (d.constants_only() && !y.is_constant())
        throw InvalidInput("element is not in the ring");
    long p = *d.p;
    bool nil = y.is_zero() || (arith::is_p_integral(y, p) && arith::content_exp(y, p) >= 1 &&
                               (d.base != BaseKind::Integers || arith::is_integer(y.constant_term())));
    if (!nil)
        throw InvalidInput(y.to_string() + " is not topologically nilpotent");
    TruncatedInverse out;
    Poly power(1);
    for (unsigned k = 0; k < n_terms; ++k) {
        out.sum += power;
        power *= y;
    }
    out.residual = (Poly(1) - y) * out.sum - Poly(1);
    require_certificate(out.residual == -power, "(1 - y) * s_N - 1 = -y^N");
    if (!out.residual.is_zero()) {
        out.level = arith::content_exp(out.residual, p);
        require_certificate(*out.level >= static_cast<long>(n_terms) * arith::content_exp(y, p),
                            "residual lies in I0^N");
    }
    return out;
}

} // namespace zadic::zariski
