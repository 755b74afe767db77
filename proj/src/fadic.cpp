#include "zadic/fadic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zadic::fadic {

using arith::Integer;
using arith::Monomial;
using arith::PValue;
using arith::var_t;

namespace {

CarrierPtr make(Carrier c)
{
    return std::make_shared<const Carrier>(std::move(c));
}

bool only_vars(const MPoly& x, const std::vector<Var>& allowed)
{
    for (const auto& [m, c] : x.terms())
        for (Var v = 0; v < m.size(); ++v)
            if (m[v] && std::find(allowed.begin(), allowed.end(), v) == allowed.end())
                return false;
    return true;
}

bool is_single_var(const MPoly& x, Var& v)
{
    if (x.terms().size() != 1)
        return false;
    const auto& [m, c] = *x.terms().begin();
    if (c != 1)
        return false;
    int count = 0;
    for (Var w = 0; w < m.size(); ++w) {
        if (m[w] == 1) {
            v = w;
            ++count;
        } else if (m[w] != 0) {
            return false;
        }
    }
    return count == 1;
}

// Scalars of a carrier: 0 = Z, a prime = Z_(p), -1 = Q.
long scalar_kind(const Carrier& c)
{
    switch (c.kind) {
    case CarrierKind::RationalField:
    case CarrierKind::PolyRingOverQ:
    case CarrierKind::Tensor:
        return -1;
    case CarrierKind::Integers:
        return 0;
    case CarrierKind::PLocalInts:
        return c.prime;
    case CarrierKind::Quotient:
    case CarrierKind::Localized:
        return scalar_kind(*c.base);
    }
    return -1;
}

bool coefficient_ok(long kind, const Rational& c)
{
    if (kind < 0)
        return true;
    if (kind == 0)
        return arith::is_integer(c);
    return arith::is_p_integral(c, kind);
}

bool is_element(const Carrier& c, const MPoly& x)
{
    if (!only_vars(x, carrier_vars(c)))
        return false;
    long kind = scalar_kind(c);
    for (const auto& [m, q] : x.terms())
        if (!coefficient_ok(kind, q))
            return false;
    return true;
}

// Embedding of a domain carrier in t into Q(t).
std::optional<RatFunc> embed(const Carrier& c, const MPoly& x)
{
    switch (c.kind) {
    case CarrierKind::RationalField:
    case CarrierKind::Integers:
    case CarrierKind::PLocalInts:
    case CarrierKind::PolyRingOverQ: {
        auto p = x.to_poly(var_t);
        if (!p)
            return std::nullopt;
        return RatFunc(*p);
    }
    case CarrierKind::Localized: {
        if (c.one_plus)
            return embed(*c.base, x);
        auto g = embed(*c.base, c.element);
        if (!g || g->is_zero())
            return std::nullopt;
        Var inv = c.inverse_var;
        auto parts = x.split_at(inv);
        RatFunc sum;
        for (const auto& [high, low] : parts) {
            for (Var k = 1; k < high.size(); ++k)
                if (high[k])
                    return std::nullopt;
            auto base_part = embed(*c.base, low);
            if (!base_part)
                return std::nullopt;
            unsigned e = high.empty() ? 0 : high[0];
            sum = sum + *base_part * g->inverse().pow(e);
        }
        return sum;
    }
    default:
        return std::nullopt;
    }
}

Integer integer_gcd(const std::vector<Rational>& xs)
{
    Integer g = 0;
    for (const auto& x : xs)
        g = gcd(g, Integer(x.get_num()));
    return g;
}

// Solves linear relations v = q (v not in q) one at a time, substituting the
// solution everywhere. Returns the remaining relations and the substitution.
struct Elimination {
    std::map<Var, MPoly> solved;
    std::vector<MPoly> rest;
};

Elimination eliminate(std::vector<MPoly> gens)
{
    Elimination e;
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < gens.size() && !progress; ++i) {
            const MPoly& g = gens[i];
            for (Var v = 0; !progress && v < g.num_vars(); ++v) {
                if (g.degree_in(v) != 1)
                    continue;
                auto parts = g.split_at(v);
                // Coefficient of v must be a nonzero constant and v occurs nowhere else.
                Rational coeff = 0;
                MPoly rest;
                bool ok = true;
                for (const auto& [high, low] : parts) {
                    bool has_v = !high.empty() && high[0] == 1;
                    if (has_v) {
                        if (high.size() != 1 || !low.is_constant()) {
                            ok = false;
                            break;
                        }
                        coeff = low.constant_term();
                    } else if (high.empty()) {
                        rest += low;
                    } else {
                        // Terms with higher variables but without v.
                        Monomial m(v, 0);
                        m.insert(m.end(), high.begin(), high.end());
                        rest += low * MPoly::monomial(1, m);
                    }
                }
                if (!ok || coeff == 0)
                    continue;
                MPoly value = rest * (-1 / coeff);
                auto sub = [&](Var w) { return w == v ? value : MPoly::var(w); };
                for (auto& [w, q] : e.solved)
                    q = q.substitute(sub);
                e.solved[v] = value;
                gens.erase(gens.begin() + static_cast<long>(i));
                for (auto& h : gens)
                    h = h.substitute(sub);
                progress = true;
            }
        }
    }
    for (auto& g : gens)
        if (!g.is_zero())
            e.rest.push_back(g);
    return e;
}

Decidable<bool> ideal_contains(const Carrier& base, const std::vector<MPoly>& ideal, const MPoly& d);

} // namespace

CarrierPtr Carrier::rationals()
{
    return make(Carrier{});
}

CarrierPtr Carrier::integers()
{
    Carrier c;
    c.kind = CarrierKind::Integers;
    return make(std::move(c));
}

CarrierPtr Carrier::p_local(long p)
{
    arith::require_prime(p);
    Carrier c;
    c.kind = CarrierKind::PLocalInts;
    c.prime = p;
    return make(std::move(c));
}

CarrierPtr Carrier::polynomials(std::vector<Var> vars)
{
    Carrier c;
    c.kind = CarrierKind::PolyRingOverQ;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    c.vars = std::move(vars);
    return make(std::move(c));
}

CarrierPtr Carrier::quotient(CarrierPtr base, std::vector<MPoly> ideal)
{
    for (const auto& g : ideal)
        if (!is_element(*base, g))
            throw InvalidInput("ideal generator " + g.to_string() + " is not an element of the base ring");
    Carrier c;
    c.kind = CarrierKind::Quotient;
    c.base = std::move(base);
    c.ideal = std::move(ideal);
    return make(std::move(c));
}

CarrierPtr Carrier::localized_powers(CarrierPtr base, MPoly element, Var inverse_var)
{
    auto vars = carrier_vars(*base);
    if (std::find(vars.begin(), vars.end(), inverse_var) != vars.end())
        throw InvalidInput("variable " + arith::var_name(inverse_var) + " is already in use");
    if (!is_element(*base, element))
        throw InvalidInput("inverted element " + element.to_string() + " is not in the base ring");
    if (element.is_zero())
        throw InvalidInput("cannot invert zero");
    Carrier c;
    c.kind = CarrierKind::Localized;
    c.base = std::move(base);
    c.element = std::move(element);
    c.inverse_var = inverse_var;
    return make(std::move(c));
}

CarrierPtr Carrier::localized_one_plus(CarrierPtr base, std::vector<MPoly> p_gens)
{
    for (const auto& g : p_gens)
        if (!is_element(*base, g))
            throw InvalidInput("generator " + g.to_string() + " of P is not in the base ring");
    Carrier c;
    c.kind = CarrierKind::Localized;
    c.one_plus = true;
    c.base = std::move(base);
    c.ideal = std::move(p_gens);
    return make(std::move(c));
}

bool same_carrier(const CarrierPtr& a, const CarrierPtr& b)
{
    if (!a || !b)
        return !a && !b;
    return *a == *b;
}

bool operator==(const Carrier& a, const Carrier& b)
{
    return a.kind == b.kind && a.prime == b.prime && a.vars == b.vars && same_carrier(a.base, b.base) &&
           a.ideal == b.ideal && a.one_plus == b.one_plus && a.element == b.element &&
           a.inverse_var == b.inverse_var && same_carrier(a.right, b.right) && same_carrier(a.over, b.over) &&
           a.left_map == b.left_map && a.right_map == b.right_map;
}

std::vector<Var> carrier_vars(const Carrier& c)
{
    switch (c.kind) {
    case CarrierKind::RationalField:
    case CarrierKind::Integers:
    case CarrierKind::PLocalInts:
        return {};
    case CarrierKind::PolyRingOverQ:
    case CarrierKind::Tensor:
        return c.vars;
    case CarrierKind::Quotient:
        return carrier_vars(*c.base);
    case CarrierKind::Localized: {
        auto v = carrier_vars(*c.base);
        if (!c.one_plus) {
            v.push_back(c.inverse_var);
            std::sort(v.begin(), v.end());
        }
        return v;
    }
    }
    return {};
}

bool contains_rationals(const Carrier& c)
{
    return scalar_kind(c) < 0;
}

namespace {

Decidable<bool> ideal_contains(const Carrier& base, const std::vector<MPoly>& ideal, const MPoly& d)
{
    std::vector<MPoly> gens;
    for (const auto& g : ideal)
        if (!g.is_zero())
            gens.push_back(g);
    if (gens.empty())
        return carrier_equal(base, d, MPoly());
    switch (base.kind) {
    case CarrierKind::Integers: {
        std::vector<Rational> cs;
        for (const auto& g : gens)
            cs.push_back(g.constant_term());
        Integer n = integer_gcd(cs);
        if (!d.is_constant())
            return Undecidable{"element is not an integer"};
        return d.is_zero() || Integer(d.constant_term().get_num()) % n == 0;
    }
    case CarrierKind::PLocalInts: {
        long e = -1;
        for (const auto& g : gens) {
            long v = arith::padic_val(g.constant_term(), base.prime).exponent();
            e = e < 0 ? v : std::min(e, v);
        }
        return d.is_zero() || arith::padic_val(d.constant_term(), base.prime).exponent() >= e;
    }
    case CarrierKind::RationalField:
        return true;
    case CarrierKind::PolyRingOverQ: {
        Elimination el = eliminate(gens);
        auto sub = [&](Var w) {
            auto it = el.solved.find(w);
            return it == el.solved.end() ? MPoly::var(w) : it->second;
        };
        MPoly rd = d.substitute(sub);
        if (el.rest.empty())
            return rd.is_zero();
        // Remaining relations in a single variable: principal ideal.
        Var v = 0;
        bool found = false;
        for (const auto& g : el.rest) {
            for (Var w = 0; w < g.num_vars(); ++w) {
                if (!g.uses(w))
                    continue;
                if (found && w != v)
                    return Undecidable{"quotient by a non-principal multivariate ideal"};
                v = w;
                found = true;
            }
        }
        if (!found)
            return true; // a nonzero constant relation: the unit ideal
        Poly gen;
        for (const auto& g : el.rest)
            gen = gen.is_zero() ? g.to_poly(v)->monic() : arith::poly_gcd(gen, *g.to_poly(v));
        // rd may involve other variables; compare coefficientwise.
        std::map<Monomial, MPoly> by_others;
        for (const auto& [m, c] : rd.terms()) {
            Monomial rest = m;
            unsigned e = v < rest.size() ? rest[v] : 0;
            if (v < rest.size())
                rest[v] = 0;
            while (!rest.empty() && rest.back() == 0)
                rest.pop_back();
            by_others[rest] += MPoly::monomial(c, {}) * MPoly::var(v).pow(e);
        }
        for (const auto& [rest, coeff] : by_others)
            if (!arith::divides(gen, *coeff.to_poly(v)))
                return false;
        return true;
    }
    case CarrierKind::Localized: {
        if (base.one_plus)
            return Undecidable{"quotient of a localization at 1 + P"};
        auto num = embed(base, d);
        if (!num)
            return Undecidable{"localization outside the catalogued families"};
        auto f = embed(*base.base, base.element);
        Poly g;
        for (const auto& x : gens) {
            auto e = embed(base, x);
            if (!e)
                return Undecidable{"localization outside the catalogued families"};
            g = g.is_zero() ? e->num().monic() : arith::poly_gcd(g, e->num());
        }
        // Strip factors of the inverted element; they are units.
        for (;;) {
            Poly h = arith::poly_gcd(g, f->num());
            if (h.degree() <= 0)
                break;
            g = arith::exact_div(g, h);
        }
        return arith::divides(g, num->num());
    }
    case CarrierKind::Quotient: {
        std::vector<MPoly> all = base.ideal;
        all.insert(all.end(), gens.begin(), gens.end());
        return ideal_contains(*base.base, all, d);
    }
    case CarrierKind::Tensor:
        return Undecidable{"quotient of a tensor product"};
    }
    return Undecidable{"unknown carrier"};
}

} // namespace

Decidable<bool> carrier_equal(const Carrier& c, const MPoly& a, const MPoly& b)
{
    MPoly d = a - b;
    switch (c.kind) {
    case CarrierKind::RationalField:
    case CarrierKind::Integers:
    case CarrierKind::PLocalInts:
    case CarrierKind::PolyRingOverQ:
        return d.is_zero();
    case CarrierKind::Tensor: {
        auto z = is_zero_ring(c);
        if (z.decided() && z.value())
            return true;
        return d.is_zero();
    }
    case CarrierKind::Localized: {
        if (d.is_zero())
            return true;
        auto e = embed(c, d);
        if (!e)
            return Undecidable{"localization outside the catalogued families"};
        return e->is_zero();
    }
    case CarrierKind::Quotient:
        return ideal_contains(*c.base, c.ideal, d);
    }
    return Undecidable{"unknown carrier"};
}

Decidable<bool> is_zero_ring(const Carrier& c)
{
    switch (c.kind) {
    case CarrierKind::Quotient:
        return carrier_equal(c, MPoly(1), MPoly());
    case CarrierKind::Tensor: {
        auto l = is_zero_ring(*c.base);
        auto r = is_zero_ring(*c.right);
        if ((l.decided() && l.value()) || (r.decided() && r.value()))
            return true;
        if (!l.decided() || !r.decided())
            return Undecidable{"factor of unknown nullity"};
        return false;
    }
    case CarrierKind::Localized: {
        if (c.one_plus)
            return Undecidable{"nullity of a localization at 1 + P is decided by the Zariskisation routines"};
        auto base_zero = is_zero_ring(*c.base);
        if (!base_zero.decided() || base_zero.value())
            return base_zero;
        auto z = carrier_equal(*c.base, c.element, MPoly());
        if (!z.decided())
            return Undecidable{"cannot decide whether the inverted element vanishes"};
        if (z.value())
            return true;
        if (c.base->kind == CarrierKind::Quotient)
            return Undecidable{"localization of a quotient"};
        return false;
    }
    default:
        return false;
    }
}

bool operator==(const RingPresentation& a, const RingPresentation& b)
{
    return same_carrier(a.carrier, b.carrier) && a.ring_of_def == b.ring_of_def &&
           a.ideal_of_def == b.ideal_of_def && a.prime == b.prime;
}

// ---------------------------------------------------------------------------
// Catalogued domains

bool in_scalars(const AdicDomain& d, const Rational& c)
{
    if (d.base == BaseKind::Integers || !d.p)
        return arith::is_integer(c);
    return arith::is_p_integral(c, *d.p);
}

bool in_scalar_ideal(const AdicDomain& d, const Rational& c)
{
    if (c == 0)
        return true;
    if (!d.p)
        return false;
    return in_scalars(d, c) && arith::padic_val(c, *d.p).exponent() >= 1;
}

namespace {

bool poly_in_scalars(const AdicDomain& d, const Poly& f)
{
    if (d.constants_only() && f.degree() > 0)
        return false;
    for (const auto& c : f.coeffs())
        if (!in_scalars(d, c))
            return false;
    return true;
}

// Certificate for the topology criterion on 1/f: a Bezout identity for
// (r_i, f) over the base ring. Constants need f to be invertible after
// adjoining ratios; over Z an identity with integer coefficients suffices.
bool ratio_generators_cover(const AdicDomain& d)
{
    if (d.inverted == Poly(1))
        return true;
    std::vector<Poly> gens = d.ratio_nums;
    gens.push_back(d.inverted);
    if (d.base == BaseKind::PolyQ) {
        try {
            arith::bezout(gens);
            return true;
        } catch (const NoBezout&) {
            return false;
        }
    }
    std::vector<Rational> cs;
    for (const auto& g : gens)
        cs.push_back(g.constant_term());
    if (d.base == BaseKind::Rationals)
        return std::any_of(cs.begin(), cs.end(), [](const Rational& c) { return c != 0; });
    if (d.base == BaseKind::PLocal) {
        // Z_(p) is local: some generator must be a p-unit... or the ideal is (p^e).
        return std::any_of(cs.begin(), cs.end(), [](const Rational& c) { return c != 0; });
    }
    return integer_gcd(cs) == 1;
}

} // namespace

void validate(const AdicDomain& d)
{
    if (d.p)
        arith::require_prime(*d.p);
    if (d.base == BaseKind::PLocal && !d.p)
        throw InvalidInput("Z_(p) needs its prime");
    if (d.inverted.is_zero())
        throw InvalidInput("cannot invert zero");
    if (!poly_in_scalars(d, d.inverted))
        throw InvalidInput("inverted element " + d.inverted.to_string() + " is not in the ring of definition");
    for (const auto& r : d.ratio_nums)
        if (!poly_in_scalars(d, r))
            throw InvalidInput("ratio numerator " + r.to_string() + " is not in the ring of definition");
    if (d.inverted == Poly(1) && !d.ratio_nums.empty())
        throw InvalidInput("ratio generators without an inverted element");
    if (!ratio_generators_cover(d))
        throw InvalidInput("the ratio numerators and the inverted element do not generate the unit ideal; "
                           "A0[r/f] is not a ring of definition of A[1/f]");
    if (d.zariskised && !d.p)
        throw InvalidInput("Zariskisation of a discrete ring is the ring itself; drop the flag");
}

RingPresentation to_presentation(const AdicDomain& d)
{
    validate(d);
    CarrierPtr c;
    std::vector<MPoly> ring_of_def;
    switch (d.base) {
    case BaseKind::Integers:
        c = Carrier::integers();
        break;
    case BaseKind::PLocal:
        c = Carrier::p_local(*d.p);
        break;
    case BaseKind::Rationals:
        c = Carrier::rationals();
        break;
    case BaseKind::PolyQ:
        c = Carrier::polynomials();
        ring_of_def.push_back(MPoly::var(var_t));
        break;
    }
    if (!(d.inverted == Poly(1))) {
        Var u = arith::var_u0;
        c = Carrier::localized_powers(c, MPoly::from_poly(d.inverted), u);
        for (const auto& r : d.ratio_nums)
            ring_of_def.push_back(MPoly::from_poly(r) * MPoly::var(u));
    }
    std::vector<MPoly> ideal;
    if (d.p)
        ideal.push_back(MPoly(Rational(*d.p)));
    if (d.zariskised)
        c = Carrier::localized_one_plus(c, ideal);
    RingPresentation out;
    out.carrier = c;
    out.ring_of_def = std::move(ring_of_def);
    out.ideal_of_def = std::move(ideal);
    out.prime = d.p;
    return out;
}

Decidable<AdicDomain> classify(const RingPresentation& a)
{
    AdicDomain d;
    const Carrier* c = a.carrier.get();
    if (c->kind == CarrierKind::Localized && c->one_plus) {
        d.zariskised = true;
        if (c->ideal != a.ideal_of_def || c->ideal.empty())
            return Undecidable{"localization at 1 + P with P different from the ideal of definition"};
        c = c->base.get();
    }
    std::optional<Var> inv;
    MPoly inverted(1);
    if (c->kind == CarrierKind::Localized && !c->one_plus) {
        inv = c->inverse_var;
        inverted = c->element;
        c = c->base.get();
    }
    switch (c->kind) {
    case CarrierKind::Integers:
        d.base = BaseKind::Integers;
        break;
    case CarrierKind::PLocalInts:
        d.base = BaseKind::PLocal;
        if (a.prime && *a.prime != c->prime)
            return Undecidable{"Z_(p) with a different prime"};
        break;
    case CarrierKind::RationalField:
        d.base = BaseKind::Rationals;
        break;
    case CarrierKind::PolyRingOverQ:
        if (c->vars != std::vector<Var>{var_t})
            return Undecidable{"polynomial rings other than Q[t] are outside the catalogue"};
        d.base = BaseKind::PolyQ;
        break;
    default:
        return Undecidable{"carrier outside the catalogued domains"};
    }
    d.p = a.prime;
    if (d.base == BaseKind::PLocal && !d.p)
        d.p = c->prime;
    if (a.ideal_of_def.empty()) {
        d.p.reset();
        if (d.base == BaseKind::PLocal)
            return Undecidable{"Z_(p) with the discrete topology is outside the catalogue"};
    } else if (a.ideal_of_def.size() != 1 || !d.p || !a.ideal_of_def[0].is_constant() ||
               a.ideal_of_def[0].constant_term() != *d.p) {
        return Undecidable{"ideal of definition other than (p)"};
    }
    if (d.zariskised && !d.p)
        return Undecidable{"Zariskisation without a prime"};

    std::vector<MPoly> gens = a.ring_of_def;
    if (d.base == BaseKind::PolyQ) {
        auto it = std::find(gens.begin(), gens.end(), MPoly::var(var_t));
        if (it == gens.end())
            return Undecidable{"ring of definition of Q[t] must contain t"};
        gens.erase(it);
    }
    if (inv) {
        auto f = inverted.to_poly(var_t);
        if (!f)
            return Undecidable{"inverted element is not a polynomial in t"};
        d.inverted = *f;
        for (const auto& g : gens) {
            MPoly r;
            for (const auto& [m, coeff] : g.terms()) {
                if (m.size() <= *inv || m[*inv] != 1)
                    return Undecidable{"ring of definition generator " + g.to_string() + " is not of the form r*u"};
                Monomial low = m;
                low[*inv] = 0;
                r += MPoly::monomial(coeff, low);
            }
            auto rp = r.to_poly(var_t);
            if (!rp)
                return Undecidable{"ratio numerator outside Q[t]"};
            d.ratio_nums.push_back(*rp);
        }
    } else if (!gens.empty()) {
        return Undecidable{"extra ring of definition generators"};
    }
    try {
        validate(d);
    } catch (const InvalidInput& e) {
        return Undecidable{e.what()};
    }
    return d;
}

// ---------------------------------------------------------------------------
// Presentations

namespace {

bool poly_shaped(const Carrier& c)
{
    switch (c.kind) {
    case CarrierKind::RationalField:
    case CarrierKind::Integers:
    case CarrierKind::PLocalInts:
    case CarrierKind::PolyRingOverQ:
    case CarrierKind::Tensor:
        return true;
    default:
        return false;
    }
}

std::vector<Var> ring_of_def_vars(const RingPresentation& a, bool& all_vars)
{
    std::vector<Var> vs;
    all_vars = true;
    for (const auto& g : a.ring_of_def) {
        Var v;
        if (is_single_var(g, v))
            vs.push_back(v);
        else
            all_vars = false;
    }
    return vs;
}

// Lambda-membership of x in Lambda[vars] and in p * Lambda[vars].
bool in_poly_ring_of_def(const RingPresentation& a, const std::vector<Var>& vars, const MPoly& x, bool in_ideal)
{
    if (!only_vars(x, vars))
        return false;
    long kind = scalar_kind(*a.carrier);
    for (const auto& [m, c] : x.terms()) {
        if (kind < 0) {
            if (a.prime ? !arith::is_p_integral(c, *a.prime) : !arith::is_integer(c))
                return false;
        } else if (!coefficient_ok(kind, c)) {
            return false;
        }
        if (in_ideal) {
            if (a.ideal_of_def.empty())
                return false;
            if (arith::padic_val(c, *a.prime).exponent() < 1)
                return false;
        }
    }
    return true;
}

void check_topology(const RingPresentation& a)
{
    const Carrier& c = *a.carrier;
    if (c.kind == CarrierKind::Quotient) {
        RingPresentation base{c.base, a.ring_of_def, a.ideal_of_def, a.prime};
        check_topology(base);
        return;
    }
    if (classify(a).decided())
        return;
    if (!poly_shaped(c))
        throw InvalidInput("cannot check the topology criterion for this carrier");
    bool all_vars;
    auto vars = ring_of_def_vars(a, all_vars);
    if (!all_vars)
        throw InvalidInput("ring of definition generators must be variables for polynomial carriers");
    for (Var v : carrier_vars(c))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw InvalidInput("x * I^m A0 is never inside A0 for x = " + arith::var_name(v) +
                               "; the ring of definition must contain it");
    if (!a.ideal_of_def.empty()) {
        if (!a.prime)
            throw InvalidInput("a nonzero ideal of definition needs a prime");
        for (const auto& g : a.ideal_of_def)
            if (!in_poly_ring_of_def(a, vars, g, true))
                throw InvalidInput("ideal generator " + g.to_string() + " is not in p*A0");
        bool has_p = std::any_of(a.ideal_of_def.begin(), a.ideal_of_def.end(),
                                 [&](const MPoly& g) { return g.is_constant() && g.constant_term() == *a.prime; });
        if (!has_p && contains_rationals(c))
            throw InvalidInput("1/p * I^m A0 is never inside A0 unless p lies in the ideal of definition");
    }
}

} // namespace

RingPresentation make_presentation(CarrierPtr carrier, std::vector<MPoly> ring_of_def,
                                   std::vector<MPoly> ideal_of_def, std::optional<long> prime)
{
    if (!carrier)
        throw InvalidInput("missing carrier");
    if (prime)
        arith::require_prime(*prime);
    for (const auto& g : ring_of_def)
        if (!is_element(*carrier, g))
            throw InvalidInput("ring of definition generator " + g.to_string() + " is not in the carrier");
    for (const auto& g : ideal_of_def)
        if (!is_element(*carrier, g))
            throw InvalidInput("ideal generator " + g.to_string() + " is not in the carrier");
    RingPresentation a{std::move(carrier), std::move(ring_of_def), std::move(ideal_of_def), prime};
    check_topology(a);
    return a;
}

AffinoidPresentation make_affinoid(RingPresentation ring, std::vector<MPoly> plus_ring)
{
    for (const auto& g : plus_ring)
        if (!is_element(*ring.carrier, g))
            throw InvalidInput("plus ring generator " + g.to_string() + " is not in the carrier");
    auto d = classify(ring);
    if (d.decided()) {
        const AdicDomain& dom = d.value();
        // A+ must be open: it has to contain the generators of A0. It must
        // also consist of power-bounded elements.
        bool has_t = false;
        std::vector<Poly> plus_ratios;
        for (const auto& g : plus_ring) {
            Var v;
            if (is_single_var(g, v) && v == var_t)
                has_t = true;
        }
        if (dom.base == BaseKind::PolyQ && !has_t)
            throw InvalidInput("A+ does not contain t, so it is not open in A");
        for (const auto& g : ring.ring_of_def) {
            if (std::find(plus_ring.begin(), plus_ring.end(), g) == plus_ring.end())
                throw InvalidInput("A+ must contain the ring of definition generator " + g.to_string());
        }
        for (const auto& g : plus_ring) {
            if (std::find(ring.ring_of_def.begin(), ring.ring_of_def.end(), g) != ring.ring_of_def.end())
                continue;
            auto p = g.to_poly(var_t);
            if (!p || (dom.p && !arith::is_p_integral(*p, *dom.p)))
                throw InvalidInput("plus ring generator " + g.to_string() + " is not power-bounded");
        }
    }
    return {std::move(ring), std::move(plus_ring)};
}

MPoly RingMap::apply(const MPoly& x) const
{
    return x.substitute([&](Var v) {
        auto it = images.find(v);
        if (it == images.end())
            throw InvalidInput("no image for variable " + arith::var_name(v));
        return it->second;
    });
}

RingMap make_ring_map(RingPresentation source, RingPresentation target, std::map<Var, MPoly> images)
{
    for (Var v : carrier_vars(*source.carrier))
        if (!images.count(v))
            throw InvalidInput("no image given for " + arith::var_name(v));
    for (const auto& [v, img] : images)
        if (!is_element(*target.carrier, img))
            throw InvalidInput("image " + img.to_string() + " is not in the target carrier");
    RingMap m{std::move(source), std::move(target), std::move(images), std::nullopt};
    // Relations of the source must map to zero.
    const Carrier* c = m.source.carrier.get();
    while (c) {
        if (c->kind == CarrierKind::Quotient) {
            for (const auto& g : c->ideal) {
                auto z = carrier_equal(*m.target.carrier, m.apply(g), MPoly());
                if (!z.decided())
                    throw InvalidInput("cannot verify that " + g.to_string() + " maps to zero: " + z.reason());
                if (!z.value())
                    throw InvalidInput("relation " + g.to_string() + " does not map to zero");
            }
        } else if (c->kind == CarrierKind::Localized && !c->one_plus) {
            MPoly prod = m.apply(c->element) * m.apply(MPoly::var(c->inverse_var));
            auto one = carrier_equal(*m.target.carrier, prod, MPoly(1));
            if (!one.decided() || !one.value())
                throw InvalidInput("image of the inverted element is not inverted by the image of " +
                                   arith::var_name(c->inverse_var));
        }
        c = (c->kind == CarrierKind::Quotient || c->kind == CarrierKind::Localized) ? c->base.get() : nullptr;
    }
    return m;
}

RingMap identity_map(const RingPresentation& a)
{
    std::map<Var, MPoly> images;
    for (Var v : carrier_vars(*a.carrier))
        images[v] = MPoly::var(v);
    RingMap m{a, a, std::move(images), std::nullopt};
    ContinuityCertificate cert;
    for (int n = 1; n <= 8; ++n)
        cert.levels.emplace_back(n, n);
    m.continuity = cert;
    return m;
}

RingMap compose(const RingMap& second, const RingMap& first)
{
    std::map<Var, MPoly> images;
    for (const auto& [v, img] : first.images)
        images[v] = second.apply(img);
    RingMap m{first.source, second.target, std::move(images), std::nullopt};
    if (first.continuity && second.continuity) {
        ContinuityCertificate cert;
        for (const auto& [n, m2] : second.continuity->levels) {
            int need = m2;
            for (const auto& [n1, m1] : first.continuity->levels)
                if (n1 == need)
                    cert.levels.emplace_back(n, m1);
        }
        m.continuity = cert;
    }
    return m;
}

Decidable<ContinuityCertificate> certify_continuity(const RingMap& map, int levels)
{
    if (!poly_shaped(*map.target.carrier))
        return Undecidable{"continuity is certified only for polynomial targets"};
    bool all_vars;
    auto vars = ring_of_def_vars(map.target, all_vars);
    if (!all_vars)
        return Undecidable{"target ring of definition is not generated by variables"};
    for (const auto& g : map.source.ring_of_def)
        if (!in_poly_ring_of_def(map.target, vars, map.apply(g), false))
            return Undecidable{"image of " + g.to_string() + " is not visibly in the target ring of definition"};
    for (const auto& g : map.source.ideal_of_def)
        if (!in_poly_ring_of_def(map.target, vars, map.apply(g), true))
            return Undecidable{"image of " + g.to_string() + " is not visibly in the target ideal"};
    ContinuityCertificate cert;
    for (int n = 1; n <= levels; ++n)
        cert.levels.emplace_back(n, n);
    return cert;
}

// ---------------------------------------------------------------------------
// Quotients and tensor products

FadicQuotient quotient_fadic(const RingPresentation& a, const std::vector<MPoly>& ideal)
{
    std::vector<MPoly> gens;
    for (const auto& g : ideal)
        if (!g.is_zero())
            gens.push_back(g);
    if (gens.empty())
        return {a, identity_map(a), std::nullopt};
    RingPresentation q{Carrier::quotient(a.carrier, gens), a.ring_of_def, a.ideal_of_def, a.prime};
    std::map<Var, MPoly> images;
    for (Var v : carrier_vars(*a.carrier))
        images[v] = MPoly::var(v);
    RingMap pi{a, q, std::move(images), std::nullopt};
    ContinuityCertificate cert;
    for (int n = 1; n <= 8; ++n)
        cert.levels.emplace_back(n, n);
    pi.continuity = cert;
    for (const auto& g : gens) {
        auto z = carrier_equal(*q.carrier, pi.apply(g), MPoly());
        require_certificate(!z.decided() || z.value(), "generator of J maps to zero in A/J");
    }
    FadicQuotient out{std::move(q), std::move(pi), std::nullopt};
    auto cls = classify(a);
    if (cls.decided() && cls.value().base == BaseKind::PolyQ && cls.value().inverted == Poly(1) &&
        !cls.value().zariskised) {
        Poly g;
        for (const auto& x : gens)
            g = g.is_zero() ? x.to_poly(var_t)->monic() : arith::poly_gcd(g, *x.to_poly(var_t));
        Rational c = g.degree() == 1 ? -g.constant_term() : Rational(0);
        if (g.degree() == 1 && (!a.prime || arith::is_p_integral(c, *a.prime))) {
            AdicDomain field;
            field.base = BaseKind::Rationals;
            field.p = cls.value().p;
            RingMap iso{out.ring, to_presentation(field), {{var_t, MPoly(c)}}, std::nullopt};
            ContinuityCertificate cert;
            for (int n = 1; n <= 8; ++n)
                cert.levels.emplace_back(n, n);
            iso.continuity = cert;
            out.simplified = iso;
        }
    }
    return out;
}

RingMap factor_through_quotient(const FadicQuotient& q, const RingMap& g)
{
    if (!(g.source == q.projection.source))
        throw InvalidInput("map does not start at the ring being divided");
    for (const auto& j : q.ring.carrier->ideal) {
        auto z = carrier_equal(*g.target.carrier, g.apply(j), MPoly());
        if (!z.decided())
            throw InvalidInput("cannot decide whether " + j.to_string() + " maps to zero: " + z.reason());
        if (!z.value())
            throw InvalidInput("the map does not kill " + j.to_string());
    }
    RingMap out{q.ring, g.target, g.images, g.continuity};
    return out;
}

namespace {

bool plain_poly(const Carrier& c)
{
    return c.kind == CarrierKind::PolyRingOverQ || c.kind == CarrierKind::RationalField ||
           (c.kind == CarrierKind::Tensor);
}

void add_unique(std::vector<MPoly>& v, const MPoly& x)
{
    if (x.is_zero() || std::find(v.begin(), v.end(), x) != v.end())
        return;
    v.push_back(x);
}

} // namespace

Decidable<FadicTensor> tensor_fadic(const RingMap& phi, const RingMap& psi)
{
    if (!(phi.source == psi.source))
        throw InvalidInput("the two maps start at different rings");
    if (!phi.continuity || !psi.continuity)
        throw InvalidInput("missing continuity certificate");
    const RingPresentation& r = phi.source;
    const RingPresentation& a = phi.target;
    const RingPresentation& b = psi.target;
    std::optional<long> prime = r.prime ? r.prime : (a.prime ? a.prime : b.prime);
    for (const auto* x : {&r, &a, &b})
        if (x->prime && prime && *x->prime != *prime)
            throw InvalidInput("rings with different primes");

    Carrier t;
    t.kind = CarrierKind::Tensor;
    t.base = a.carrier;
    t.right = b.carrier;
    t.over = r.carrier;
    t.left_map = phi.images;
    t.right_map = psi.images;

    auto za = is_zero_ring(*a.carrier);
    auto zb = is_zero_ring(*b.carrier);
    if ((za.decided() && za.value()) || (zb.decided() && zb.value())) {
        RingPresentation zero{std::make_shared<const Carrier>(t), {}, {}, prime};
        FadicTensor out{zero, RingMap{a, zero, {}, ContinuityCertificate{}},
                        RingMap{b, zero, {}, ContinuityCertificate{}}, true};
        for (Var v : carrier_vars(*a.carrier))
            out.from_left.images[v] = MPoly();
        for (Var v : carrier_vars(*b.carrier))
            out.from_right.images[v] = MPoly();
        return out;
    }
    if (!plain_poly(*a.carrier) || !plain_poly(*b.carrier) || !plain_poly(*r.carrier))
        return Undecidable{"tensor products are computed for polynomial carriers over Q only"};

    // Each variable of R must go to a distinct variable of B; B is then
    // free over R on its remaining variables.
    std::map<Var, Var> b_from_r;
    for (Var v : carrier_vars(*r.carrier)) {
        Var w;
        if (!is_single_var(psi.images.at(v), w))
            return Undecidable{"psi does not send " + arith::var_name(v) + " to a variable"};
        for (const auto& [bw, rv] : b_from_r)
            if (bw == w)
                return Undecidable{"psi identifies two variables"};
        b_from_r[w] = v;
    }
    std::vector<Var> vars = carrier_vars(*a.carrier);
    std::set<Var> used(vars.begin(), vars.end());
    std::map<Var, MPoly> g_images;
    Var next = 0;
    for (Var w : carrier_vars(*b.carrier)) {
        auto it = b_from_r.find(w);
        if (it != b_from_r.end()) {
            g_images[w] = phi.images.at(it->second);
            continue;
        }
        Var fresh = w;
        if (used.count(fresh)) {
            while (used.count(next))
                ++next;
            fresh = next;
        }
        used.insert(fresh);
        vars.push_back(fresh);
        g_images[w] = MPoly::var(fresh);
    }
    std::sort(vars.begin(), vars.end());
    t.vars = vars;

    std::map<Var, MPoly> f_images;
    for (Var v : carrier_vars(*a.carrier))
        f_images[v] = MPoly::var(v);

    RingPresentation tp;
    tp.carrier = std::make_shared<const Carrier>(t);
    tp.prime = prime;
    RingMap f{a, tp, f_images, std::nullopt};
    RingMap g{b, tp, g_images, std::nullopt};
    for (const auto& x : a.ring_of_def)
        add_unique(tp.ring_of_def, f.apply(x));
    for (const auto& x : b.ring_of_def)
        add_unique(tp.ring_of_def, g.apply(x));
    if (!r.ideal_of_def.empty()) {
        for (const auto& x : r.ideal_of_def)
            add_unique(tp.ideal_of_def, f.apply(phi.apply(x)));
    } else {
        for (const auto& x : a.ideal_of_def)
            add_unique(tp.ideal_of_def, f.apply(x));
        for (const auto& x : b.ideal_of_def)
            add_unique(tp.ideal_of_def, g.apply(x));
    }
    f.target = tp;
    g.target = tp;
    for (Var v : carrier_vars(*r.carrier))
        require_certificate(f.apply(phi.apply(MPoly::var(v))) == g.apply(psi.apply(MPoly::var(v))),
                            "f o phi = g o psi on " + arith::var_name(v));
    auto cf = certify_continuity(f);
    auto cg = certify_continuity(g);
    if (!cf.decided() || !cg.decided())
        return Undecidable{"cannot certify continuity of the structure maps: " + cf.reason() + cg.reason()};
    f.continuity = cf.value();
    g.continuity = cg.value();
    return FadicTensor{tp, f, g, false};
}

RingMap tensor_factor(const FadicTensor& t, const RingMap& phi, const RingMap& psi, const RingMap& left,
                      const RingMap& right)
{
    const Carrier& c = *left.target.carrier;
    for (Var v : carrier_vars(*phi.source.carrier)) {
        MPoly x = MPoly::var(v);
        auto eq = carrier_equal(c, left.apply(phi.apply(x)), right.apply(psi.apply(x)));
        if (!eq.decided() || !eq.value())
            throw InvalidInput("the two maps disagree on " + arith::var_name(v) + " after composing with R");
    }
    std::map<Var, MPoly> images;
    if (!t.zero) {
        for (const auto& [v, img] : t.from_left.images) {
            Var w;
            if (is_single_var(img, w))
                images[w] = left.images.at(v);
        }
        for (const auto& [v, img] : t.from_right.images) {
            Var w;
            if (is_single_var(img, w) && !images.count(w))
                images[w] = right.images.at(v);
        }
    }
    RingMap theta{t.ring, left.target, std::move(images), std::nullopt};
    for (const auto& [v, img] : t.from_left.images) {
        auto eq = carrier_equal(c, theta.apply(img), left.images.at(v));
        require_certificate(eq.decided() && eq.value(), "theta o f = f' on " + arith::var_name(v));
    }
    for (const auto& [v, img] : t.from_right.images) {
        auto eq = carrier_equal(c, theta.apply(img), right.images.at(v));
        require_certificate(eq.decided() && eq.value(), "theta o g = g' on " + arith::var_name(v));
    }
    auto cert = certify_continuity(theta);
    if (cert.decided())
        theta.continuity = cert.value();
    return theta;
}

Decidable<OpenIdealCertificate> is_open_ideal(const RingPresentation& a, const std::vector<MPoly>& gens)
{
    auto cls = classify(a);
    if (!cls.decided())
        return Undecidable{"outside the catalogued families: " + cls.reason()};
    const AdicDomain& d = cls.value();
    if (!(d.inverted == Poly(1)) || d.zariskised)
        return Undecidable{"openness is decided for Z, Z_(p), Q and Q[t] only"};
    OpenIdealCertificate out;
    if (!d.p) {
        out.open = true;
        out.exponent = 1;
        out.explanation = "the ideal of definition is zero, so every ideal is open";
        return out;
    }
    long p = *d.p;
    std::vector<Poly> fs;
    for (const auto& g : gens) {
        auto f = g.to_poly(var_t);
        if (!f || (d.constants_only() && f->degree() > 0))
            throw InvalidInput("generator " + g.to_string() + " is not an element of the ring");
        fs.push_back(*f);
    }
    switch (d.base) {
    case BaseKind::PolyQ: {
        try {
            auto cs = arith::bezout(fs);
            out.open = true;
            for (const auto& c : cs)
                out.coefficients.push_back(MPoly::from_poly(c));
            out.explanation = "the generators have a Bezout identity, so the ideal is the unit ideal";
        } catch (const NoBezout&) {
            Poly g;
            for (const auto& f : fs)
                if (!f.is_zero())
                    g = g.is_zero() ? f.monic() : arith::poly_gcd(g, f);
            out.open = false;
            out.explanation = "the ideal is (" + (g.is_zero() ? std::string("0") : g.to_string()) +
                              "), a proper ideal; an open ideal contains p^n, a unit of Q[t]";
        }
        return out;
    }
    case BaseKind::Integers: {
        Integer g = 0;
        std::vector<Integer> xs;
        for (const auto& f : fs) {
            xs.push_back(Integer(f.constant_term().get_num()));
            g = gcd(g, xs.back());
        }
        if (g == 0) {
            out.explanation = "the zero ideal is not open";
            return out;
        }
        Integer rest = g;
        long e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest != 1) {
            out.explanation = "the ideal is (" + g.get_str() + "), which contains no power of " + std::to_string(p);
            return out;
        }
        // Extended Euclid over the list.
        std::vector<Integer> coeffs(xs.size(), 0);
        Integer acc = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (acc == 0) {
                if (xs[i] != 0) {
                    acc = xs[i];
                    coeffs[i] = 1;
                }
                continue;
            }
            Integer gg, s, tt;
            mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), acc.get_mpz_t(), xs[i].get_mpz_t());
            for (size_t k = 0; k < i; ++k)
                coeffs[k] *= s;
            coeffs[i] = tt;
            acc = gg;
        }
        if (acc < 0) {
            for (auto& c : coeffs)
                c = -c;
        }
        out.open = true;
        out.exponent = e;
        for (const auto& c : coeffs)
            out.coefficients.push_back(MPoly(Rational(c)));
        out.explanation = "the ideal is (" + std::to_string(p) + "^" + std::to_string(e) + ")";
        break;
    }
    case BaseKind::PLocal:
    case BaseKind::Rationals: {
        long best = -1;
        size_t at = 0;
        for (size_t i = 0; i < fs.size(); ++i) {
            if (fs[i].is_zero())
                continue;
            long v = arith::padic_val(fs[i].constant_term(), p).exponent();
            if (best < 0 || v < best) {
                best = v;
                at = i;
            }
        }
        if (best < 0) {
            out.explanation = "the zero ideal is not open";
            return out;
        }
        long e = d.base == BaseKind::Rationals ? 0 : best;
        out.open = true;
        out.exponent = e;
        out.coefficients.assign(fs.size(), MPoly());
        out.coefficients[at] = MPoly(arith::pow(Rational(p), e) / fs[at].constant_term());
        out.explanation = d.base == BaseKind::Rationals ? "a nonzero element of a field generates the unit ideal"
                                                        : "the ideal is (p^" + std::to_string(e) + ")";
        break;
    }
    }
    // Check the certificate.
    MPoly sum;
    for (size_t i = 0; i < gens.size(); ++i)
        sum += out.coefficients[i] * gens[i];
    require_certificate(sum == MPoly(arith::pow(Rational(p), out.exponent)), "open ideal certificate");
    return out;
}

Decidable<KernelDescription> hausdorff_kernel_domain(const RingPresentation& a)
{
    auto cls = classify(a);
    if (cls.decided()) {
        const AdicDomain& d = cls.value();
        KernelDescription k;
        if (!d.p) {
            k.justification = "the ideal of definition is zero, so the topology is discrete";
            return k;
        }
        switch (d.base) {
        case BaseKind::Integers:
            k.justification = "Z is a noetherian domain and (p) is proper, so the powers of (p) meet in 0";
            break;
        case BaseKind::PLocal:
            k.justification = "a nonzero element of Z_(p) has finite p-adic valuation";
            break;
        case BaseKind::Rationals:
        case BaseKind::PolyQ:
            k.justification = "a nonzero element has finite Gauss valuation, so it leaves p^n A0 for large n";
            break;
        }
        if (d.zariskised)
            k.justification += "; the Zariskisation of a domain is a subring of its fraction field";
        return k;
    }
    const Carrier& c = *a.carrier;
    if (c.kind == CarrierKind::Quotient && c.base->kind == CarrierKind::PolyRingOverQ &&
        c.base->vars == std::vector<Var>{var_t}) {
        Poly g;
        for (const auto& x : c.ideal) {
            auto f = x.to_poly(var_t);
            if (f && !f->is_zero())
                g = g.is_zero() ? f->monic() : arith::poly_gcd(g, *f);
        }
        if (g.degree() == 1) {
            KernelDescription k;
            Rational c = -g.constant_term();
            if (a.prime && !a.ideal_of_def.empty() && !arith::is_p_integral(c, *a.prime)) {
                k.generators.push_back(MPoly(1));
                k.justification = "t maps to " + arith::to_string(c) +
                                  ", which is not p-integral, so the image of A0 is Q and I0 A0 is everything";
                return k;
            }
            k.justification = "Q[t]/(" + g.to_string() + ") is isomorphic to Q, a domain with finite valuations";
            return k;
        }
    }
    return Undecidable{"not a catalogued domain"};
}

} // namespace zadic::fadic
