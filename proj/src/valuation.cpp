#include "zadic/valuation.hpp"

#include <regex>

#include "zadic/errors.hpp"

namespace zadic::rational {

DiscreteValuation DiscreteValuation::eval_padic(long p, const Rational& c)
{
    arith::require_prime(p);
    if (!arith::is_p_integral(c, p))
        throw InvalidInput("evaluation point " + arith::to_string(c) + " is not p-integral");
    return {ValKind::EvalPAdic, p, c, 0};
}

DiscreteValuation DiscreteValuation::gauss(long p)
{
    arith::require_prime(p);
    return {ValKind::Gauss, p, 0, 0};
}

DiscreteValuation DiscreteValuation::disc(long p, const Rational& c, long k)
{
    arith::require_prime(p);
    if (!arith::is_p_integral(c, p) || k < 0)
        throw InvalidInput("disc centre must be p-integral and radius exponent nonnegative");
    return {ValKind::Disc, p, c, k};
}

DiscreteValuation DiscreteValuation::residue_trivial(long p)
{
    arith::require_prime(p);
    return {ValKind::ResidueTrivial, p, 0, 0};
}

DiscreteValuation DiscreteValuation::tadic_at(const Rational& a)
{
    return {ValKind::TAdicAt, 0, a, 0};
}

std::string DiscreteValuation::to_string() const
{
    switch (kind) {
    case ValKind::EvalPAdic:
        return "eval(" + arith::to_string(point) + ")";
    case ValKind::Gauss:
        return "gauss";
    case ValKind::Disc:
        return "disc(" + arith::to_string(point) + "," + std::to_string(radius) + ")";
    case ValKind::ResidueTrivial:
        return "residue";
    case ValKind::TAdicAt:
        return "tadic(" + arith::to_string(point) + ")";
    }
    return "";
}

namespace {

// min_i v_p(a_i) + k*i for f(c + p^k s) = sum a_i (s p^k)^i; ZERO for f = 0.
PValue disc_poly(const Poly& f, long p, const Rational& c, long k)
{
    if (f.is_zero())
        return PValue::zero();
    Poly g = f.shift(c);
    long best = 0;
    bool first = true;
    for (size_t i = 0; i < g.coeffs().size(); ++i) {
        if (g.coeffs()[i] == 0)
            continue;
        long e = arith::padic_val(g.coeffs()[i], p).exponent() + k * static_cast<long>(i);
        if (first || e < best)
            best = e;
        first = false;
    }
    return PValue::from_exponent(best);
}

PValue quotient(const PValue& num, const PValue& den)
{
    if (den.is_zero())
        throw InvalidInput("ZERO denominator: the valuation has a pole here");
    if (num.is_zero())
        return num;
    return PValue::from_exponent(num.exponent() - den.exponent());
}

PValue residue_poly(const Poly& f, long p)
{
    if (f.is_zero())
        return PValue::zero();
    if (!arith::is_p_integral(f, p))
        throw InvalidInput("ZERO denominator: " + f.to_string() + " is not p-integral");
    return arith::content_exp(f, p) >= 1 ? PValue::zero() : PValue::one();
}

} // namespace

PValue val_apply(const DiscreteValuation& v, const RatFunc& f)
{
    const long p = v.p;
    switch (v.kind) {
    case ValKind::EvalPAdic: {
        Rational d = f.den().eval(v.point);
        if (d == 0)
            throw InvalidInput("ZERO denominator: pole of " + f.to_string() + " at " + arith::to_string(v.point));
        return arith::padic_val(f.num().eval(v.point) / d, p);
    }
    case ValKind::Gauss:
        return quotient(arith::content_val(f.num(), p), arith::content_val(f.den(), p));
    case ValKind::Disc:
        return quotient(disc_poly(f.num(), p, v.point, v.radius), disc_poly(f.den(), p, v.point, v.radius));
    case ValKind::ResidueTrivial: {
        // Write f = p^e * (primitive numerator) / (primitive denominator).
        if (f.is_zero())
            return PValue::zero();
        auto n = arith::p_primitive(f.num(), p);
        auto d = arith::p_primitive(f.den(), p);
        long e = n.exponent - d.exponent;
        if (e < 0)
            throw InvalidInput("ZERO denominator: " + f.to_string() + " has p in its denominator");
        return e > 0 ? PValue::zero() : quotient(residue_poly(n.primitive, p), residue_poly(d.primitive, p));
    }
    case ValKind::TAdicAt:
        throw InvalidInput("the (t - a)-adic valuation is additive; use order_apply");
    }
    throw InvalidInput("unknown valuation kind");
}

Order order_apply(const DiscreteValuation& v, const RatFunc& f)
{
    if (v.kind != ValKind::TAdicAt)
        throw InvalidInput("order_apply needs a (t - a)-adic valuation");
    return f.order_at(v.point);
}

ValuationValue value_of(const DiscreteValuation& v, const RatFunc& f)
{
    if (v.kind == ValKind::TAdicAt)
        return order_apply(v, f);
    return val_apply(v, f);
}

DiscreteValuation parse_valuation(const std::string& text, long p)
{
    static const std::regex one(R"(^\s*(eval|tadic)\(\s*([-+0-9/]+)\s*\)\s*$)");
    static const std::regex two(R"(^\s*disc\(\s*([-+0-9/]+)\s*,\s*([0-9]+)\s*\)\s*$)");
    std::smatch m;
    if (text == "gauss")
        return DiscreteValuation::gauss(p);
    if (text == "residue")
        return DiscreteValuation::residue_trivial(p);
    if (std::regex_match(text, m, one)) {
        Rational c = arith::parse_rational(m[2].str());
        return m[1] == "eval" ? DiscreteValuation::eval_padic(p, c) : DiscreteValuation::tadic_at(c);
    }
    if (std::regex_match(text, m, two))
        return DiscreteValuation::disc(p, arith::parse_rational(m[1].str()), std::stol(m[2].str()));
    throw InvalidInput("unknown valuation \"" + text + "\"");
}

} // namespace zadic::rational
