#include "zadic/ratfunc.hpp"

#include "zadic/errors.hpp"

namespace zadic::arith {

RatFunc::RatFunc(const Poly& num, const Poly& den)
{
    if (den.is_zero())
        throw InvalidInput("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = poly_gcd(num, den);
    num_ = exact_div(num, g);
    den_ = exact_div(den, g);
    Rational l = den_.lead();
    num_ *= 1 / l;
    den_ *= 1 / l;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    if (a.den_ == b.den_)
        return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b)
{
    return a + (-b);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b)
{
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    return a * b.inverse();
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const
{
    if (is_zero())
        throw InvalidInput("inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

Rational RatFunc::eval(const Rational& x) const
{
    Rational d = den_.eval(x);
    if (d == 0)
        throw InvalidInput("pole of " + to_string() + " at t = " + x.get_str());
    return num_.eval(x) / d;
}

PValue RatFunc::gauss_val(long p) const
{
    if (is_zero())
        return PValue::zero();
    return PValue::from_exponent(content_exp(num_, p) - content_exp(den_, p));
}

Order order_at(const Poly& f, const Rational& a)
{
    if (f.is_zero())
        return Order{};
    long k = 0;
    Poly g = f;
    Poly lin = Poly::linear_root(a);
    for (;;) {
        auto [q, r] = divmod(g, lin);
        if (!r.is_zero())
            break;
        g = std::move(q);
        ++k;
    }
    return Order{k};
}

Order RatFunc::order_at(const Rational& a) const
{
    if (is_zero())
        return Order{};
    return Order{*arith::order_at(num_, a).value - *arith::order_at(den_, a).value};
}

std::string RatFunc::to_string() const
{
    if (is_poly())
        return num_.to_string();
    std::string n = num_.to_string();
    if (num_.coeffs().size() > 1 || num_.lead() < 0)
        n = "(" + n + ")";
    return n + "/(" + den_.to_string() + ")";
}

} // namespace zadic::arith
