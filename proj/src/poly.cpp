#include "zadic/poly.hpp"

#include <algorithm>
#include <sstream>

#include "zadic/errors.hpp"

namespace zadic::arith {

Poly::Poly(const Rational& c)
{
    if (c != 0)
        c_.push_back(c);
}

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs)
{
    trim();
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Poly Poly::monomial(const Rational& c, size_t deg)
{
    if (c == 0)
        return Poly();
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

const Rational& Poly::lead() const
{
    if (c_.empty())
        throw InvalidInput("leading coefficient of the zero polynomial");
    return c_.back();
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_)
        x *= c;
    return *this;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly result(1);
    Poly base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

Rational Poly::eval(const Rational& x) const
{
    Rational r = 0;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * x + c_[i];
    return r;
}

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    Rational inv = 1 / lead();
    return *this * inv;
}

Poly Poly::shift(const Rational& c) const
{
    Poly r;
    Poly lin({c, 1});
    for (size_t i = c_.size(); i-- > 0;)
        r = r * lin + Poly(c_[i]);
    return r;
}

std::string Poly::to_string(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0)
            continue;
        Rational a = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0) {
            out << a.get_str();
            continue;
        }
        if (a != 1)
            out << a.get_str() << "*";
        out << var;
        if (i > 1)
            out << "^" << i;
    }
    return out.str();
}

DivMod divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw InvalidInput("division by the zero polynomial");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {Poly(), a};
    std::vector<Rational> q(a.degree() - db + 1);
    Rational inv = 1 / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0)
            continue;
        Rational f = r[i] * inv;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] -= f * b.coeffs()[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const Poly& a, const Poly& b)
{
    return divmod(a, b).rem;
}

Poly exact_div(const Poly& a, const Poly& b)
{
    auto [q, r] = divmod(a, b);
    require_certificate(r.is_zero(), "exact division of " + a.to_string() + " by " + b.to_string());
    return q;
}

bool divides(const Poly& d, const Poly& a)
{
    if (d.is_zero())
        return a.is_zero();
    return rem(a, d).is_zero();
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero())
        throw InvalidInput("gcd of two zero polynomials");
    Poly x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        Poly r = rem(x, y).monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Xgcd xgcd(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero())
        throw InvalidInput("gcd of two zero polynomials");
    Poly r0 = a, r1 = b;
    Poly s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rational inv = 1 / r0.lead();
    return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<Poly> bezout(std::span<const Poly> fs)
{
    if (fs.empty())
        throw NoBezout("empty list generates the zero ideal");
    std::vector<Poly> coeffs;
    Poly g;
    for (const Poly& f : fs) {
        if (g.is_zero() && f.is_zero()) {
            coeffs.emplace_back();
            continue;
        }
        Xgcd x = xgcd(g, f);
        for (auto& c : coeffs)
            c *= x.s;
        coeffs.push_back(x.t);
        g = x.g;
    }
    if (g.is_zero() || g.degree() > 0)
        throw NoBezout("the polynomials share the factor " + g.to_string());
    Poly check;
    for (size_t i = 0; i < fs.size(); ++i)
        check += coeffs[i] * fs[i];
    require_certificate(check == Poly(1), "Bezout identity");
    return coeffs;
}

PValue content_val(const Poly& f, long p)
{
    require_prime(p);
    if (f.is_zero())
        return PValue::zero();
    return PValue::from_exponent(content_exp(f, p));
}

long content_exp(const Poly& f, long p)
{
    if (f.is_zero())
        throw InvalidInput("content of the zero polynomial");
    bool any = false;
    long best = 0;
    for (const auto& c : f.coeffs()) {
        if (c == 0)
            continue;
        long v = padic_val(c, p).exponent();
        if (!any || v < best)
            best = v;
        any = true;
    }
    return best;
}

PPrimitive p_primitive(const Poly& f, long p)
{
    long e = content_exp(f, p);
    return {e, f * pow(Rational(p), -e)};
}

bool is_p_integral(const Poly& f, long p)
{
    for (const auto& c : f.coeffs())
        if (!is_p_integral(c, p))
            return false;
    return true;
}

PolyFp::PolyFp(long p) : p_(p) {}

PolyFp::PolyFp(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto& c : c_) {
        c %= p_;
        if (c < 0)
            c += p_;
    }
    trim();
}

PolyFp PolyFp::constant(long p, long c)
{
    return PolyFp(p, {c});
}

void PolyFp::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

long PolyFp::lead() const
{
    if (c_.empty())
        throw InvalidInput("leading coefficient of the zero polynomial");
    return c_.back();
}

static void same_modulus(const PolyFp& a, const PolyFp& b)
{
    if (a.modulus() != b.modulus())
        throw InvalidInput("mixed moduli " + std::to_string(a.modulus()) + " and " +
                           std::to_string(b.modulus()));
}

PolyFp operator+(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    std::vector<long> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = a.coeff(i) + b.coeff(i);
    return PolyFp(a.p_, std::move(r));
}

PolyFp operator-(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    std::vector<long> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = a.coeff(i) - b.coeff(i);
    return PolyFp(a.p_, std::move(r));
}

PolyFp operator*(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    if (a.is_zero() || b.is_zero())
        return PolyFp(a.p_);
    std::vector<long> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] = (r[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    return PolyFp(a.p_, std::move(r));
}

PolyFp PolyFp::scaled(long c) const
{
    std::vector<long> r = c_;
    c %= p_;
    for (auto& x : r)
        x = (x * c) % p_;
    return PolyFp(p_, std::move(r));
}

bool operator==(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    return a.c_ == b.c_;
}

PolyFp PolyFp::monic() const
{
    if (is_zero())
        return *this;
    return scaled(inverse_mod(lead(), p_));
}

Poly PolyFp::lift() const
{
    std::vector<Rational> r;
    for (long c : c_)
        r.emplace_back(c);
    return Poly(std::move(r));
}

std::string PolyFp::to_string(const std::string& var) const
{
    return lift().to_string(var) + " (mod " + std::to_string(p_) + ")";
}

DivModFp divmod(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    if (b.is_zero())
        throw InvalidInput("division by the zero polynomial");
    long p = a.modulus();
    std::vector<long> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {PolyFp(p), a};
    std::vector<long> q(a.degree() - db + 1);
    long inv = inverse_mod(b.lead(), p);
    for (int i = a.degree(); i >= db; --i) {
        long f = (r[i] % p) * inv % p;
        if (f == 0)
            continue;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] = (r[i - db + j] - f * b.coeffs()[j]) % p;
    }
    return {PolyFp(p, std::move(q)), PolyFp(p, std::move(r))};
}

PolyFp rem(const PolyFp& a, const PolyFp& b)
{
    return divmod(a, b).rem;
}

PolyFp poly_gcd(const PolyFp& a, const PolyFp& b)
{
    return xgcd(a, b).g;
}

XgcdFp xgcd(const PolyFp& a, const PolyFp& b)
{
    same_modulus(a, b);
    long p = a.modulus();
    if (a.is_zero() && b.is_zero())
        throw InvalidInput("gcd of two zero polynomials");
    PolyFp r0 = a, r1 = b;
    PolyFp s0 = PolyFp::constant(p, 1), s1(p), t0(p), t1 = PolyFp::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyFp s2 = s0 - q * s1;
        PolyFp t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long inv = inverse_mod(r0.lead(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

PolyFp reduce_mod_p(const Poly& f, long p)
{
    require_prime(p);
    std::vector<long> r;
    for (const auto& c : f.coeffs())
        r.push_back(residue_mod_p(c, p));
    return PolyFp(p, std::move(r));
}

bool is_square(const Rational& q)
{
    if (q < 0)
        return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

bool irreducible_quadratic_over_Q(const Poly& f)
{
    if (f.degree() != 2)
        throw InvalidInput("expected a quadratic, got degree " + std::to_string(f.degree()));
    Rational disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
    return !is_square(disc);
}

} // namespace zadic::arith
