#include "zadic/rational.hpp"

#include <cctype>

#include "zadic/errors.hpp"

namespace zadic::arith {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw InvalidInput("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto valid = [](const std::string& part) {
        size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size())
            return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
        throw InvalidInput("not a rational number: '" + s + "'");
    return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

void require_prime(long p)
{
    if (!is_prime(p))
        throw InvalidInput(std::to_string(p) + " is not prime");
    if (p >= (1L << 31))
        throw InvalidInput("prime too large for residue arithmetic");
}

long PValue::exponent() const
{
    if (!exp_)
        throw InvalidInput("exponent of ZERO");
    return *exp_;
}

PValue operator*(const PValue& a, const PValue& b)
{
    if (a.is_zero() || b.is_zero())
        return PValue::zero();
    return PValue(*a.exp_ + *b.exp_);
}

std::strong_ordering operator<=>(const PValue& a, const PValue& b)
{
    if (a.is_zero() || b.is_zero())
        return b.is_zero() <=> a.is_zero();
    return *b.exp_ <=> *a.exp_;
}

std::string PValue::to_string() const
{
    if (!exp_)
        return "ZERO";
    return "p^" + std::to_string(-*exp_);
}

long padic_val_int(const Integer& n, long p)
{
    if (n == 0)
        throw InvalidInput("valuation of zero integer");
    Integer rest;
    Integer prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

PValue padic_val(const Rational& q, long p)
{
    require_prime(p);
    if (q == 0)
        return PValue::zero();
    return PValue::from_exponent(padic_val_int(q.get_num(), p) - padic_val_int(q.get_den(), p));
}

bool is_p_integral(const Rational& q, long p)
{
    return mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

long inverse_mod(long a, long p)
{
    Integer r;
    Integer x(a), m(p);
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InvalidInput("no inverse of " + std::to_string(a) + " modulo " + std::to_string(p));
    return r.get_si();
}

long residue_mod_p(const Rational& q, long p)
{
    if (!is_p_integral(q, p))
        throw InvalidInput(q.get_str() + " is not " + std::to_string(p) + "-integral");
    Integer m(p);
    Integer n = q.get_num() % m;
    Integer d = q.get_den() % m;
    long r = (n.get_si() * inverse_mod(d.get_si(), p)) % p;
    return r < 0 ? r + p : r;
}

Rational pow(const Rational& q, long e)
{
    Rational base = q;
    if (e < 0) {
        if (q == 0)
            throw InvalidInput("negative power of zero");
        base = 1 / q;
        e = -e;
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return make_rational(num, den);
}

} // namespace zadic::arith
