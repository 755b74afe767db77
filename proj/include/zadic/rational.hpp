#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace zadic::arith {

using Integer = mpz_class;
// mpq_class keeps numerator and denominator coprime with a positive
// denominator as long as values are built through make_rational or arithmetic.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

bool is_prime(long n);
// Throws InvalidInput unless p is prime (trial division).
void require_prime(long p);

// Absolute value |x|_p recorded by its exponent: |x| = p^(-exponent), with a
// distinguished ZERO for x = 0. The ordering is that of the absolute values,
// so ZERO is the least element and a larger exponent is a smaller value.
class PValue {
public:
    static PValue zero() { return PValue(); }
    static PValue from_exponent(long e) { return PValue(e); }
    static PValue one() { return PValue(0); }

    bool is_zero() const { return !exp_.has_value(); }
    long exponent() const;

    friend PValue operator*(const PValue& a, const PValue& b);
    friend bool operator==(const PValue& a, const PValue& b) = default;
    friend std::strong_ordering operator<=>(const PValue& a, const PValue& b);

    std::string to_string() const;

private:
    PValue() = default;
    explicit PValue(long e) : exp_(e) {}
    std::optional<long> exp_;
};

// Additive order of vanishing; nullopt stands for +infinity (the zero element).
struct Order {
    std::optional<long> value;
    bool is_infinite() const { return !value.has_value(); }
    friend bool operator==(const Order&, const Order&) = default;
};

long padic_val_int(const Integer& n, long p); // n != 0
PValue padic_val(const Rational& q, long p);

// True when q has no p in its denominator.
bool is_p_integral(const Rational& q, long p);
bool is_integer(const Rational& q);

// Residue of a p-integral rational in [0, p).
long residue_mod_p(const Rational& q, long p);
long inverse_mod(long a, long p);

Rational pow(const Rational& q, long e);

} // namespace zadic::arith
