#pragma once

#include <string>

#include "zadic/poly.hpp"

namespace zadic::arith {

// Element of Q(t) kept as num/den with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(Rational(c)) {}
    RatFunc(const Poly& num) : num_(num), den_(1) {}
    RatFunc(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    bool is_constant() const { return is_poly() && num_.is_constant(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(long e) const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

    // Throws InvalidInput at a pole.
    Rational eval(const Rational& x) const;

    // content_val(num) - content_val(den): the Gauss valuation exponent.
    PValue gauss_val(long p) const;
    // Order of vanishing at t = a.
    Order order_at(const Rational& a) const;

    std::string to_string() const;

private:
    Poly num_;
    Poly den_;
};

// Order of vanishing of a polynomial at t = a.
Order order_at(const Poly& f, const Rational& a);

} // namespace zadic::arith
