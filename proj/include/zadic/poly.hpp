#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zadic/rational.hpp"

namespace zadic::arith {

// Dense univariate polynomial over Q in the variable t; coeffs()[i] is the
// coefficient of t^i and the leading coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    // Coefficients from low to high degree.
    Poly(std::initializer_list<Rational> coeffs);
    explicit Poly(std::vector<Rational> coeffs);

    static Poly t() { return Poly({0, 1}); }
    static Poly monomial(const Rational& c, size_t deg);
    // t - c
    static Poly linear_root(const Rational& c) { return Poly({-c, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const;
    Rational constant_term() const { return coeff(0); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) = default;

    Poly pow(unsigned e) const;
    Rational eval(const Rational& x) const;
    Poly monic() const;
    // f(t + c)
    Poly shift(const Rational& c) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

struct DivMod {
    Poly quot;
    Poly rem;
};

DivMod divmod(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
// Exact quotient; throws CertificateFailure if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

// Monic gcd; gcd(0, f) = monic(f). Throws InvalidInput when both are zero.
Poly poly_gcd(const Poly& a, const Poly& b);

struct Xgcd {
    Poly g; // monic
    Poly s;
    Poly t; // s*a + t*b = g
};
Xgcd xgcd(const Poly& a, const Poly& b);

// Coefficients g_i with sum g_i f_i = 1, verified before returning.
// Throws NoBezout when the f_i do not generate the unit ideal.
std::vector<Poly> bezout(std::span<const Poly> fs);

// min_i v_p(a_i); ZERO for the zero polynomial.
PValue content_val(const Poly& f, long p);
// Gauss lemma bookkeeping as an integer; f must be nonzero.
long content_exp(const Poly& f, long p);

// f = p^e * g with g p-integral of content zero. f nonzero.
struct PPrimitive {
    long exponent;
    Poly primitive;
};
PPrimitive p_primitive(const Poly& f, long p);

bool is_p_integral(const Poly& f, long p);

class PolyFp {
public:
    PolyFp(long p);
    PolyFp(long p, std::vector<long> coeffs);
    static PolyFp constant(long p, long c);

    long modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<long>& coeffs() const { return c_; }
    long coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    long lead() const;

    friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
    PolyFp scaled(long c) const;
    friend bool operator==(const PolyFp& a, const PolyFp& b);

    PolyFp monic() const;
    // Lift with coefficients in [0, p).
    Poly lift() const;
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    long p_;
    std::vector<long> c_;
};

struct DivModFp {
    PolyFp quot;
    PolyFp rem;
};
DivModFp divmod(const PolyFp& a, const PolyFp& b);
PolyFp rem(const PolyFp& a, const PolyFp& b);
PolyFp poly_gcd(const PolyFp& a, const PolyFp& b);

struct XgcdFp {
    PolyFp g;
    PolyFp s;
    PolyFp t;
};
XgcdFp xgcd(const PolyFp& a, const PolyFp& b);

// Throws InvalidInput for non-prime p or a coefficient with p in its denominator.
PolyFp reduce_mod_p(const Poly& f, long p);

// Degree must be exactly 2; true when the discriminant is not a square in Q.
bool irreducible_quadratic_over_Q(const Poly& f);

bool is_square(const Rational& q);

} // namespace zadic::arith
