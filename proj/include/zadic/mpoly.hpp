#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zadic/poly.hpp"

namespace zadic::arith {

// Variables of the sparse ring: 0 = t, 1 = X, 2 = Y, 3 + i = u<i>.
using Var = unsigned;
inline constexpr Var var_t = 0;
inline constexpr Var var_X = 1;
inline constexpr Var var_Y = 2;
inline constexpr Var var_u0 = 3;
inline Var var_u(unsigned i) { return var_u0 + i; }

std::string var_name(Var v);
std::optional<Var> var_index(const std::string& name);

// Exponent vector indexed by Var with trailing zeros removed.
using Monomial = std::vector<unsigned>;

class MPoly {
public:
    MPoly() = default;
    MPoly(const Rational& c);
    MPoly(long c) : MPoly(Rational(c)) {}
    static MPoly var(Var v);
    static MPoly monomial(const Rational& c, Monomial m);
    static MPoly from_poly(const Poly& f, Var v = var_t);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(Var v) const;
    // Largest variable index used plus one.
    unsigned num_vars() const;
    bool uses(Var v) const { return degree_in(v) > 0; }
    // Univariate view; nullopt if a variable other than v occurs.
    std::optional<Poly> to_poly(Var v = var_t) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& c);
    friend MPoly operator*(const Rational& c, MPoly a) { return std::move(a) * c; }
    MPoly operator-() const;
    MPoly pow(unsigned e) const;
    friend bool operator==(const MPoly& a, const MPoly& b) = default;

    // Replaces every variable by the given polynomial.
    MPoly substitute(const std::function<MPoly(Var)>& image) const;

    // Evaluates in an arbitrary commutative ring T with T(Rational) and
    // T(1) available; powers are cached per variable.
    template <class T>
    T evaluate(const std::function<T(Var)>& image) const;

    // Groups terms by their exponents in the variables at or above first,
    // returning coefficients as polynomials in the variables below first.
    std::map<Monomial, MPoly> split_at(Var first) const;

    std::string to_string() const;

private:
    static void trim(Monomial& m);
    std::map<Monomial, Rational> terms_;
};

template <class T>
T MPoly::evaluate(const std::function<T(Var)>& image) const
{
    std::map<Var, std::vector<T>> powers;
    auto power = [&](Var v, unsigned e) -> const T& {
        auto& cache = powers[v];
        if (cache.empty()) {
            cache.push_back(T(Rational(1)));
            cache.push_back(image(v));
        }
        while (cache.size() <= e)
            cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    T sum = T(Rational(0));
    for (const auto& [mono, c] : terms_) {
        T term = T(c);
        for (Var v = 0; v < mono.size(); ++v)
            if (mono[v])
                term = term * power(v, mono[v]);
        sum = sum + term;
    }
    return sum;
}

} // namespace zadic::arith
