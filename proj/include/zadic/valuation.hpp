#pragma once

#include <string>
#include <variant>

#include "zadic/ratfunc.hpp"

namespace zadic::rational {

using arith::Order;
using arith::Poly;
using arith::PValue;
using arith::Rational;
using arith::RatFunc;

enum class ValKind {
    EvalPAdic,      // |f(c)|_p, c p-integral
    Gauss,          // Gauss norm on Z_(p)[t]
    Disc,           // Gauss norm on the disc |t - c| <= |p^k|
    ResidueTrivial, // reduce mod p, then the trivial valuation (kernel p)
    TAdicAt,        // additive order of vanishing at a; not a point of Spa
};

struct DiscreteValuation {
    ValKind kind = ValKind::Gauss;
    long p = 0;
    Rational point = 0; // c for EvalPAdic and Disc, a for TAdicAt
    long radius = 0;    // k for Disc

    static DiscreteValuation eval_padic(long p, const Rational& c);
    static DiscreteValuation gauss(long p);
    static DiscreteValuation disc(long p, const Rational& c, long k);
    static DiscreteValuation residue_trivial(long p);
    static DiscreteValuation tadic_at(const Rational& a);

    bool is_spa_point() const { return kind != ValKind::TAdicAt; }
    std::string to_string() const;
    friend bool operator==(const DiscreteValuation& a, const DiscreteValuation& b) = default;
};

using ValuationValue = std::variant<PValue, Order>;

// Multiplicative value; throws InvalidInput for TAdicAt and at poles.
PValue val_apply(const DiscreteValuation& v, const RatFunc& f);
// Additive order for TAdicAt.
Order order_apply(const DiscreteValuation& v, const RatFunc& f);
ValuationValue value_of(const DiscreteValuation& v, const RatFunc& f);

// Parses the to_string form: "gauss", "eval(c)", "disc(c,k)", "residue",
// "tadic(a)"; p is supplied separately.
DiscreteValuation parse_valuation(const std::string& text, long p);

} // namespace zadic::rational
