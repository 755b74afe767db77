#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zadic/rational_subset.hpp"

namespace zadic::cex {

using arith::MPoly;
using arith::Poly;
using arith::PolyFp;
using arith::Rational;
using arith::RatFunc;
using rational::DiscreteValuation;
using zariski::LocElement;

// A = (Q[t], Z_(p)[t]) covered by U1 = R(1/(t+1)) and U2 = R(1/(t-1)).
struct CexContext {
    long p = 0;
    fadic::AffinoidPresentation a;
    rational::RationalSubset u1, u2, u12;
    rational::LocalizedAffinoid z1, z2, z12;
    rational::Restriction r1, r2; // U1 -> U12, U2 -> U12

    // rho(s1, s2) = s1|U12 - s2|U12
    LocElement rho(const LocElement& s1, const LocElement& s2) const;
};
// Rejects p = 2 and composite p with InvalidInput.
CexContext cex_setup(long p);

struct CoverCheck {
    std::size_t checked = 0;
    std::size_t only_u1 = 0, only_u2 = 0, both = 0;
    std::map<std::string, std::size_t> kinds; // valuation kind -> count
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
CoverCheck cover_check(const CexContext& ctx, const std::vector<DiscreteValuation>& sample);
// Gauss, eval at +-1, the discs around +-1 and seeded draws; at least 5 points.
std::vector<DiscreteValuation> cex_valuations(long p, std::size_t count, std::uint64_t seed);

// 1 / (1 + p/(t^2 - 1)) on U12.
LocElement target_element(const CexContext& ctx);

// s_i = g_i(t, Y) / (1 + p f_i(t, Y)) with Y = 1/(t+1) on U1, 1/(t-1) on U2;
// polynomials in X (standing for t) and Y.
struct CandidatePreimage {
    MPoly f1, f2, g1, g2;
    std::string to_string() const;
};

struct Refutation {
    RatFunc difference; // rho(s1, s2) - target
    bool surprise = false; // the difference vanished
    bool double_entry = true; // pointwise evaluation agreed at three points
    std::vector<Rational> points;
};
// Throws InvalidInput when some f_i is not p-integral or 1 + p f_i vanishes.
Refutation refute_candidate(const CexContext& ctx, const CandidatePreimage& cand, std::uint64_t seed = 1);

struct GridSpec {
    unsigned degree = 2;    // monomials X^a Y^b with a + b <= degree
    long height = 2;        // coefficients a/b with |a|, b <= height
    unsigned max_nonzero = 2; // how many of f1, f2, g1, g2 may be nonzero
};
// Each polynomial is zero or a single term; f-coefficients are p-integral.
std::vector<CandidatePreimage> candidate_grid(const CexContext& ctx, const GridSpec& spec);

struct ObstructionCertificate {
    // t^2 - 1 + p has discriminant 4 - 4p, not a rational square.
    bool irreducible = false;
    Rational discriminant;
    // t^2 - 1 = -p modulo t^2 - 1 + p, and -p != 0.
    bool quotient_domain = false;
    Poly quotient_witness;
    // (t - 1)(t + 1) = 0 in F_p[t]/(t^2 - 1), both factors nonzero there,
    // and t^2 - 1 + p reduces to t^2 - 1.
    bool fp_zero_divisor = false;
    std::vector<PolyFp> zero_divisors;
    // v(1 + p a) = 0 and v((p/2) b) >= 1 for p-integral a, b.
    bool valuation_mismatch = false;
    std::size_t mismatch_samples = 0;
    long rhs_min_exponent = 0;
    std::vector<std::string> interval_argument;

    std::size_t passed() const
    {
        return irreducible + quotient_domain + fp_zero_divisor + valuation_mismatch;
    }
};
ObstructionCertificate obstruction_certificates(const CexContext& ctx, std::size_t samples = 100,
                                                std::uint64_t seed = 1);

struct H1Report {
    long p = 0;
    CoverCheck cover;
    ObstructionCertificate certificates;
    std::size_t candidates = 0;
    std::size_t refuted = 0;
    std::vector<std::string> surprises;
    std::vector<std::string> double_entry_failures;
    std::string verdict;
    std::string scope;

    bool ok() const
    {
        return cover.ok() && certificates.passed() == 4 && surprises.empty() && double_entry_failures.empty() &&
               refuted == candidates;
    }
};
// grid = nullopt: certificates and the cover check only.
H1Report h1_report(const CexContext& ctx, const std::optional<GridSpec>& grid,
                   const std::vector<DiscreteValuation>& sample, std::uint64_t seed = 1);

} // namespace zadic::cex
