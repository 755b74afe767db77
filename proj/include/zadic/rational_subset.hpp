#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zadic/fadic.hpp"
#include "zadic/valuation.hpp"
#include "zadic/zariski.hpp"

namespace zadic::rational {

using arith::MPoly;
using arith::Var;
using fadic::AdicDomain;
using zariski::LocElement;

// R(f_1, ..., f_r / g) = {v : v(f_i) <= v(g) != 0}.
struct RationalSubset {
    fadic::AffinoidPresentation over;
    std::vector<Poly> nums;
    Poly den;
    // The same data times a common constant, with coefficients in Lambda and
    // minimal content zero; the subset does not change.
    std::vector<Poly> scaled_nums;
    Poly scaled_den;
    fadic::OpenIdealCertificate openness;

    std::string to_string() const;
};

// Over Q[t] and Q: multiplies all of fs by one power of p so that every
// coefficient lies in Lambda and the smallest content is zero. Over Z and
// Z_(p) the elements must already lie in Lambda and are left alone.
std::vector<Poly> scale_to_lambda(const AdicDomain& d, std::vector<Poly> fs);

// Throws NotOpen when (nums, den) is not an open ideal, InvalidInput outside
// the catalogued unlocalized domains.
RationalSubset mk_rational_subset(const fadic::AffinoidPresentation& a, std::vector<Poly> nums, Poly den);
// "R(f1, ..., fr / g)"; the last top-level slash separates the denominator.
RationalSubset parse_rational_subset(const fadic::AffinoidPresentation& a, const std::string& text);

struct LocalizedAffinoid {
    fadic::RingPresentation carrier; // presentation of Z_A(U)
    std::vector<MPoly> plus;         // generators only; the integral closure is not computed
    fadic::RingMap map_from_a;
    AdicDomain domain;
    zariski::Ring ring;
};
LocalizedAffinoid rational_localization(const fadic::AffinoidPresentation& a, const RationalSubset& u);

bool in_rational_subset(const DiscreteValuation& v, const RationalSubset& u);

// The map between section rings induced by f_target = f_source * factor:
// t -> t, u_i -> images, num -> num * factor^n.
struct Restriction {
    zariski::Ring source;
    zariski::Ring target;
    Poly factor;
    std::map<Var, MPoly> ratio_images;

    LocElement apply(const LocElement& x) const;
};
Restriction make_restriction(const zariski::Ring& source, const zariski::Ring& target);

struct KernelPoint {
    std::optional<DiscreteValuation> point; // nullopt: Unrepresentable
    std::string reason;
};
KernelPoint kernel_point_for_maximal(const fadic::AffinoidPresentation& a, const MPoly& m);

// Gauss, then p-integral evaluation points and discs drawn from the seed.
std::vector<DiscreteValuation> sample_valuations(long p, size_t count, std::uint64_t seed);

} // namespace zadic::rational
