#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zadic/errors.hpp"
#include "zadic/mpoly.hpp"
#include "zadic/ratfunc.hpp"

namespace zadic::fadic {

using arith::MPoly;
using arith::Poly;
using arith::Rational;
using arith::RatFunc;
using arith::Var;

enum class CarrierKind { RationalField, Integers, PLocalInts, PolyRingOverQ, Quotient, Localized, Tensor };

struct Carrier;
using CarrierPtr = std::shared_ptr<const Carrier>;

// Description of the underlying ring. Elements of every carrier are written
// as MPoly in the carrier's variables (see carrier_vars).
struct Carrier {
    CarrierKind kind = CarrierKind::RationalField;
    long prime = 0;               // PLocalInts
    std::vector<Var> vars;        // PolyRingOverQ; materialized variables of a Tensor
    CarrierPtr base;              // Quotient, Localized; left factor of a Tensor
    std::vector<MPoly> ideal;     // Quotient: generators of J; Localized one_plus: generators of P
    bool one_plus = false;        // Localized: invert 1 + P instead of powers of `element`
    MPoly element;                // Localized: the inverted element
    Var inverse_var = 0;          // Localized: variable standing for 1/element
    CarrierPtr right;             // Tensor
    CarrierPtr over;              // Tensor
    std::map<Var, MPoly> left_map;  // Tensor: images of the variables of `over`
    std::map<Var, MPoly> right_map;

    static CarrierPtr rationals();
    static CarrierPtr integers();
    static CarrierPtr p_local(long p);
    static CarrierPtr polynomials(std::vector<Var> vars = {arith::var_t});
    static CarrierPtr quotient(CarrierPtr base, std::vector<MPoly> ideal);
    static CarrierPtr localized_powers(CarrierPtr base, MPoly element, Var inverse_var);
    static CarrierPtr localized_one_plus(CarrierPtr base, std::vector<MPoly> p_gens);

    friend bool operator==(const Carrier& a, const Carrier& b);
};

bool same_carrier(const CarrierPtr& a, const CarrierPtr& b);

// Variables that may occur in elements of the carrier.
std::vector<Var> carrier_vars(const Carrier& c);
// True when Q is contained in the carrier.
bool contains_rationals(const Carrier& c);

// Equality of two elements of a carrier, by normal forms.
Decidable<bool> carrier_equal(const Carrier& c, const MPoly& a, const MPoly& b);
Decidable<bool> is_zero_ring(const Carrier& c);

struct RingPresentation {
    CarrierPtr carrier;
    std::vector<MPoly> ring_of_def;  // generators of A0 over the scalars
    std::vector<MPoly> ideal_of_def; // generators of I0 inside A0
    std::optional<long> prime;

    friend bool operator==(const RingPresentation& a, const RingPresentation& b);
};

// Validates and returns the presentation (throws InvalidInput).
RingPresentation make_presentation(CarrierPtr carrier, std::vector<MPoly> ring_of_def,
                                   std::vector<MPoly> ideal_of_def, std::optional<long> prime);

struct AffinoidPresentation {
    RingPresentation ring;
    std::vector<MPoly> plus_ring; // generators of A+ over the scalars
    friend bool operator==(const AffinoidPresentation& a, const AffinoidPresentation& b) = default;
};

AffinoidPresentation make_affinoid(RingPresentation ring, std::vector<MPoly> plus_ring);

// Inclusions phi(I_src^m A0) in I_tgt^n A0' recorded as pairs (n, m).
struct ContinuityCertificate {
    std::vector<std::pair<int, int>> levels;
};

struct RingMap {
    RingPresentation source;
    RingPresentation target;
    std::map<Var, MPoly> images; // images of the source variables
    std::optional<ContinuityCertificate> continuity;

    MPoly apply(const MPoly& x) const;
};

// Builds a map and checks it is well defined on quotient relations.
RingMap make_ring_map(RingPresentation source, RingPresentation target, std::map<Var, MPoly> images);
RingMap identity_map(const RingPresentation& a);
RingMap compose(const RingMap& second, const RingMap& first);

// Verifies phi(A0) in A0' and phi(I0) in I0'A0' and records levels n -> n
// for n = 1..levels. Undecidable outside polynomial presentations.
Decidable<ContinuityCertificate> certify_continuity(const RingMap& map, int levels = 8);

// The catalogued adic domains: base[1/f] with ring of definition
// Lambda[t][r_i/f] and ideal of definition (p), optionally Zariskised.
// Lambda is Z for the Integers base and Z_(p) otherwise (Z when no prime).
enum class BaseKind { Integers, PLocal, Rationals, PolyQ };

struct AdicDomain {
    BaseKind base = BaseKind::PolyQ;
    std::optional<long> p;        // I0 = (p); nullopt means I0 = 0
    Poly inverted{1};             // f
    std::vector<Poly> ratio_nums; // r_i, so that u_i stands for r_i / f
    bool zariskised = false;

    friend bool operator==(const AdicDomain& a, const AdicDomain& b) = default;
    RatFunc ratio(size_t i) const { return RatFunc(ratio_nums.at(i), inverted); }
    bool constants_only() const { return base != BaseKind::PolyQ; }
};

// Checks the normalization rules (f and r_i in Lambda[t], constants for
// constant bases) and throws InvalidInput.
void validate(const AdicDomain& d);
RingPresentation to_presentation(const AdicDomain& d);
Decidable<AdicDomain> classify(const RingPresentation& a);

// Lambda membership and I0*Lambda membership for a coefficient.
bool in_scalars(const AdicDomain& d, const Rational& c);
bool in_scalar_ideal(const AdicDomain& d, const Rational& c);

struct FadicQuotient {
    RingPresentation ring;
    RingMap projection;
    // For Q[t] modulo t - c with c p-integral: the isomorphism onto Q with
    // the p-adic topology, t -> c.
    std::optional<RingMap> simplified;
};
FadicQuotient quotient_fadic(const RingPresentation& a, const std::vector<MPoly>& ideal);
// The map A/J -> B induced by g : A -> B; throws InvalidInput if g(J) != 0.
RingMap factor_through_quotient(const FadicQuotient& q, const RingMap& g);

struct FadicTensor {
    RingPresentation ring;
    RingMap from_left;
    RingMap from_right;
    bool zero = false;
};
// phi : R -> A, psi : R -> B, both with continuity certificates.
Decidable<FadicTensor> tensor_fadic(const RingMap& phi, const RingMap& psi);
// The unique map T -> C through which (f', g') factor; throws InvalidInput
// unless f' o phi = g' o psi on the generators of R.
RingMap tensor_factor(const FadicTensor& t, const RingMap& phi, const RingMap& psi, const RingMap& left,
                      const RingMap& right);

struct OpenIdealCertificate {
    bool open = false;
    // When open: sum coefficients[i] * gens[i] = p^exponent (or 1 when exponent = 0).
    std::vector<MPoly> coefficients;
    long exponent = 0;
    std::string explanation;
};
Decidable<OpenIdealCertificate> is_open_ideal(const RingPresentation& a, const std::vector<MPoly>& gens);

struct KernelDescription {
    std::vector<MPoly> generators; // empty: the zero ideal
    std::string justification;
};
Decidable<KernelDescription> hausdorff_kernel_domain(const RingPresentation& a);

} // namespace zadic::fadic
