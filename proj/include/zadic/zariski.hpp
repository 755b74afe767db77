#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zadic/fadic.hpp"

namespace zadic::zariski {

using arith::MPoly;
using arith::Poly;
using arith::PolyFp;
using arith::Rational;
using arith::RatFunc;
using fadic::AdicDomain;

// sum coeffs[i] * r_i + coeff_f * f = 1 + z with all coefficients in
// Lambda[t] and z in p*Lambda[t]. Then E = sum coeffs[i]*u_i + coeff_f is
// (1 + z)/f, an element of A0.
struct ResidualBezout {
    std::vector<Poly> coeffs;
    Poly coeff_f;
    Poly z;
};
std::optional<ResidualBezout> residual_bezout(const AdicDomain& d);

// A catalogued domain together with the data its decisions need.
struct LocRing {
    AdicDomain domain;
    std::optional<ResidualBezout> bezout;
    MPoly e_element; // E in the variables t, u_i
    bool zero = false;

    long p() const { return *domain.p; }
    const Poly& f() const { return domain.inverted; }
};
using Ring = std::shared_ptr<const LocRing>;

// Undecidable for a Zariskised ring whose generators have no residual
// Bezout identity.
Decidable<Ring> make_ring(const AdicDomain& d);

// num / (f^n * (1 + cert)), where cert is a polynomial in t and
// u_i = r_i / f with coefficients in p*Lambda (zero unless Zariskised).
class LocElement {
public:
    LocElement() = default;
    LocElement(Ring ring, Poly num, unsigned n = 0, MPoly cert = {});

    const Ring& ring() const { return ring_; }
    const Poly& num() const { return num_; }
    unsigned inv_power() const { return n_; }
    const MPoly& cert() const { return cert_; }

    // Normal form in Q(t); zero in the zero ring.
    RatFunc value() const;

    friend LocElement operator+(const LocElement& a, const LocElement& b);
    friend LocElement operator-(const LocElement& a, const LocElement& b);
    friend LocElement operator*(const LocElement& a, const LocElement& b);
    LocElement operator-() const;
    LocElement pow(unsigned e) const;
    // Equality of normal forms (all elements agree in the zero ring).
    friend bool operator==(const LocElement& a, const LocElement& b);

    std::string to_string() const;

private:
    Ring ring_;
    Poly num_;
    unsigned n_ = 0;
    MPoly cert_;
};

// Value of 1 + cert with u_i = r_i/f.
RatFunc cert_value(const LocRing& ring, const MPoly& cert);

bool contains(const LocRing& ring, const RatFunc& y);
// A representation of y, verified; nullopt when y is not in the ring.
std::optional<LocElement> represent(const Ring& ring, const RatFunc& y);

struct ZariskisationDescriptor {
    fadic::RingPresentation base;
    std::vector<MPoly> inverted_ideal_gens; // generators of P = I0 A0; empty for I0 = 0
    fadic::RingPresentation presentation;   // of A^Zar
    Ring ring;
};
// Throws InvalidInput outside the catalogued family or without a residual
// Bezout identity.
ZariskisationDescriptor zariskisation(const fadic::RingPresentation& a);

struct UnitDecision {
    bool unit = false;
    std::optional<LocElement> inverse;
    // When not a unit: reduction mod p of the obstructing denominator part.
    std::optional<PolyFp> evidence;
    std::string reason;
};
UnitDecision is_unit_zar(const LocElement& x);
UnitDecision is_unit_zar(const MPoly& x, const ZariskisationDescriptor& z);

struct ZariskianDecision {
    bool zariskian = false;
    std::optional<RatFunc> witness; // an element of 1 + I that is not a unit
    std::string justification;
};
Decidable<ZariskianDecision> is_zariskian(const fadic::RingPresentation& a);

// Representative-based: the numerator has content at least 1. Undecidable
// when 1/f is not known to be power-bounded.
Decidable<bool> is_top_nilpotent_zar(const LocElement& x);

struct TruncatedInverse {
    Poly sum;                      // 1 + y + ... + y^(N-1)
    Poly residual;                 // (1 - y) * sum - 1 = -y^N
    std::optional<long> level;     // content of the residual; nullopt when it is 0
};
// y must be topologically nilpotent in the polynomial ring of d.
TruncatedInverse truncated_inverse(const AdicDomain& d, const Poly& y, unsigned n_terms);

// Reduction of a p-integral polynomial, and b | a^j test in F_p[t].
std::optional<unsigned> power_divisible(const PolyFp& b, const PolyFp& a);

} // namespace zadic::zariski
