#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zadic/rational_subset.hpp"
#include "zadic/rng.hpp"

namespace zadic::presheaf {

using arith::MPoly;
using arith::RatFunc;
using arith::Poly;
using arith::Rational;
using fadic::AdicDomain;
using fadic::AffinoidPresentation;
using zariski::LocElement;

// Finitely generated modules: A^rank, or A/(relation).
struct Module {
    enum class Kind { Free, Cyclic };
    Kind kind = Kind::Free;
    unsigned rank = 1;
    Poly relation;

    static Module free(unsigned rank) { return {Kind::Free, rank, Poly()}; }
    static Module cyclic(Poly relation) { return {Kind::Cyclic, 1, std::move(relation)}; }
    unsigned components() const { return kind == Kind::Free ? rank : 1; }
    std::string to_string() const;
};
// "A", "A^2", "A+A", "A/(t)", "0".
Module parse_module(const std::string& text);

// Standard cover f_0, ..., f_n of Spa A: sum g_i f_i = 1 + z with z in I0.
struct Cover {
    AffinoidPresentation over;
    AdicDomain global; // A^Zar
    std::vector<Poly> gens; // scaled into Lambda[t] by one common constant
    std::vector<Poly> bezout;
    Poly bezout_z;
};
// Throws NotACover without a residual Bezout identity.
Cover make_cover(const AffinoidPresentation& a, const std::vector<Poly>& gens);

// Global sections when k1 < 0; the piece U_k when k1 == k2 == k; the overlap
// U_k1 cap U_k2 when k1 < k2.
struct Piece {
    int k1 = -1;
    int k2 = -1;
    static Piece global() { return {}; }
    static Piece single(int k) { return {k, k}; }
    static Piece overlap(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
    bool is_global() const { return k1 < 0; }
    std::string to_string() const;
    friend bool operator==(const Piece&, const Piece&) = default;
};

struct SectionRing {
    Piece piece;
    Module module;
    AdicDomain domain;
    fadic::RingPresentation presentation;
    zariski::Ring ring;
    bool module_zero = false; // M tensor O(U) = 0

    bool zero() const { return module_zero; }
};
using SectionRingPtr = std::shared_ptr<const SectionRing>;

SectionRingPtr sections(const Cover& cover, const Module& m, Piece piece);

struct SectionElement {
    SectionRingPtr ring;
    std::vector<LocElement> comps; // one per module component

    std::string to_string() const;
};
// Equality in M tensor O(U): componentwise, modulo the relation for A/(g).
bool section_equal(const SectionElement& a, const SectionElement& b);
SectionElement section_sub(const SectionElement& a, const SectionElement& b);
SectionElement section_zero(const SectionRingPtr& ring);

struct CechComplex {
    Cover cover;
    Module module;
    SectionRingPtr global;
    std::vector<SectionRingPtr> pieces;
    std::vector<std::pair<int, int>> overlaps; // k1 < k2, lexicographic
    std::vector<SectionRingPtr> overlap_rings;
    std::vector<rational::Restriction> to_piece;  // global -> U_k
    std::vector<rational::Restriction> from_left; // U_k1 -> U_k1 cap U_k2
    std::vector<rational::Restriction> from_right;
};
CechComplex cech_complex(const Cover& cover, const Module& m);

SectionElement restrict_global(const CechComplex& cx, const SectionElement& s, int k);
// s lives on U_k; k must be one of the overlap's indices.
SectionElement restrict(const CechComplex& cx, const SectionElement& s, int k, Piece overlap);
std::vector<SectionElement> phi(const CechComplex& cx, const SectionElement& m);
// (s_k1|overlap - s_k2|overlap) for every overlap in order.
std::vector<SectionElement> psi(const CechComplex& cx, const std::vector<SectionElement>& pieces);

using Cocycle = std::vector<SectionElement>;

// Gluing by a := sum a_j g_j and (1 + sum x_j g_j)^-1 a after collapsing
// every piece to (a_i/F_i)/(1 + x_i/F_i) with F_i = f_i^N. The override
// replaces the computed Bezout coefficients when N = 1 and sum g_i f_i = 1.
// Throws NotACocycle; Undecidable when the result does not restrict back,
// which can only happen for A/(g) with A/(g) not a domain.
Decidable<SectionElement> glue(const CechComplex& cx, const Cocycle& c,
                               const std::optional<std::vector<Poly>>& bezout_override = std::nullopt);

// Seeded generators. Numerators have degree <= 4 and height <= 20;
// certificates are p times ratio monomials of degree <= 2.
SectionElement random_global(const CechComplex& cx, Rng& rng);
// phi(m) with every piece rewritten to carry an extra nonzero certificate,
// plus multiples of the relation for A/(g).
Cocycle random_cocycle(const CechComplex& cx, const SectionElement& m, Rng& rng);

struct CechReport {
    std::string ring;
    std::string module;
    std::vector<std::string> cover;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool phi_injective = true;
    bool psi_after_phi_zero = true;
    std::size_t glue_roundtrips = 0;    // glue(phi(m)) = m
    std::size_t cocycle_roundtrips = 0; // phi(glue(c)) = c with nonzero certificates
    std::vector<std::string> failures;

    bool ok() const
    {
        return phi_injective && psi_after_phi_zero && glue_roundtrips == trials && cocycle_roundtrips == trials &&
               failures.empty();
    }
};
CechReport cech_check(const CechComplex& cx, std::size_t trials, std::uint64_t seed);

} // namespace zadic::presheaf
