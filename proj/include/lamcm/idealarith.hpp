#ifndef LAMCM_IDEALARITH_HPP
#define LAMCM_IDEALARITH_HPP

#include <vector>

#include "lamcm/rational.hpp"

namespace lamcm {

// t = (m + sqrt(D))/2 in the maximal order of F = Q(sqrt(D)); requires
// m = D (mod 2). Norm N(t) = (m^2 - D)/4.
struct RealQuadElement {
    Int m;
    Int D;

    RealQuadElement(Int m_, Int D_) : m(std::move(m_)), D(std::move(D_)) {
        Int diff = this->m - this->D;
        if (diff % 2 != 0) throw std::invalid_argument("RealQuadElement: m and D must have equal parity");
    }
    Int norm() const { return (m * m - D) / 4; } // negative for |m| < sqrt(D)
};

// r with r^2 = D (mod p^k). For odd p: the lift of the smaller positive
// square root mod p. For p = 2 (D = 1 mod 8): the lift with r = 1 mod 4.
Int hensel_sqrt(const Int& D, const Int& p, long k);

enum class FSplit { Split, Inert, Ramified };

// Splitting data of a rational prime p in F = Q(sqrt(d1 d2)) and of the
// primes of F above it in E = Q(sqrt(d1), sqrt(d2)); E/F is unramified, so
// chi_E takes values in {+1,-1}.
struct PrimeSplitting {
    Int p;
    FSplit type_in_F;
    int chi_E;           // chi_{E/F} at each prime of F above p (equal for both when split)
    long residue_degree; // f(P/p): 2 if inert in F, else 1
    Int d1, d2;
};

PrimeSplitting splitting(const Int& p, const Int& d1, const Int& d2);

// Valuations ord_P(t) at the primes of F above p. Split: two entries
// (primary embedding via hensel_sqrt first, conjugate second); otherwise
// one entry. For p = 2 split, the primary embedding is sqrt(D) -> delta
// with delta = 1 mod 4.
std::vector<long> valuations(const RealQuadElement& t, const Int& p, const PrimeSplitting& s);

// local ideal-count factor: number of integral ideals of E above one prime
// P of F with relative norm P^e
long rho_local(long e, int chi);

// product of rho_local over a list of (exponent, chi) pairs
long rho_ideal(const std::vector<std::pair<long, int>>& factors);

// Diff(W, t/sqrt(D)) = { P inert in E/F : ord_P(2t) odd }, returned as
// (p, which) with which = 0 primary / 1 conjugate / -1 non-split
struct DiffPrime {
    Int p;
    int which;
    long residue_degree;
};

std::vector<DiffPrime> diff_set(const RealQuadElement& t, const Int& d1, const Int& d2);

} // namespace lamcm

#endif
