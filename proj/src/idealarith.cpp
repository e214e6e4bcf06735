#include "lamcm/idealarith.hpp"

#include <stdexcept>

#include "lamcm/cmfields.hpp"

namespace lamcm {

Int hensel_sqrt(const Int& D, const Int& p, long k) {
    if (k < 1) throw std::invalid_argument("hensel_sqrt: k >= 1");
    Int pk = pow_int(p, (unsigned long)k);
    if (p == 2) {
        Int m8 = D % 8;
        if (m8 < 0) m8 += 8;
        if (m8 != 1) throw std::domain_error("hensel_sqrt: D must be 1 mod 8 for p = 2");
        // bitwise lift from r = 1: keeps r = 1 mod 4, lands on the 2-adic
        // root delta with delta = 1 mod 4
        long K = k + 4;
        Int r(1);
        for (long j = 3; j < K; ++j) {
            Int res = r * r - D;
            Int twoj = pow_int(Int(2), (unsigned long)j);
            if ((res / twoj) % 2 != 0) r += twoj / 2;
        }
        r %= pk;
        if (r < 0) r += pk;
        if (k >= 2 && r % 4 != 1) throw std::logic_error("hensel_sqrt: residue normalization failed at p=2");
        if ((r * r - D) % pk != 0) throw std::logic_error("hensel_sqrt: lift check failed at p=2");
        return r;
    }
    if (kronecker(D, p) != 1)
        throw std::domain_error("hensel_sqrt: D is not a unit square mod " + p.get_str());
    // base root mod p by exponentiation (p odd); choose the smaller one
    Int Dp = D % p;
    if (Dp < 0) Dp += p;
    Int r0(0);
    if (p % 4 == 3) {
        Int e = (p + 1) / 4;
        mpz_powm(r0.get_mpz_t(), Dp.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    } else {
        // Tonelli-Shanks
        Int q = p - 1;
        long s = 0;
        while (q % 2 == 0) { q /= 2; ++s; }
        Int zq(2);
        while (kronecker(zq, p) != -1) ++zq;
        Int c, tt, rr, e2 = (q + 1) / 2;
        mpz_powm(c.get_mpz_t(), zq.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(tt.get_mpz_t(), Dp.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(rr.get_mpz_t(), Dp.get_mpz_t(), e2.get_mpz_t(), p.get_mpz_t());
        long m = s;
        while (tt != 1) {
            Int t2 = tt;
            long i = 0;
            while (t2 != 1 && i < m) { t2 = t2 * t2 % p; ++i; }
            if (i == m) throw std::logic_error("hensel_sqrt: Tonelli-Shanks failure");
            Int b = c;
            for (long j = 0; j < m - i - 1; ++j) b = b * b % p;
            rr = rr * b % p;
            c = b * b % p;
            tt = tt * c % p;
            m = i;
        }
        r0 = rr;
    }
    if (r0 > p - r0) r0 = p - r0; // smaller positive root mod p
    // Newton lift to p^(k+2), then reduce
    Int mod = pow_int(p, (unsigned long)(k + 2));
    Int r = r0;
    for (long it = 0; it < k + 8; ++it) {
        Int res = (r * r - D) % mod;
        if (res == 0) break;
        Int den = 2 * r;
        Int deninv;
        if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()))
            throw std::logic_error("hensel_sqrt: derivative not invertible");
        r = (r - res * deninv) % mod;
        if (r < 0) r += mod;
    }
    if ((r * r - D) % mod != 0) throw std::logic_error("hensel_sqrt: Newton did not converge");
    r %= pk;
    if (r < 0) r += pk;
    // normalize to the lift of the smaller base root
    if (r % p != r0) r = (pk - r) % pk;
    if ((r * r - D) % pk != 0) throw std::logic_error("hensel_sqrt: lift check failed");
    return r;
}

PrimeSplitting splitting(const Int& p, const Int& d1, const Int& d2) {
    Int g;
    mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
    if (g != 1) throw std::invalid_argument("splitting: discriminants must be coprime");
    Int D = d1 * d2;
    PrimeSplitting s;
    s.p = p;
    s.d1 = d1;
    s.d2 = d2;
    int kD = kronecker(D, p);
    if (kD == 1) { s.type_in_F = FSplit::Split; s.residue_degree = 1; }
    else if (kD == -1) { s.type_in_F = FSplit::Inert; s.residue_degree = 2; }
    else { s.type_in_F = FSplit::Ramified; s.residue_degree = 1; }

    if (s.type_in_F == FSplit::Inert) {
        s.chi_E = 1; // (d_i|p)^2
    } else {
        const Int& dCop = (d1 % p != 0) ? d1 : d2;
        if (dCop % p == 0) throw std::logic_error("splitting: both discriminants divisible by p");
        s.chi_E = kronecker(dCop, p);
        if (s.chi_E == 0) throw std::logic_error("splitting: chi_E undefined");
    }
    return s;
}

std::vector<long> valuations(const RealQuadElement& t, const Int& p, const PrimeSplitting& s) {
    Int N = t.norm();
    if (N == 0) throw std::invalid_argument("valuations: N(t) = 0");
    long vN = (N % p == 0) ? valuation(N, p) : 0;
    switch (s.type_in_F) {
        case FSplit::Inert: {
            if (vN % 2 != 0)
                throw std::logic_error("valuations: odd norm valuation at an inert prime");
            return {vN / 2};
        }
        case FSplit::Ramified:
            return {vN};
        case FSplit::Split: {
            long K = vN + 4;
            Int r = hensel_sqrt(t.D, p, K);
            Int pk = pow_int(p, (unsigned long)K);
            auto emb_val = [&](const Int& x) -> long {
                Int y = x % pk;
                if (y < 0) y += pk;
                if (y == 0) return vN; // capped; cannot exceed total
                long v = 0;
                while (y % p == 0 && v <= vN) { y /= p; ++v; }
                return std::min(v, vN);
            };
            long v1, v2;
            if (p == 2) {
                v1 = emb_val((t.m + r) / 2);
                v2 = emb_val((t.m - r) / 2);
            } else {
                v1 = emb_val(t.m + r);
                v2 = emb_val(t.m - r);
            }
            if (v1 + v2 != vN)
                throw std::logic_error("valuations: split valuations do not add to ord_p(N)");
            return {v1, v2};
        }
    }
    throw std::logic_error("valuations: unreachable");
}

long rho_local(long e, int chi) {
    if (e < 0) return 0;
    if (chi == 1) return e + 1;
    if (chi == -1) return (e % 2 == 0) ? 1 : 0;
    throw std::invalid_argument("rho_local: chi must be +-1");
}

long rho_ideal(const std::vector<std::pair<long, int>>& factors) {
    long r = 1;
    for (const auto& [e, chi] : factors) r *= rho_local(e, chi);
    return r;
}

std::vector<DiffPrime> diff_set(const RealQuadElement& t, const Int& d1, const Int& d2) {
    std::vector<DiffPrime> out;
    Int N = abs(t.norm());
    std::vector<Int> ps;
    Int M = N;
    for (Int p = 2; p * p <= M; p += (p == 2 ? 1 : 2))
        if (M % p == 0) {
            ps.push_back(p);
            while (M % p == 0) M /= p;
        }
    if (M > 1) ps.push_back(M);

    for (const Int& p : ps) {
        PrimeSplitting s = splitting(p, d1, d2);
        if (s.chi_E != -1) continue;
        std::vector<long> vs = valuations(t, p, s);
        if (s.type_in_F == FSplit::Split) {
            if (vs[0] % 2 != 0) out.push_back({p, 0, s.residue_degree});
            if (vs[1] % 2 != 0) out.push_back({p, 1, s.residue_degree});
        } else {
            if (vs[0] % 2 != 0) out.push_back({p, -1, s.residue_degree});
        }
    }
    return out;
}

} // namespace lamcm
