#include "lamcm/normformula.hpp"

#include <algorithm>
#include <stdexcept>

#include "lamcm/cmfields.hpp"

namespace lamcm {

namespace {

long mod8(const Int& d) {
    Int m = d % 8;
    if (m < 0) m += 8;
    return m.get_si();
}

void require_pair(const Int& d1, const Int& d2) {
    if (!is_fundamental(d1) || !is_fundamental(d2) || d1 > -3 || d2 > -3)
        throw std::invalid_argument("need fundamental discriminants <= -3");
    Int g;
    mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
    if (g != 1) throw std::invalid_argument("discriminants must be coprime");
}

// prime factors p of n (n != 0)
std::vector<Int> prime_support(Int n) {
    n = abs(n);
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

struct LocalData {
    Int p;
    PrimeSplitting sp;
    std::vector<long> vals; // ord at the primes above p (primary first if split)
};

// local valuations/chi data at every prime dividing 2*N(t)
std::vector<LocalData> local_profile(const RealQuadElement& t, const Int& d1, const Int& d2) {
    std::vector<LocalData> out;
    Int N = abs(t.norm());
    std::vector<Int> ps = prime_support(N);
    if (std::find(ps.begin(), ps.end(), Int(2)) == ps.end()) ps.insert(ps.begin(), Int(2));
    for (const Int& p : ps) {
        LocalData ld;
        ld.p = p;
        ld.sp = splitting(p, d1, d2);
        ld.vals = valuations(t, p, ld.sp);
        out.push_back(std::move(ld));
    }
    return out;
}

} // namespace

std::pair<Int, Int> canonical_order(const Int& d1, const Int& d2) {
    // the theorem states its cases with 1 mod 8 leading when present,
    // 5 mod 8 leading otherwise, and the even class always second
    long r1 = mod8(d1), r2 = mod8(d2);
    auto cls = [](long r) { return r == 1 ? 0 : r == 5 ? 1 : 2; };
    if (cls(r1) <= cls(r2)) return {d1, d2};
    return {d2, d1};
}

CaseTag case_tag(const Int& d1, const Int& d2) {
    require_pair(d1, d2);
    long r1 = mod8(d1), r2 = mod8(d2);
    CaseTag tag{};
    Int D = d1 * d2;
    long D8 = mod8(D);
    tag.delta_D = (D % 2 == 0) ? 2 : 1;
    tag.epsilon_D = (D8 == 1) ? Rat(2) : (D8 == 5) ? Rat(1) : Rat(1, 2);
    if (r1 == 5 && r2 == 5) tag.case_id = 1;
    else if (r1 == 5 && (r2 == 0 || r2 == 4)) tag.case_id = 2;
    else if (r1 == 1 && r2 == 5) tag.case_id = 3;
    else if (r1 == 1 && (r2 == 0 || r2 == 4)) tag.case_id = 4;
    else if (r1 == 1 && r2 == 1) tag.case_id = 5;
    else throw std::invalid_argument("case_tag: inputs not in canonical order");
    return tag;
}

std::vector<RealQuadElement> enumerate_t(const Int& d1, const Int& d2) {
    require_pair(d1, d2);
    Int D = d1 * d2;
    Int S = (d1 * d1 + d2 * d2 - d1 - d2) / 4;
    std::vector<RealQuadElement> out;
    Int mmax;
    mpz_sqrt(mmax.get_mpz_t(), D.get_mpz_t());
    for (Int m = -mmax; m <= mmax; ++m) {
        if (m * m >= D) continue;
        if ((m - D) % 2 != 0) continue;
        Int c = S - (m + D) / 2;
        if (c % 2 != 0) continue;
        out.emplace_back(m, D);
    }
    return out;
}

namespace {

// shared per-t core: Diff must be exactly one prime; returns the exponent
// coefficient of log p together with the contributing prime, in the exact
// normalization of the five-case formula (kappa included), or zero.
// Also usable by the assembly path, which re-normalizes.
struct TContribution {
    bool zero = true;
    Int p;
    long f = 1;          // residue degree of the contributing prime
    bool p_is_pt = false;
    long ord_pt = 0;     // ord at the primary prime over 2 (split D only)
    Rat weight;          // (1+ord_p(adjusted))/2 [+1/3 if p = p_t]
    long rho_odd = 1;    // ideal counts at odd primes away from the contributor
    long rho_two = 1;    // adjusted ideal counts at the primes over 2 (contributor excluded)
};

TContribution t_contribution(const RealQuadElement& t, const Int& d1, const Int& d2, int case_id) {
    TContribution out;
    std::vector<LocalData> prof = local_profile(t, d1, d2);
    bool adjust_pt = (case_id == 1 || case_id == 5); // D = 1 mod 8: p_t^{-2} present

    // Diff set and p_t bookkeeping
    std::vector<std::pair<const LocalData*, int>> diff; // (prime data, which)
    long ord_pt = 0;
    const LocalData* two = nullptr;
    for (const auto& ld : prof) {
        if (ld.p == 2) two = &ld;
        if (ld.sp.chi_E != -1) continue;
        if (ld.sp.type_in_F == FSplit::Split) {
            if (ld.vals[0] % 2 != 0) diff.push_back({&ld, 0});
            if (ld.vals[1] % 2 != 0) diff.push_back({&ld, 1});
        } else if (ld.vals[0] % 2 != 0) {
            diff.push_back({&ld, -1});
        }
    }
    if (adjust_pt) {
        if (!two || two->sp.type_in_F != FSplit::Split)
            throw std::logic_error("t_contribution: 2 must split when D = 1 mod 8");
        ord_pt = two->vals[0]; // primary embedding sqrt(D) -> delta
        if (ord_pt < 1)
            throw std::logic_error("t_contribution: t not in the delta-embedding prime");
        out.ord_pt = ord_pt;
    }
    if (diff.size() % 2 != 1)
        throw std::logic_error("t_contribution: Diff set has even order");
    if (diff.size() != 1) return out;

    const LocalData& P = *diff[0].first;
    int which = diff[0].second;
    out.p = P.p;
    out.f = P.sp.residue_degree;
    out.p_is_pt = (P.p == 2 && adjust_pt && which == 0);
    if (P.p == 2 && adjust_pt && which == 1)
        throw std::logic_error("t_contribution: conjugate prime over 2 cannot be in Diff");
    if (P.p == 2 && !adjust_pt)
        throw std::logic_error("t_contribution: prime over 2 in Diff for non-split D");

    // ideal counts away from the contributing prime, with the p_t^{-2}
    // adjustment applied at the primary prime over 2
    long rho_odd = 1, rho_two = 1;
    for (const auto& ld : prof) {
        std::vector<long> es = ld.vals;
        if (adjust_pt && ld.p == 2) es[0] -= 2;
        // the non-split expected orders over 2 (0, or 1 in the ramified
        // chi=+1 class) are forced by the summation filter
        if (ld.p == 2 && ld.sp.type_in_F == FSplit::Inert && es[0] != 0)
            throw std::logic_error("t_contribution: nonzero order at the inert prime over 2");
        if (ld.p == 2 && ld.sp.type_in_F == FSplit::Ramified && es[0] != (ld.sp.chi_E == 1 ? 1 : 0))
            throw std::logic_error("t_contribution: unexpected order at the ramified prime over 2");
        for (size_t i = 0; i < es.size(); ++i) {
            if (&ld == &P) {
                if (ld.sp.type_in_F == FSplit::Split && (int)i == which) continue;
                if (ld.sp.type_in_F != FSplit::Split) continue;
            }
            long r = rho_local(es[i], ld.sp.chi_E);
            (ld.p == 2 ? rho_two : rho_odd) *= r;
        }
    }
    if (rho_odd * rho_two == 0) return out;

    long ordP = (P.sp.type_in_F == FSplit::Split) ? P.vals[size_t(which)] : P.vals[0];
    if (out.p_is_pt) ordP -= 2;
    out.weight = make_ratio(1 + ordP, 2);
    if (out.p_is_pt) out.weight += Rat(1, 3);
    out.rho_odd = rho_odd;
    out.rho_two = rho_two;
    out.zero = false;
    return out;
}

Rat case_kappa(int case_id) {
    switch (case_id) {
        case 1: return Rat(6);
        case 2: return Rat(1);
        case 3: return Rat(2);
        case 4: return Rat(1, 2);
        case 5: return Rat(2);
    }
    throw std::logic_error("case_kappa");
}

Rat constant_two_exponent(const Int& d1, const Int& d2, int case_id) {
    if (case_id != 4 && case_id != 5) return Rat(0);
    ClassData c1 = class_data(d1), c2 = class_data(d2);
    long lead = (case_id == 4) ? 8 : 32;
    return make_ratio(Int(lead * c1.h * c2.h), Int(c1.w * c2.w));
}

} // namespace

ExponentMap theorem14_exponents(const Int& d1in, const Int& d2in) {
    auto [d1, d2] = canonical_order(d1in, d2in);
    CaseTag tag = case_tag(d1, d2);
    ExponentMap total;
    for (const auto& t : enumerate_t(d1, d2)) {
        TContribution c = t_contribution(t, d1, d2, tag.case_id);
        if (c.zero) continue;
        total[c.p] += case_kappa(tag.case_id) * c.weight * Rat(c.rho_odd * c.rho_two) * Rat(c.f);
    }
    Rat c2 = constant_two_exponent(d1, d2, tag.case_id);
    if (c2 != 0) total[Int(2)] += c2;
    for (auto it = total.begin(); it != total.end();)
        it = (it->second == 0) ? total.erase(it) : std::next(it);
    return total;
}

FactoredInteger theorem14(const Int& d1, const Int& d2) {
    ExponentMap em = theorem14_exponents(d1, d2);
    FactoredInteger out = FactoredInteger::one();
    for (const auto& [p, e] : em) {
        if (!is_rat_integer(e))
            throw std::logic_error("theorem14: non-integral exponent at p=" + p.get_str() +
                                   " (" + e.get_str() + ")");
        long ei = (long)Int(e.get_num()).get_si();
        if (ei < 0) throw std::logic_error("theorem14: negative exponent");
        if (ei != 0) out.factors[p] = ei;
    }
    return out;
}

LogContribution a_coefficient(const RealQuadElement& t, const Int& d1in, const Int& d2in) {
    auto [d1, d2] = canonical_order(d1in, d2in);
    CaseTag tag = case_tag(d1, d2);
    TContribution c = t_contribution(t, d1, d2, tag.case_id);
    LogContribution lc{Int(0), Rat(0), t.m};
    if (c.zero) return lc;

    // Product of the normalized local Whittaker values at the primes over 2
    // (excluding the contributing prime); the -4 is the archimedean pair
    // (2i)^2. Away from 2 and the contributor only the ideal counts remain.
    long D8 = mod8(d1 * d2);
    Rat factor_at_2;
    if (c.p_is_pt) {
        // derivative case: chi(p_t) = -1, L_{p_t}(1,chi) = 2/3, conjugate
        // prime contributes (1/2) L(1,chi) = 1/3
        factor_at_2 = Rat(1, 2) * (Rat(c.ord_pt - 1) + Rat(2, 3)) * Rat(1, 3);
    } else if (D8 == 1) {
        int chi2 = kronecker(d1, Int(2));
        if (chi2 == 1)
            factor_at_2 = Rat(rho_local(c.ord_pt - 2, 1)) * Rat(1); // W2(p_t) * W2(conj), L = 2
        else
            factor_at_2 = Rat(rho_local(c.ord_pt - 2, -1)) * Rat(1, 3); // L = 2/3
    } else if (D8 == 5) {
        factor_at_2 = Rat(1, 3); // (1/4) L(1,chi), chi = +1 at the inert prime, L = 4/3
    } else {
        const Int& dOdd = (d1 % 2 != 0) ? d1 : d2;
        factor_at_2 = (kronecker(dOdd, Int(2)) == 1) ? Rat(1, 2) : Rat(1, 6); // (1/4) L
    }

    Rat weight = c.p_is_pt ? Rat(1) : c.weight; // the derivative bracket carries the p_t weight
    lc.p = c.p;
    lc.coeff = Rat(-4) * weight * Rat(c.rho_odd) * factor_at_2 * Rat(c.f);
    return lc;
}

Rat a0_phi(const Int& d1in, const Int& d2in, int j) {
    // values as multiples of Lambda(0,chi) * log 2, from the constant-term
    // lemmas; the swapped order is reached through the coordinate relabel
    // e2 <-> e3, i.e. mu_1<->mu_12, mu_3<->mu_4, mu_7<->mu_10.
    static const int valid[] = {1, 2, 3, 4, 6, 7, 9, 10, 12};
    if (std::find(std::begin(valid), std::end(valid), j) == std::end(valid))
        throw std::invalid_argument("a0_phi: j not in the constant-term index list");
    long r1 = mod8(d1in), r2 = mod8(d2in);
    // the constant-term lemmas are stated for (5,5), (5,even), (1,*); the
    // other orders go through the coordinate swap
    bool swapped = false;
    long a = r1, b = r2;
    if (a == 0 || a == 4 || (a == 5 && b == 1)) { std::swap(a, b); swapped = true; }
    if (swapped) {
        switch (j) {
            case 1: j = 12; break;
            case 12: j = 1; break;
            case 3: j = 4; break;
            case 4: j = 3; break;
            case 7: j = 10; break;
            case 10: j = 7; break;
            default: break;
        }
    }
    if (j == 6) return Rat(0);
    if (a == 5 && b == 5) return Rat(0);
    if (a == 5 && b == 4)
        return (j == 1 || j == 7 || j == 9) ? Rat(-1, 3) : Rat(0);
    if (a == 5 && b == 0)
        return (j == 2 || j == 4 || j == 12) ? Rat(-1, 3) : Rat(0);
    if (a == 1 && b == 5)
        return (j == 4 || j == 7) ? Rat(0) : Rat(-2, 3);
    if (a == 1 && b == 0) {
        if (j == 4 || j == 7) return Rat(0);
        if (j == 2 || j == 12) return Rat(-1);
        return Rat(-1, 2);
    }
    if (a == 1 && b == 4) {
        if (j == 4 || j == 7) return Rat(0);
        if (j == 1 || j == 9) return Rat(-1);
        return Rat(-1, 2);
    }
    if (a == 1 && b == 1)
        return (j == 1 || j == 2 || j == 9 || j == 12) ? Rat(-1) : Rat(0);
    throw std::logic_error("a0_phi: unhandled residue pattern");
}

A0Constants a0_constants(const Int& d1, const Int& d2) {
    require_pair(d1, d2);
    ClassData c1 = class_data(d1), c2 = class_data(d2);
    Rat lambda0 = make_ratio(Int(4 * c1.h * c2.h), Int(c1.w * c2.w));
    auto a0 = [&](int j) { return a0_phi(d1, d2, j) * lambda0; };
    A0Constants out;
    out.comb1 = Rat(8) * (a0(2) - a0(3) - a0(4) - a0(6) - a0(7) + a0(9) - a0(10));
    out.comb2 = a0(2) - a0(3) + a0(4) - a0(6) - a0(10) + a0(12);
    out.comb3 = a0(1) - a0(3) - a0(6) + a0(7) + a0(9) - a0(10);
    return out;
}

ExponentMap bky_assembly_exponents(const Int& d1in, const Int& d2in) {
    auto [d1, d2] = canonical_order(d1in, d2in);
    require_pair(d1, d2);
    ClassData c1 = class_data(d1), c2 = class_data(d2);
    CaseTag tag = case_tag(d1, d2);
    Rat pref = Rat(-c1.r * c2.r) / Rat(2 * tag.delta_D);

    ExponentMap total;
    for (const auto& t : enumerate_t(d1, d2)) {
        LogContribution lc = a_coefficient(t, d1, d2);
        if (lc.zero()) continue;
        total[lc.p] += pref * lc.coeff;
    }
    total[Int(2)] += pref * a0_constants(d1, d2).comb1;
    for (auto it = total.begin(); it != total.end();)
        it = (it->second == 0) ? total.erase(it) : std::next(it);
    return total;
}

FactoredInteger table1_norm(const Int& d, Table1Kind which) {
    if (!is_fundamental(d) || d >= -4)
        throw std::invalid_argument("table1_norm: need fundamental d < -4");
    long r = mod8(d);
    // two coprime auxiliaries in the residue class the proof uses
    std::vector<Int> aux;
    std::vector<long> pool_5 = {-3, -11, -19, -35, -43, -51, -59, -67};
    std::vector<long> pool_1 = {-7, -15, -23, -31, -39, -47, -55, -71};
    const auto& pool = (r == 1) ? pool_1 : pool_5;
    for (long cand : pool) {
        Int a(cand);
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        if (g == 1 && is_fundamental(a)) aux.push_back(a);
        if (aux.size() == 2) break;
    }
    if (aux.size() < 2) throw std::logic_error("table1_norm: auxiliary pool exhausted");

    auto route = [&](const Int& dAux, bool one_minus) -> Rat {
        ClassData cAux = class_data(dAux), cd = class_data(d);
        long deltad = (d % 2 == 0) ? 2 : 1;
        A0Constants a0 = a0_constants(dAux, d);
        Rat comb = one_minus ? a0.comb3 : a0.comb2;
        long hAux2 = cAux.h2;
        return Rat(-cAux.r * cd.r) / Rat(4 * deltad * hAux2) * Rat(8) * comb;
    };

    auto exponent = [&](bool one_minus) -> Rat {
        Rat k1 = route(aux[0], one_minus);
        Rat k2 = route(aux[1], one_minus);
        if (k1 != k2) throw std::logic_error("table1_norm: auxiliary routes disagree");
        return k1;
    };

    Rat k;
    switch (which) {
        case Table1Kind::Lambda: k = exponent(false); break;
        case Table1Kind::OneMinusLambda: k = exponent(true); break;
        case Table1Kind::InvLambda: k = -exponent(false); break;
        case Table1Kind::LambdaOverLambdaMinusOne: k = exponent(false) - exponent(true); break;
    }
    if (!is_rat_integer(k)) throw std::logic_error("table1_norm: non-integral exponent");
    long ki = (long)Int(k.get_num()).get_si();
    FactoredInteger out = FactoredInteger::one();
    if (ki != 0) out.factors[Int(2)] = ki;
    return out;
}

int nset_cardinality(const Int& d1, const Int& d2) {
    require_pair(d1, d2);
    if (d1 >= -4 || d2 >= -4) throw std::invalid_argument("nset_cardinality: need d1, d2 < -4");
    long r1 = mod8(d1), r2 = mod8(d2);
    if (r1 == 5 && r2 == 5) return 1;
    if (r1 == 5 || r2 == 5) return 2;
    if (r1 == 1 && r2 == 1) return 4;
    return 5;
}

Conjecture61Result conjecture61_check(const Int& d1, const Int& d2) {
    require_pair(d1, d2);
    if (mod8(d1) != 5 || mod8(d2) != 5)
        throw std::invalid_argument("conjecture61_check: both discriminants must be 5 mod 8");
    Int D = d1 * d2;
    Int mmax;
    mpz_sqrt(mmax.get_mpz_t(), D.get_mpz_t());
    Int sum(0);
    for (Int m = -mmax; m <= mmax; ++m) {
        if (m * m >= D) continue;
        if (m % 2 == 0) continue;
        Int m4 = m % 4;
        if (m4 < 0) m4 += 4;
        if (m4 != 3) continue; // m = -1 mod 4
        long v = valuation(Int(m * m - D), Int(2));
        if (v % 2 == 0) continue;
        RealQuadElement t(m, D);
        std::vector<LocalData> prof = local_profile(t, d1, d2);
        long rho = 1;
        for (const auto& ld : prof) {
            std::vector<long> es = ld.vals;
            if (ld.p == 2) {
                if (ld.sp.type_in_F != FSplit::Split)
                    throw std::logic_error("conjecture61_check: 2 must split");
                // t p_t^{-1} at the prime containing t
                if (es[0] >= 1) es[0] -= 1;
                else if (es[1] >= 1) es[1] -= 1;
                else throw std::logic_error("conjecture61_check: t not above 2");
            }
            for (long e : es) rho *= rho_local(e, ld.sp.chi_E);
        }
        sum += rho;
    }
    return {sum, sum % 3 == 0};
}

} // namespace lamcm
