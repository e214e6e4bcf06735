#include "lamcm/weilrep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lamcm/qseries.hpp"

namespace lamcm {

std::array<std::array<int, 4>, kWeilDim> weil_classes() {
    // row-major [[x1,x2],[x3,x4]], entries twice the half-integer residues
    return {{
        {0, 0, 0, 0}, // mu_0
        {0, 0, 1, 1}, // mu_1
        {0, 0, 1, 0}, // mu_2
        {0, 0, 0, 1}, // mu_3
        {1, 0, 0, 0}, // mu_4
        {1, 0, 0, 1}, // mu_5
        {0, 1, 0, 0}, // mu_6
        {1, 1, 0, 0}, // mu_7
        {0, 1, 1, 0}, // mu_8
        {1, 1, 1, 1}, // mu_9
        {0, 1, 0, 1}, // mu_10
        {0, 1, 1, 1}, // mu_11
        {1, 0, 1, 0}, // mu_12
        {1, 1, 1, 0}, // mu_13
        {1, 0, 1, 1}, // mu_14
        {1, 1, 0, 1}  // mu_15
    }};
}

int weil_twice_Q(int j) {
    auto m = weil_classes()[size_t(j)];
    // Q = 2(x1 x4 - x2 x3); with doubled entries: (m1 m4 - m2 m3)/2, mod 1
    int num = m[0] * m[3] - m[1] * m[2]; // in halves
    return ((num % 2) + 2) % 2;
}

int weil_twice_pairing(int i, int j) {
    auto a = weil_classes()[size_t(i)], b = weil_classes()[size_t(j)];
    // (x,y) = 2(y1 x4 + x1 y4 - y2 x3 - x2 y3); doubled entries give
    // quarters*4 = (...)/2 in halves
    int num = b[0] * a[3] + a[0] * b[3] - b[1] * a[2] - a[1] * b[2];
    return ((num % 2) + 2) % 2;
}

WeilMatrix weil_identity() {
    WeilMatrix m{};
    for (int i = 0; i < kWeilDim; ++i)
        for (int j = 0; j < kWeilDim; ++j) m[size_t(i)][size_t(j)] = (i == j) ? Rat(1) : Rat(0);
    return m;
}

WeilMatrix weil_T() {
    WeilMatrix m{};
    for (int i = 0; i < kWeilDim; ++i)
        for (int j = 0; j < kWeilDim; ++j) m[size_t(i)][size_t(j)] = Rat(0);
    for (int j = 0; j < kWeilDim; ++j)
        m[size_t(j)][size_t(j)] = (weil_twice_Q(j) == 0) ? Rat(1) : Rat(-1); // e(Q(mu))
    return m;
}

WeilMatrix weil_S() {
    WeilMatrix m{};
    for (int i = 0; i < kWeilDim; ++i)
        for (int j = 0; j < kWeilDim; ++j) {
            Rat e = (weil_twice_pairing(i, j) == 0) ? Rat(1) : Rat(-1); // e(-(mu,nu))
            m[size_t(i)][size_t(j)] = e / 4;                            // sigma/sqrt(16), sigma = 1
        }
    return m;
}

WeilMatrix weil_mul(const WeilMatrix& a, const WeilMatrix& b) {
    WeilMatrix r{};
    for (int i = 0; i < kWeilDim; ++i)
        for (int j = 0; j < kWeilDim; ++j) {
            Rat s(0);
            for (int k = 0; k < kWeilDim; ++k) s += a[size_t(i)][size_t(k)] * b[size_t(k)][size_t(j)];
            r[size_t(i)][size_t(j)] = s;
        }
    return r;
}

WeilVector weil_apply(const WeilMatrix& a, const WeilVector& v) {
    WeilVector r{};
    for (int i = 0; i < kWeilDim; ++i) {
        Rat s(0);
        for (int k = 0; k < kWeilDim; ++k) s += a[size_t(i)][size_t(k)] * v[size_t(k)];
        r[size_t(i)] = s;
    }
    return r;
}

WeilMatrix weil_inverse(const WeilMatrix& a) {
    // Gauss-Jordan over Q
    WeilMatrix m = a, inv = weil_identity();
    for (int col = 0; col < kWeilDim; ++col) {
        int piv = -1;
        for (int r = col; r < kWeilDim; ++r)
            if (m[size_t(r)][size_t(col)] != 0) { piv = r; break; }
        if (piv < 0) throw std::domain_error("weil_inverse: singular matrix");
        std::swap(m[size_t(piv)], m[size_t(col)]);
        std::swap(inv[size_t(piv)], inv[size_t(col)]);
        Rat d = m[size_t(col)][size_t(col)];
        for (int j = 0; j < kWeilDim; ++j) {
            m[size_t(col)][size_t(j)] /= d;
            inv[size_t(col)][size_t(j)] /= d;
        }
        for (int r = 0; r < kWeilDim; ++r) {
            if (r == col || m[size_t(r)][size_t(col)] == 0) continue;
            Rat f = m[size_t(r)][size_t(col)];
            for (int j = 0; j < kWeilDim; ++j) {
                m[size_t(r)][size_t(j)] -= f * m[size_t(col)][size_t(j)];
                inv[size_t(r)][size_t(j)] -= f * inv[size_t(col)][size_t(j)];
            }
        }
    }
    return inv;
}

WeilVector constant_form_f(int j) {
    auto v = [](std::initializer_list<std::pair<int, int>> terms) {
        WeilVector w{};
        for (auto& t : w) t = Rat(0);
        for (auto [idx, c] : terms) w[size_t(idx)] = Rat(c);
        return w;
    };
    switch (j) {
        case 0: return v({{0, 1}, {9, 1}, {10, 1}, {12, 1}});
        case 1: return v({{1, 1}, {7, 1}, {10, -1}, {12, -1}});
        case 2: return v({{2, 1}, {6, -1}, {7, -1}, {12, 1}});
        case 3: return v({{3, 1}, {6, 1}, {9, -1}, {12, -1}});
        case 4: return v({{4, 1}, {6, 1}, {7, 1}, {9, -1}, {10, -1}, {12, -1}});
    }
    throw std::invalid_argument("constant_form_f: j in 0..4");
}

std::vector<WeilVector> constant_forms_basis() {
    // kernel of rows of (T - I) and (S - I), by elimination on the 32x16 system
    WeilMatrix T = weil_T(), S = weil_S();
    std::vector<std::array<Rat, kWeilDim>> rows;
    for (int i = 0; i < kWeilDim; ++i) {
        std::array<Rat, kWeilDim> r1{}, r2{};
        for (int j = 0; j < kWeilDim; ++j) {
            r1[size_t(j)] = T[size_t(i)][size_t(j)] - (i == j ? Rat(1) : Rat(0));
            r2[size_t(j)] = S[size_t(i)][size_t(j)] - (i == j ? Rat(1) : Rat(0));
        }
        rows.push_back(r1);
        rows.push_back(r2);
    }
    // row echelon
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < kWeilDim && rank < rows.size(); ++col) {
        size_t piv = rows.size();
        for (size_t r = rank; r < rows.size(); ++r)
            if (rows[r][size_t(col)] != 0) { piv = r; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rat d = rows[rank][size_t(col)];
        for (int j = 0; j < kWeilDim; ++j) rows[rank][size_t(j)] /= d;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][size_t(col)] == 0) continue;
            Rat f = rows[r][size_t(col)];
            for (int j = 0; j < kWeilDim; ++j) rows[r][size_t(j)] -= f * rows[rank][size_t(j)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    // free columns give the kernel basis
    std::vector<WeilVector> kernel;
    for (int col = 0; col < kWeilDim; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        WeilVector v{};
        for (auto& x : v) x = Rat(0);
        v[size_t(col)] = Rat(1);
        for (size_t r = 0; r < rank; ++r) v[size_t(pivot_col[r])] = -rows[r][size_t(col)];
        kernel.push_back(v);
    }
    if (kernel.size() != 5)
        throw std::logic_error("constant_forms_basis: invariant subspace has dimension " +
                               std::to_string(kernel.size()) + ", expected 5");
    // verify the listed basis lies in the kernel and is independent, then
    // return the listed one
    WeilMatrix T2 = weil_T(), S2 = weil_S();
    std::vector<WeilVector> listed;
    for (int j = 0; j < 5; ++j) {
        WeilVector f = constant_form_f(j);
        WeilVector tf = weil_apply(T2, f), sf = weil_apply(S2, f);
        for (int i = 0; i < kWeilDim; ++i)
            if (tf[size_t(i)] != f[size_t(i)] || sf[size_t(i)] != f[size_t(i)])
                throw std::logic_error("constant_forms_basis: listed basis vector not invariant");
        listed.push_back(f);
    }
    return listed;
}

namespace {

// transversal words over the generators, letters applied left to right;
// 'T' acts on lambda as variant 2, 'S' as variant 3
int word_variant(const std::string& w) {
    int v = 1;
    for (char ch : w) {
        int g = (ch == 'T') ? 2 : 3;
        v = variant_compose(v, g);
    }
    return v;
}

WeilMatrix word_matrix(const std::string& w) {
    WeilMatrix m = weil_identity();
    for (char ch : w) m = weil_mul(m, (ch == 'T') ? weil_T() : weil_S());
    return m;
}

// SL2(Z/2) image of a word, to check transversal completeness
std::array<int, 4> word_mod2(const std::string& w) {
    std::array<int, 4> m{1, 0, 0, 1};
    auto mul = [](std::array<int, 4> a, std::array<int, 4> b) {
        return std::array<int, 4>{(a[0] * b[0] + a[1] * b[2]) % 2, (a[0] * b[1] + a[1] * b[3]) % 2,
                                  (a[2] * b[0] + a[3] * b[2]) % 2, (a[2] * b[1] + a[3] * b[3]) % 2};
    };
    for (char ch : w) {
        std::array<int, 4> g = (ch == 'T') ? std::array<int, 4>{1, 1, 0, 1}
                                           : std::array<int, 4>{0, 1, 1, 0}; // -1 = 1 mod 2
        m = mul(m, g);
    }
    return m;
}

VectorQSeries induce_with_transversal(const std::vector<std::string>& words, long trunc_half) {
    // completeness check: six distinct images in SL2(Z/2)
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            if (word_mod2(words[i]) == word_mod2(words[j]))
                throw std::logic_error("induce_f: transversal words collide mod 2");

    // rational coefficient of each variant series in each component
    std::array<std::array<Rat, 7>, kWeilDim> coef{};
    for (auto& row : coef)
        for (auto& x : row) x = Rat(0);
    for (const auto& w : words) {
        int var = word_variant(w);
        WeilMatrix inv = weil_inverse(word_matrix(w));
        WeilVector e5{};
        for (auto& x : e5) x = Rat(0);
        e5[5] = Rat(1);
        WeilVector vec = weil_apply(inv, e5);
        for (int i = 0; i < kWeilDim; ++i) coef[size_t(i)][size_t(var)] += vec[size_t(i)];
    }

    // assemble: f = -8 sum lambda|gamma (omega^-1 phi_5) - 4f0 + 4f1 + 4f2 - 4f3 - 4f4
    std::array<HalfQSeries, 7> variant_series;
    for (int v = 1; v <= 6; ++v) variant_series[size_t(v)] = lambda_variant_series(v, trunc_half);
    WeilVector cst{};
    for (auto& x : cst) x = Rat(0);
    const int sign[5] = {-4, 4, 4, -4, -4};
    for (int j = 0; j < 5; ++j) {
        WeilVector f = constant_form_f(j);
        for (int i = 0; i < kWeilDim; ++i) cst[size_t(i)] += Rat(sign[j]) * f[size_t(i)];
    }

    VectorQSeries out;
    for (int i = 0; i < kWeilDim; ++i) {
        HalfQSeries s(-1, trunc_half);
        for (int v = 1; v <= 6; ++v) {
            if (coef[size_t(i)][size_t(v)] == 0) continue;
            s = s + Rat(-8) * coef[size_t(i)][size_t(v)] * variant_series[size_t(v)];
        }
        s = s + HalfQSeries::constant(cst[size_t(i)], trunc_half);
        out.comp[size_t(i)] = s.truncated(trunc_half);
        // support must respect the T-eigenvalue: exponents = -Q(mu) mod 1
        int parity = weil_twice_Q(i); // exponent halves are odd iff Q = 1/2
        for (long k = out.comp[size_t(i)].min_half(); k < out.comp[size_t(i)].trunc_half(); ++k)
            if (out.comp[size_t(i)].at(k) != 0 && (((k % 2) + 2) % 2) != parity)
                throw std::logic_error("induce_f: component support violates the T-eigenvalue");
    }
    return out;
}

} // namespace

VectorQSeries induce_f(long trunc_half) {
    if (trunc_half < 10) trunc_half = 10;
    VectorQSeries a = induce_with_transversal({"", "T", "S", "ST", "TS", "TST"}, trunc_half);
    VectorQSeries b = induce_with_transversal({"", "T", "S", "TS", "STT", "TST"}, trunc_half);
    for (int i = 0; i < kWeilDim; ++i)
        if (!a.comp[size_t(i)].agrees(b.comp[size_t(i)]))
            throw std::logic_error("induce_f: transversal dependence detected");
    return a;
}

namespace {

// e(z) = exp(2 pi i z)
BigComplexValue cexp(const BigComplexValue& z) {
    long bits = z.bits;
    BigFloat two_pi = BigFloat::pi(bits) + BigFloat::pi(bits);
    BigFloat mod = (-(two_pi * z.im)).exp();
    auto [s, c] = (two_pi * z.re).sin_cos();
    BigComplexValue r(mod * c, mod * s, bits, 0);
    r.err_exp = std::max(z.err_exp + 3 + std::max(0L, r.mag_exp2()), r.mag_exp2() - bits) + 3;
    return r;
}

BigComplexValue rat_scale(const BigComplexValue& z, const Rat& c, long bits) {
    return z * BigComplexValue::exact(c, bits);
}

} // namespace

BigComplexValue borcherds_constant_product(const WeilVector& coeff, const BigComplexValue& z1,
                                           const BigComplexValue& z2, long trunc, long bits) {
    // exponents from the constant-form product expansion at the standard cusp
    auto cAt = [&](int j) { return coeff[size_t(j)]; };
    Rat a0 = cAt(0), a6 = cAt(6), a4 = cAt(4), a7 = cAt(7), a3 = cAt(3), a10 = cAt(10);
    for (const Rat& a : {a0, a6, a4, a7, a3, a10})
        if (!is_rat_integer(a)) throw std::invalid_argument("borcherds_constant_product: integer exponents required");
    Rat c1 = a0 + a6 + a4 + a7;
    Rat c2 = 2 * a0 + 2 * a6 - a4 - a7;

    BigComplexValue one = BigComplexValue::exact(Rat(1), bits);
    // C = 2^(a6/2)
    BigFloat C = BigFloat::from(Rat(2), bits);
    {
        // 2^(a6/2) = exp((a6/2) log 2)
        BigFloat l2 = C.log();
        BigFloat e = BigFloat::from(a6 / 2, bits);
        C = (e * l2).exp();
    }
    BigComplexValue prod(C, BigFloat::from(0.0, bits), bits, -bits + 8);
    // Weyl factor q1^(c1/48) q2^(c2/48)
    prod = prod * cexp(rat_scale(z1, c1 / 48, bits)) * cexp(rat_scale(z2, c2 / 48, bits));

    auto factor = [&](const BigComplexValue& z, const Rat& k, int sgn, const Rat& expo) {
        // (1 + sgn * q^k)^expo with q^k = e(k z)
        if (expo == 0) return;
        BigComplexValue qk = cexp(rat_scale(z, k, bits));
        BigComplexValue base = (sgn > 0) ? one + qk : one - qk;
        long e = (long)Int(expo.get_num()).get_si();
        prod = prod * base.pow(e);
    };
    for (long m = 1; m <= trunc; ++m) {
        factor(z2, Rat(m), -1, a0);
        factor(z2, Rat(m), +1, a6);
        factor(z2, make_ratio(2 * m - 1, 2), -1, a4);
        factor(z2, make_ratio(2 * m - 1, 2), +1, a7);
        factor(z1, Rat(m), -1, a0);
        factor(z1, Rat(m), +1, a6);
        factor(z1, make_ratio(2 * m - 1, 2), -1, a3);
        factor(z1, make_ratio(2 * m - 1, 2), +1, a10);
    }
    // tail: |log prod_tail| <= sum_{m > trunc} |a| |q|^(m-1/2); fold into err
    double y = std::min(z1.im.to_double(), z2.im.to_double());
    double decay = std::exp(-M_PI * y);
    double amax = 0;
    for (const Rat& a : {a0, a6, a4, a7, a3, a10}) amax = std::max(amax, std::abs(a.get_d()));
    double tail = 8.0 * amax * std::pow(decay, (double)(2 * trunc - 1)) / (1 - decay);
    long tail_exp = (tail > 0) ? (long)std::ceil(std::log2(tail)) + prod.mag_exp2() + 2 : -(1L << 30);
    prod.err_exp = std::max(prod.err_exp, tail_exp);
    return prod;
}

BigComplexValue borcherds_diff_product(const BigComplexValue& z1, const BigComplexValue& z2,
                                       long trunc, long bits) {
    double y1 = z1.im.to_double(), y2 = z2.im.to_double();
    if (!(y1 > y2 && y2 > 0.5))
        throw std::domain_error("borcherds_diff_product: need Im z1 > Im z2 > 1/2 (Weyl chamber)");

    VectorQSeries f = induce_f(2 * trunc + 2);
    BigComplexValue one = BigComplexValue::exact(Rat(1), bits);

    // mu classes with p_infty(mu) = diag(-m/2, n/2) mod M, keyed by parities
    // (m mod 2, n mod 2), with the sign e((mu, l')) attached
    struct Cls {
        int idx;
        int sign;
    };
    auto classes = [&](long m, long n) -> std::array<Cls, 2> {
        bool modd = ((m % 2) + 2) % 2 == 1, nodd = ((n % 2) + 2) % 2 == 1;
        if (!modd && !nodd) return {{{0, +1}, {6, -1}}};
        if (!modd && nodd) return {{{3, +1}, {10, -1}}};
        if (modd && !nodd) return {{{4, +1}, {7, -1}}};
        return {{{5, +1}, {15, -1}}};
    };

    auto coeff = [&](long twice_m, int idx) -> Rat {
        const HalfQSeries& s = f.comp[size_t(idx)];
        if (twice_m >= s.trunc_half())
            throw std::domain_error("borcherds_diff_product: truncation too small for the requested accuracy");
        if (twice_m < s.min_half()) return Rat(0);
        return s.at(twice_m);
    };

    // C * q1^(-1/2), C = -2^{c_f(0,mu_6)/2} = -1/16
    BigComplexValue prod = cexp(rat_scale(z1, Rat(-1, 2), bits));
    prod = rat_scale(prod, Rat(-1, 16), bits);

    double target = -(double)bits * std::log(2.0) - 8;
    auto negligible = [&](long m, long n) {
        // |q1^(n/2) q2^(m/2)| = exp(-pi (n y1 + m y2))
        return -M_PI * ((double)n * y1 + (double)m * y2) < target;
    };

    for (long n = 1;; ++n) {
        // the largest factor in this row sits at m = -n; once it is
        // negligible every deeper row is too
        if (-M_PI * (double)n * (y1 - y2) < target) break;
        for (long m = -n;; ++m) {
            if (m > 0 && negligible(m, n)) break;
            if (negligible(m, n)) continue;
            long twice_exponent = m * n; // 2 * (mn/2)
            for (const Cls& cl : classes(m, n)) {
                Rat c = coeff(twice_exponent, cl.idx);
                if (c == 0) continue;
                if (!is_rat_integer(c))
                    throw std::logic_error("borcherds_diff_product: non-integral product exponent");
                BigComplexValue w =
                    cexp(rat_scale(z1, make_ratio(n, 2), bits) + rat_scale(z2, make_ratio(m, 2), bits));
                BigComplexValue base = (cl.sign > 0) ? one - w : one + w;
                prod = prod * base.pow((long)Int(c.get_num()).get_si());
            }
        }
        if (n > 64) throw std::logic_error("borcherds_diff_product: row loop failed to terminate");
    }

    // n = 0 row: m > 0 factors in q2 only
    for (long m = 1;; ++m) {
        if (negligible(m, 0)) break;
        for (const Cls& cl : classes(m, 0)) {
            Rat c = coeff(0, cl.idx);
            if (c == 0) continue;
            BigComplexValue w = cexp(rat_scale(z2, make_ratio(m, 2), bits));
            BigComplexValue base = (cl.sign > 0) ? one - w : one + w;
            prod = prod * base.pow((long)Int(c.get_num()).get_si());
        }
        if (m > 4096) throw std::logic_error("borcherds_diff_product: column loop failed to terminate");
    }

    double tail = std::exp(target) * 4096.0;
    prod.err_exp = std::max(prod.err_exp, (long)std::ceil(std::log2(tail)) + prod.mag_exp2() + 4);
    return prod;
}

} // namespace lamcm
