#include "lamcm/minpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "lamcm/cmfields.hpp"
#include "lamcm/factorint.hpp"
#include "lamcm/lll.hpp"
#include "lamcm/qseries.hpp"

namespace lamcm {

namespace {

// round a BigFloat scaled by 2^scale_exp to an integer
Int scaled_round(const BigFloat& x, long scale_exp) {
    return x.mul_2exp(scale_exp).round();
}

// one recovery attempt at fixed precision; empty polynomial on failure
IntPolynomial recover_at(const BigComplexValue& z, long degree, long bits) {
    long scale = bits - 16;
    long n = degree;
    std::vector<std::vector<Int>> rows;
    BigComplexValue p = BigComplexValue::exact(Rat(1), bits);
    std::vector<BigComplexValue> powers;
    for (long i = 0; i <= n; ++i) {
        powers.push_back(p);
        p = p * z;
    }
    for (long i = 0; i <= n; ++i) {
        std::vector<Int> row(size_t(n + 3), Int(0));
        row[size_t(i)] = 1;
        row[size_t(n + 1)] = scaled_round(powers[size_t(i)].re, scale);
        row[size_t(n + 2)] = scaled_round(powers[size_t(i)].im, scale);
        rows.push_back(std::move(row));
    }
    lll_reduce(rows);

    // shortest row whose polynomial part is nonzero
    for (const auto& r : rows) {
        std::vector<Int> coeffs(r.begin(), r.begin() + (n + 1));
        IntPolynomial P{coeffs};
        if (P.is_zero()) continue;
        // residual check |P(z)| < 2^(-bits/4)
        BigComplexValue v = BigComplexValue::exact(Rat(0), bits);
        for (long i = P.degree(); i >= 0; --i)
            v = v * z + BigComplexValue::exact(Rat(P.coeffs[size_t(i)]), bits);
        if (v.mag_exp2() > -bits / 4) continue;
        P = P.primitive_part().positive_leading();
        return P;
    }
    return IntPolynomial();
}

} // namespace

IntPolynomial minimal_polynomial(const Int& d, int variant, long bits_hint) {
    if (!is_fundamental(d) || d > -3)
        throw std::invalid_argument("minimal_polynomial: d must be a fundamental discriminant <= -3");
    long degree = lambda_degree_prediction(d);
    long bits = std::max({bits_hint, 256L, 32 * degree});
    IntPolynomial last;
    while (bits <= (1L << 16)) {
        BigComplexValue lam = lambda_at_tau0(d, bits);
        BigComplexValue z = variant_apply(variant, lam);
        IntPolynomial P = recover_at(z, degree, bits);
        if (!P.is_zero() && P.degree() == degree) {
            if (!last.is_zero() && P == last) return P;
            last = P;
        } else {
            last = IntPolynomial();
        }
        bits *= 2;
    }
    throw std::runtime_error("minimal_polynomial: no stable relation found at maximum precision (d=" +
                             d.get_str() + ", variant=" + std::to_string(variant) + ")");
}

Rat norm_diff_rational(const IntPolynomial& P1, const IntPolynomial& P2) {
    Int r = resultant(P1, P2);
    Rat denom = pow_rat(Rat(P1.leading()), P2.degree()) * pow_rat(Rat(P2.leading()), P1.degree());
    return Rat(r) / denom;
}

FactoredInteger norm_diff_oracle(const Int& d1, const Int& d2, int variant_j) {
    Int g;
    mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
    if (g != 1) throw std::invalid_argument("norm_diff_oracle: discriminants must be coprime");
    IntPolynomial P1 = minimal_polynomial(d1, 1);
    IntPolynomial P2 = minimal_polynomial(d2, variant_j);
    Rat nd = norm_diff_rational(P1, P2);
    if (!is_rat_integer(nd) && variant_j == 1)
        throw std::logic_error("norm_diff_oracle: non-integral norm for the integral variant");
    return factor_rational(nd).abs();
}

FactoredInteger norm_lambda_oracle(const Int& d, LambdaNormKind which) {
    int variant = 1;
    switch (which) {
        case LambdaNormKind::Lambda: variant = 1; break;
        case LambdaNormKind::OneMinusLambda: variant = 2; break;
        case LambdaNormKind::InvLambda: variant = 3; break;
        case LambdaNormKind::LambdaOverLambdaMinusOne: variant = 6; break;
    }
    IntPolynomial P = minimal_polynomial(d, variant);
    if (P.constant() == 0) throw std::logic_error("norm_lambda_oracle: zero constant term");
    return factor_rational(Rat(P.constant()) / Rat(P.leading())).abs();
}

std::set<FactoredInteger> norm_set_oracle(const Int& d1, const Int& d2) {
    if (d1 >= -4 || d2 >= -4)
        throw std::invalid_argument("norm_set_oracle: requires d1, d2 < -4");
    Int g;
    mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
    if (g != 1) throw std::invalid_argument("norm_set_oracle: discriminants must be coprime");

    IntPolynomial P1 = minimal_polynomial(d1, 1);
    long a1 = P1.degree(); // = h(k1,2) or 2h(k1,2)
    // |N(lambda_1)|, |N(1-lambda_1)| from P1
    Rat n_l1 = abs(Rat(P1.constant()) / Rat(P1.leading()));
    Rat n_1ml1 = abs(P1(Rat(1)) / Rat(P1.leading()));

    std::set<FactoredInteger> out;
    for (int i = 1; i <= 6; ++i) {
        IntPolynomial P2 = minimal_polynomial(d2, i);
        long a2 = P2.degree();
        Rat nd = abs(norm_diff_rational(P1, P2));
        Rat n_l2 = abs(Rat(P2.constant()) / Rat(P2.leading()));
        Rat n_1ml2 = abs(P2(Rat(1)) / Rat(P2.leading()));
        out.insert(factor_rational(nd).abs());
        out.insert(factor_rational(nd / (pow_rat(n_l1, a2) * pow_rat(n_l2, a1))).abs());
        out.insert(factor_rational(nd / (pow_rat(n_1ml1, a2) * pow_rat(n_1ml2, a1))).abs());
    }
    return out;
}

FactoredInteger gz_jnorm_oracle(const Int& d1, const Int& d2, long bits) {
    auto js = [&](const Int& d) {
        std::vector<BigComplexValue> v;
        for (const auto& f : reduced_forms(d)) {
            BigComplexValue tau = cm_tau(f, d, bits);
            v.push_back(j_from_lambda(lambda_at(tau, bits)));
        }
        return v;
    };
    std::vector<BigComplexValue> j1 = js(d1), j2 = js(d2);
    BigComplexValue prod = BigComplexValue::exact(Rat(1), bits);
    for (const auto& a : j1)
        for (const auto& b : j2) prod = prod * (a - b);
    if (prod.err_exp > -8)
        throw std::domain_error("gz_jnorm_oracle: precision too low to certify the rounding");
    Int n = prod.re.round();
    BigComplexValue diff = prod - BigComplexValue::exact(Rat(n), bits);
    if (diff.mag_exp2() > prod.err_exp + 2)
        throw std::domain_error("gz_jnorm_oracle: rounding residual too large");
    return factor_integer(n).abs();
}

} // namespace lamcm
