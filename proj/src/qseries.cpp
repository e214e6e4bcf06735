#include "lamcm/qseries.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lamcm {

namespace {

// multiply s by (1 + sign * q^(kf/2))^e, e > 0, sparse binomial factor
HalfQSeries mul_binomial_pow(const HalfQSeries& s, long kf, int sign, long e) {
    HalfQSeries f(0, s.trunc_half() - std::min(s.min_half(), 0L) + 1);
    Int binom(1);
    for (long j = 0; j * kf < f.trunc_half(); ++j) {
        if (j > 0) binom = binom * (e - j + 1) / j;
        Rat c(binom);
        if (sign < 0 && (j % 2 == 1)) c = -c;
        if (j * kf < f.trunc_half()) f.set(j * kf, c);
        if (j >= e) break;
    }
    return s * f;
}

// prod over factors (1 + sign q^(k/2))^8 with k = step, step+inc, ... below cap
HalfQSeries eta_like_product(long start, long inc, int sign, long pow8, long trunc_rel) {
    HalfQSeries u = HalfQSeries::constant(Rat(1), trunc_rel);
    for (long k = start; k < trunc_rel; k += inc) u = mul_binomial_pow(u, k, sign, pow8).truncated(trunc_rel);
    return u;
}

} // namespace

HalfQSeries lambda_series(long trunc_half) {
    if (trunc_half < 1) throw std::invalid_argument("lambda_series: need trunc >= 1/2");
    long rel = trunc_half + 1; // relative precision after the q^(-1/2) shift
    HalfQSeries num = eta_like_product(1, 2, -1, 8, rel); // prod (1-q^(n-1/2))^8
    HalfQSeries den = eta_like_product(2, 2, +1, 8, rel); // prod (1+q^n)^8
    HalfQSeries u = (num * den.inverse()).truncated(rel);
    HalfQSeries r = (Rat(-1, 16) * u).shifted(-1);
    if (!check_growth_envelope(r)) throw std::logic_error("lambda_series: growth envelope violated");
    return r.truncated(trunc_half);
}

HalfQSeries one_minus_lambda_series(long trunc_half) {
    if (trunc_half < 1) throw std::invalid_argument("one_minus_lambda_series: need trunc >= 1/2");
    long rel = trunc_half + 1;
    HalfQSeries num = eta_like_product(1, 2, +1, 8, rel); // prod (1+q^(n-1/2))^8
    HalfQSeries den = eta_like_product(2, 2, +1, 8, rel);
    HalfQSeries u = (num * den.inverse()).truncated(rel);
    HalfQSeries r = (Rat(1, 16) * u).shifted(-1);
    if (!check_growth_envelope(r)) throw std::logic_error("one_minus_lambda: growth envelope violated");
    return r.truncated(trunc_half);
}

HalfQSeries lambda_variant_series(int variant, long trunc_half) {
    HalfQSeries lam = lambda_series(trunc_half + 3); // slack for reciprocals
    HalfQSeries one = HalfQSeries::constant(Rat(1), lam.trunc_half() + 2);
    HalfQSeries r;
    switch (variant) {
        case 1: r = lam; break;
        case 2: r = one - lam; break;
        case 3: r = lam.inverse(); break;
        case 4: r = (one - lam).inverse(); break;
        case 5: r = one - lam.inverse(); break;             // (x-1)/x
        case 6: r = (one - lam.inverse()).inverse(); break; // x/(x-1) = 1/variant5
        default: throw std::invalid_argument("lambda_variant_series: variant must be 1..6");
    }
    if (r.trunc_half() < trunc_half)
        throw std::domain_error("lambda_variant_series: truncation too small for reciprocal");
    r = r.truncated(trunc_half);
    if (!check_growth_envelope(r)) throw std::logic_error("lambda_variant: growth envelope violated");
    return r;
}

Rat variant_apply(int variant, const Rat& x) {
    switch (variant) {
        case 1: return x;
        case 2: return Rat(1) - x;
        case 3:
            if (x == 0) throw std::domain_error("variant 3: pole at 0");
            return Rat(1) / x;
        case 4:
            if (x == 1) throw std::domain_error("variant 4: pole at 1");
            return Rat(1) / (Rat(1) - x);
        case 5:
            if (x == 0) throw std::domain_error("variant 5: pole at 0");
            return (x - Rat(1)) / x;
        case 6:
            if (x == 1) throw std::domain_error("variant 6: pole at 1");
            return x / (x - Rat(1));
        default: throw std::invalid_argument("variant_apply: variant must be 1..6");
    }
}

BigComplexValue variant_apply(int variant, const BigComplexValue& x) {
    BigComplexValue one = BigComplexValue::exact(Rat(1), x.bits);
    switch (variant) {
        case 1: return x;
        case 2: return one - x;
        case 3: return one / x;
        case 4: return one / (one - x);
        case 5: return (x - one) / x;
        case 6: return x / (x - one);
        default: throw std::invalid_argument("variant_apply: variant must be 1..6");
    }
}

int variant_compose(int a, int b) {
    static const auto table = [] {
        std::array<std::array<int, 7>, 7> t{};
        const Rat p1(7, 3), p2(9, 5);
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) {
                Rat v1 = variant_apply(i, variant_apply(j, p1));
                Rat v2 = variant_apply(i, variant_apply(j, p2));
                int found = 0;
                for (int k = 1; k <= 6; ++k)
                    if (variant_apply(k, p1) == v1 && variant_apply(k, p2) == v2) { found = k; break; }
                if (!found) throw std::logic_error("variant_compose: closure failure");
                t[size_t(i)][size_t(j)] = found;
            }
        return t;
    }();
    if (a < 1 || a > 6 || b < 1 || b > 6) throw std::invalid_argument("variant_compose: 1..6");
    return table[size_t(a)][size_t(b)];
}

Rat j_from_lambda(const Rat& x) {
    if (x == 0 || x == 1) throw std::domain_error("j_from_lambda: pole at x in {0,1}");
    Rat a = Rat(1) - x + x * x;
    return Rat(256) * a * a * a / (x * x * (Rat(1) - x) * (Rat(1) - x));
}

BigComplexValue j_from_lambda(const BigComplexValue& x) {
    BigComplexValue one = BigComplexValue::exact(Rat(1), x.bits);
    BigComplexValue a = one - x + x * x;
    BigComplexValue c256 = BigComplexValue::exact(Rat(256), x.bits);
    return c256 * a * a * a / (x * x * (one - x) * (one - x));
}

HalfQSeries delta_series(long trunc_half) {
    if (trunc_half < 2) throw std::invalid_argument("delta_series: need trunc >= 1");
    long rel = trunc_half;
    HalfQSeries u = eta_like_product(2, 2, -1, 24, rel); // prod (1-q^n)^24
    HalfQSeries r = u.shifted(2).truncated(trunc_half);   // q * prod
    if (!check_growth_envelope(r)) throw std::logic_error("delta_series: growth envelope violated");
    return r;
}

Rat omega2_of_lambda(const Rat& x) {
    if (x == 0 || x == 1) throw std::domain_error("omega2: pole at x in {0,1}");
    return Rat(-16) / (x * (Rat(1) - x));
}

BigComplexValue omega2_of_lambda(const BigComplexValue& x) {
    BigComplexValue one = BigComplexValue::exact(Rat(1), x.bits);
    return BigComplexValue::exact(Rat(-16), x.bits) / (x * (one - x));
}

long growth_envelope_exp(long k) {
    if (k <= 0) return 24;
    return (long)std::ceil(8.0 * std::sqrt((double)k)) + 24;
}

bool check_growth_envelope(const HalfQSeries& s) {
    for (long k = s.min_half(); k < s.trunc_half(); ++k) {
        const Rat& c = s.at(k);
        if (c == 0) continue;
        // |num/den| <= 2^g  <=>  bits(num) - bits(den) <= g + 1
        long bn = (long)mpz_sizeinbase(c.get_num_mpz_t(), 2);
        long bd = (long)mpz_sizeinbase(c.get_den_mpz_t(), 2);
        if (bn - bd > growth_envelope_exp(k)) return false;
    }
    return true;
}

BigComplexValue eval_at(const HalfQSeries& s, const BigComplexValue& tau) {
    long bits = tau.bits;
    double y = tau.im.to_double();
    if (y <= 0) throw std::domain_error("eval_at: tau not in the upper half plane");

    BigComplexValue w = half_q(tau);
    // Horner over half-steps from the top
    BigComplexValue acc = BigComplexValue::exact(Rat(0), bits);
    for (long k = s.trunc_half() - 1; k >= s.min_half(); --k) {
        acc = acc * w;
        const Rat& c = s.at(k);
        if (c != 0) acc = acc + BigComplexValue::exact(c, bits);
    }
    acc = acc * w.pow(s.min_half());

    // tail bound: sum_{k>=T} 2^g(k) |w|^k, |w| = e^{-pi y}
    long T = s.trunc_half();
    double log2w = -M_PI * y / std::log(2.0);
    double ratio_exp = (T > 0 ? 8.0 / (2.0 * std::sqrt((double)T)) : 8.0) + log2w;
    if (ratio_exp > -0.15)
        throw std::domain_error("eval_at: Im(tau) too small for a rigorous tail bound at this truncation");
    double tail_exp = (double)growth_envelope_exp(T) + (double)T * log2w
                      - std::log2(1.0 - std::pow(2.0, ratio_exp));
    long tail = (long)std::ceil(tail_exp) + 1;
    acc.err_exp = std::max(acc.err_exp, tail) + 1;
    return acc;
}

} // namespace lamcm
