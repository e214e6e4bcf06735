#include "lamcm/cmfields.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "lamcm/qseries.hpp"

namespace lamcm {

bool is_fundamental(const Int& d) {
    if (d == 0 || d == 1) return false;
    Int m = d % 4;
    if (m < 0) m += 4;
    auto squarefree = [](Int n) {
        n = abs(n);
        for (Int p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    if (m == 1) return squarefree(d);
    if (m == 0) {
        Int q = d / 4;
        Int r = q % 4;
        if (r < 0) r += 4;
        return (r == 2 || r == 3) && squarefree(q);
    }
    return false;
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<ReducedForm> reduced_forms(const Int& d) {
    if (d >= 0) throw std::invalid_argument("reduced_forms: need d < 0");
    std::vector<ReducedForm> out;
    long amax = (long)std::sqrt(Int(abs(d)).get_d() / 3.0) + 1;
    for (long a = 1; a <= amax; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            Int num = Int(b) * b - d;
            if (num % (4 * a) != 0) continue;
            Int cc = num / (4 * a);
            if (cc < a) continue;
            long c = (long)cc.get_si();
            if (a == c && b < 0) continue; // b >= 0 when a == c
            out.push_back({a, b, c});
        }
    }
    return out;
}

ClassData class_data(const Int& d) {
    if (!is_fundamental(d) || d >= 0) throw std::invalid_argument("class_data: d must be a negative fundamental discriminant");
    ClassData cd{};
    cd.h = (long)reduced_forms(d).size();
    cd.w = (d == -3) ? 6 : (d == -4) ? 4 : 2;
    Int m8 = d % 8;
    if (m8 < 0) m8 += 8;
    if (m8 == 1) cd.r = 1;
    else if (m8 == 5) cd.r = 3;
    else cd.r = 2; // d = 0 mod 4
    long num = 2 * cd.r * cd.h;
    if (num % cd.w != 0) throw std::logic_error("class_data: ray class relation not integral");
    cd.h2 = num / cd.w;
    return cd;
}

BigComplexValue cm_tau(const ReducedForm& f, const Int& d, long bits) {
    BigFloat sq = BigFloat::from(Int(abs(d)), bits).sqrt();
    BigFloat re = BigFloat::from(make_ratio(-f.b, 2 * f.a), bits);
    BigFloat im = sq / BigFloat::from(Int(2 * f.a), bits);
    BigComplexValue tau(re, im, bits, 0);
    tau.err_exp = tau.mag_exp2() - bits + 2;
    return tau;
}

BigComplexValue cm_tau0(const Int& d, long bits) {
    BigFloat sq = BigFloat::from(Int(abs(d)), bits).sqrt();
    BigComplexValue tau(BigFloat::from(make_ratio(d, Int(2)), bits), sq / BigFloat::from(Int(2), bits), bits, 0);
    tau.err_exp = tau.mag_exp2() - bits + 2;
    return tau;
}

long lambda_degree_prediction(const Int& d) {
    ClassData cd = class_data(d);
    Int m4 = d % 4;
    if (m4 < 0) m4 += 4;
    return (m4 == 0) ? cd.h2 : 2 * cd.h2;
}

long required_trunc_half(double y, long bits) {
    double log2w = -M_PI * y / std::log(2.0);
    long T = 16;
    while (true) {
        double tail = (double)growth_envelope_exp(T) + (double)T * log2w;
        double ratio = 8.0 / (2.0 * std::sqrt((double)T)) + log2w;
        if (ratio < -0.15 && tail < -(double)bits - 10.0) return T;
        T += 16;
        if (T > 1000000) throw std::domain_error("required_trunc_half: Im(tau) too small");
    }
}

namespace {

// lambda_series is expensive at large truncation; cache the deepest one
HalfQSeries cached_lambda(long trunc_half) {
    static std::mutex mu;
    static HalfQSeries cache;
    static long have = 0;
    std::lock_guard<std::mutex> lock(mu);
    if (have < trunc_half) {
        cache = lambda_series(trunc_half);
        have = trunc_half;
    }
    return cache.truncated(trunc_half);
}

} // namespace

BigComplexValue lambda_at(const BigComplexValue& tau, long bits) {
    double y = tau.im.to_double();
    long T = required_trunc_half(y, bits);
    return eval_at(cached_lambda(T), tau);
}

BigComplexValue lambda_at_tau0(const Int& d, long bits) {
    return lambda_at(cm_tau0(d, bits), bits);
}

CMValueCloud cm_value_cloud(const Int& d, long bits) {
    if (!is_fundamental(d)) throw std::invalid_argument("cm_value_cloud: d not fundamental");
    if (d >= -4) throw std::invalid_argument("cm_value_cloud: d = -3, -4 are handled by their closed values");
    CMValueCloud cloud;
    ClassData cd = class_data(d);
    Int m4 = d % 4;
    if (m4 < 0) m4 += 4;
    cloud.degree_prediction = (m4 == 0) ? cd.h2 : 2 * cd.h2;
    for (const auto& f : reduced_forms(d)) {
        BigComplexValue tau = cm_tau(f, d, bits);
        BigComplexValue lam = lambda_at(tau, bits);
        for (int v = 1; v <= 6; ++v) cloud.values.push_back(variant_apply(v, lam));
    }
    return cloud;
}

} // namespace lamcm
