#include "lamcm/lll.hpp"

#include <stdexcept>

namespace lamcm {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

// Integral LLL with the lambda/d bookkeeping (Cohen, Alg. 2.6.3). Indices
// are 1-based inside to match the classical statement; d[0] = 1.
void lll_reduce(std::vector<std::vector<Int>>& basis) {
    const long n = (long)basis.size();
    if (n <= 1) return;

    std::vector<std::vector<Int>> lam(size_t(n + 1), std::vector<Int>(size_t(n + 1), Int(0)));
    std::vector<Int> d(size_t(n + 1), Int(1));
    auto b = [&](long i) -> std::vector<Int>& { return basis[size_t(i - 1)]; };

    long kmax = 1;
    d[0] = 1;
    d[1] = dot(b(1), b(1));
    if (d[1] == 0) throw std::invalid_argument("lll_reduce: zero vector in basis");

    auto redi = [&](long k, long l) {
        Int two_lam = 2 * abs(lam[size_t(k)][size_t(l)]);
        if (two_lam <= d[size_t(l)]) return;
        // q = nearest integer to lam[k][l] / d[l]
        Int num = 2 * lam[size_t(k)][size_t(l)] + d[size_t(l)];
        Int den = 2 * d[size_t(l)];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (size_t i = 0; i < b(k).size(); ++i) b(k)[i] -= q * b(l)[i];
        lam[size_t(k)][size_t(l)] -= q * d[size_t(l)];
        for (long i = 1; i < l; ++i) lam[size_t(k)][size_t(i)] -= q * lam[size_t(l)][size_t(i)];
    };

    auto swapi = [&](long k) {
        std::swap(b(k), b(k - 1));
        for (long j = 1; j <= k - 2; ++j) std::swap(lam[size_t(k)][size_t(j)], lam[size_t(k - 1)][size_t(j)]);
        Int lm = lam[size_t(k)][size_t(k - 1)];
        Int B = (d[size_t(k - 2)] * d[size_t(k)] + lm * lm) / d[size_t(k - 1)];
        for (long i = k + 1; i <= kmax; ++i) {
            Int t = lam[size_t(i)][size_t(k)];
            lam[size_t(i)][size_t(k)] = (d[size_t(k)] * lam[size_t(i)][size_t(k - 1)] - lm * t) / d[size_t(k - 1)];
            lam[size_t(i)][size_t(k - 1)] = (B * t + lm * lam[size_t(i)][size_t(k)]) / d[size_t(k)];
        }
        d[size_t(k - 1)] = B;
    };

    long k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (long j = 1; j <= k; ++j) {
                Int u = dot(b(k), b(j));
                for (long i = 1; i < j; ++i)
                    u = (d[size_t(i)] * u - lam[size_t(k)][size_t(i)] * lam[size_t(j)][size_t(i)]) / d[size_t(i - 1)];
                if (j < k) lam[size_t(k)][size_t(j)] = u;
                else {
                    d[size_t(k)] = u;
                    if (u == 0) throw std::invalid_argument("lll_reduce: dependent basis rows");
                }
            }
        }
        while (true) {
            redi(k, k - 1);
            Int lm = lam[size_t(k)][size_t(k - 1)];
            // Lovasz (delta = 3/4): 4(d[k] d[k-2] + lam^2) < 3 d[k-1]^2
            if (4 * (d[size_t(k)] * d[size_t(k - 2)] + lm * lm) < 3 * d[size_t(k - 1)] * d[size_t(k - 1)]) {
                swapi(k);
                k = std::max(2L, k - 1);
            } else {
                for (long l = k - 2; l >= 1; --l) redi(k, l);
                ++k;
                break;
            }
        }
    }
}

} // namespace lamcm
