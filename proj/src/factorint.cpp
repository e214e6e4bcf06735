#include "lamcm/factorint.hpp"

#include <stdexcept>

namespace lamcm {

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent variant, deterministic seed sweep
    for (unsigned long c = 1; c < 64; ++c) {
        Int x(2), y(2), d(1);
        Int cc(c);
        while (d == 1) {
            x = (x * x + cc) % n;
            y = (y * y + cc) % n;
            y = (y * y + cc) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
    throw std::runtime_error("factor_integer: pollard rho failed on " + Int(n).get_str());
}

void factor_rec(Int n, std::map<Int, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out[n]++; return; }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

FactoredInteger factor_integer(const Int& n) {
    if (n == 0) return FactoredInteger::zero();
    FactoredInteger r;
    r.sign = n < 0 ? -1 : 1;
    Int m = abs(n);
    for (unsigned long p = 2; p < 1000000ul && m > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            long e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) { m /= p; ++e; }
            r.factors[Int(p)] = e;
        }
        // cheap early exit: remaining cofactor is prime
        if (m > 1 && p > 500 && is_prime(m)) { r.factors[m]++; m = 1; }
    }
    if (m > 1) factor_rec(m, r.factors);
    return r;
}

FactoredInteger factor_rational(const Rat& x) {
    if (x == 0) return FactoredInteger::zero();
    return factor_integer(Int(x.get_num())) / factor_integer(Int(x.get_den()));
}

} // namespace lamcm
