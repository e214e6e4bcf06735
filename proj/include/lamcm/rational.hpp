#ifndef LAMCM_RATIONAL_HPP
#define LAMCM_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace lamcm {

using Int = mpz_class;
using Rat = mpq_class;

// canonicalized quotient (the two-argument mpq_class constructor does not
// reduce on its own)
inline Rat make_ratio(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}
inline Rat make_ratio(long num, long den) { return make_ratio(Int(num), Int(den)); }

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), (unsigned long)e);
        mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), (unsigned long)e);
        r.canonicalize();
        return r;
    }
    if (b == 0) throw std::domain_error("pow_rat: 0 to negative power");
    return pow_rat(Rat(1) / b, -e);
}

// largest e with p^e | n (n != 0)
inline long valuation(Int n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    long v = 0;
    n = abs(n);
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

// valuation of a rational (may be negative)
inline long valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

inline bool is_rat_integer(const Rat& x) { return x.get_den() == 1; }

} // namespace lamcm

#endif
