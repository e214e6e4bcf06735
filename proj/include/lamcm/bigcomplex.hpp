#ifndef LAMCM_BIGCOMPLEX_HPP
#define LAMCM_BIGCOMPLEX_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "lamcm/rational.hpp"

namespace lamcm {

// Thin RAII wrapper over mpfr_t. Each value carries its own precision;
// binary operations compute at the max precision of the operands.
class BigFloat {
  public:
    explicit BigFloat(long prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    BigFloat& operator=(BigFloat o) { mpfr_swap(x_, o.x_); return *this; }
    ~BigFloat() { mpfr_clear(x_); }

    static BigFloat from(double v, long prec) { BigFloat r(prec); mpfr_set_d(r.x_, v, MPFR_RNDN); return r; }
    static BigFloat from(const Rat& v, long prec) { BigFloat r(prec); mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN); return r; }
    static BigFloat from(const Int& v, long prec) { BigFloat r(prec); mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN); return r; }
    static BigFloat pi(long prec) { BigFloat r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r; }

    long prec() const { return mpfr_get_prec(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }
    // exponent e with 2^(e-1) <= |x| < 2^e; very small for zero
    long exp2() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string str(size_t digits = 20) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_div); }
    BigFloat operator-() const { BigFloat r(prec()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) > 0; }

    BigFloat abs() const { BigFloat r(prec()); mpfr_abs(r.x_, x_, MPFR_RNDN); return r; }
    BigFloat sqrt() const { BigFloat r(prec()); mpfr_sqrt(r.x_, x_, MPFR_RNDN); return r; }
    BigFloat exp() const { BigFloat r(prec()); mpfr_exp(r.x_, x_, MPFR_RNDN); return r; }
    BigFloat log() const { BigFloat r(prec()); mpfr_log(r.x_, x_, MPFR_RNDN); return r; }
    std::pair<BigFloat, BigFloat> sin_cos() const {
        BigFloat s(prec()), c(prec());
        mpfr_sin_cos(s.x_, c.x_, x_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }
    BigFloat pow_si(long e) const { BigFloat r(prec()); mpfr_pow_si(r.x_, x_, e, MPFR_RNDN); return r; }
    BigFloat mul_2exp(long e) const { BigFloat r(prec()); mpfr_mul_2si(r.x_, x_, e, MPFR_RNDN); return r; }

    // nearest integer
    Int round() const {
        BigFloat t(prec());
        mpfr_round(t.x_, x_);
        Int z;
        mpfr_get_z(z.get_mpz_t(), t.x_, MPFR_RNDN);
        return z;
    }

  private:
    using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat bin(const BigFloat& a, const BigFloat& b, mpfr_bin_fn f) {
        BigFloat r(std::max(a.prec(), b.prec()));
        f(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    mpfr_t x_;
};

// Complex value with working precision and a rigorous absolute error bound
// |computed - true| <= 2^err_exp, propagated conservatively (exponent
// arithmetic; every operation adds its own rounding slack).
struct BigComplexValue {
    BigFloat re, im;
    long bits;
    long err_exp; // error bound as a power of two

    explicit BigComplexValue(long b = 64)
        : re(b), im(b), bits(b), err_exp(-b) {}
    BigComplexValue(BigFloat r, BigFloat i, long b, long e)
        : re(std::move(r)), im(std::move(i)), bits(b), err_exp(e) {}

    static BigComplexValue from(const Rat& r, const Rat& i, long bits);
    static BigComplexValue exact(const Rat& r, long bits) { return from(r, Rat(0), bits); }

    long mag_exp2() const { return std::max(re.exp2(), im.exp2()); }

    friend BigComplexValue operator+(const BigComplexValue& a, const BigComplexValue& b);
    friend BigComplexValue operator-(const BigComplexValue& a, const BigComplexValue& b);
    friend BigComplexValue operator*(const BigComplexValue& a, const BigComplexValue& b);
    friend BigComplexValue operator/(const BigComplexValue& a, const BigComplexValue& b);
    BigComplexValue operator-() const;

    BigComplexValue conj() const;
    BigFloat abs() const;
    BigComplexValue pow(long e) const; // integer exponent, e may be negative

    // |this - o| <= combined error bounds?
    bool consistent_with(const BigComplexValue& o) const;

    std::string str(size_t digits = 20) const;
};

// e^{i*pi*tau} = q^(1/2) for tau = x + iy in the upper half plane
BigComplexValue half_q(const BigComplexValue& tau);

} // namespace lamcm

#endif
