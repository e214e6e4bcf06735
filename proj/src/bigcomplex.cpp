#include "lamcm/bigcomplex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lamcm {

std::string BigFloat::str(size_t digits) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
    std::string body(s);
    mpfr_free_str(s);
    bool neg = !body.empty() && body[0] == '-';
    if (neg) body.erase(0, 1);
    std::ostringstream os;
    if (neg) os << "-";
    os << "0." << body << "e" << e;
    return os.str();
}

BigComplexValue BigComplexValue::from(const Rat& r, const Rat& i, long bits) {
    BigComplexValue z(BigFloat::from(r, bits), BigFloat::from(i, bits), bits, 0);
    z.err_exp = z.mag_exp2() - bits + 1; // representation rounding only
    return z;
}

namespace {
inline long emax(long a, long b) { return std::max(a, b); }
}

BigComplexValue operator+(const BigComplexValue& a, const BigComplexValue& b) {
    long bits = std::max(a.bits, b.bits);
    BigComplexValue r(a.re + b.re, a.im + b.im, bits, 0);
    r.err_exp = emax(emax(a.err_exp, b.err_exp) + 1, r.mag_exp2() - bits + 1) + 1;
    return r;
}

BigComplexValue operator-(const BigComplexValue& a, const BigComplexValue& b) {
    long bits = std::max(a.bits, b.bits);
    BigComplexValue r(a.re - b.re, a.im - b.im, bits, 0);
    r.err_exp = emax(emax(a.err_exp, b.err_exp) + 1, r.mag_exp2() - bits + 1) + 1;
    return r;
}

BigComplexValue BigComplexValue::operator-() const { return BigComplexValue(-re, -im, bits, err_exp); }

BigComplexValue operator*(const BigComplexValue& a, const BigComplexValue& b) {
    long bits = std::max(a.bits, b.bits);
    BigComplexValue r(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, bits, 0);
    // |a||db| + |b||da| + |da||db|, plus rounding; +3 absorbs the
    // sqrt(2) slack of using componentwise magnitudes
    long e1 = a.mag_exp2() + b.err_exp;
    long e2 = b.mag_exp2() + a.err_exp;
    long e3 = a.err_exp + b.err_exp;
    r.err_exp = emax(emax(emax(e1, e2), e3), r.mag_exp2() - bits) + 3;
    return r;
}

BigComplexValue operator/(const BigComplexValue& a, const BigComplexValue& b) {
    long bits = std::max(a.bits, b.bits);
    long bmag = b.mag_exp2();
    if (b.err_exp >= bmag - 2)
        throw std::domain_error("BigComplexValue: division by a value not certified nonzero");
    BigFloat n = b.re * b.re + b.im * b.im;
    BigComplexValue r((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n, bits, 0);
    // |d(a/b)| <= |da|/|b| + |a||db|/|b|^2, with |b| >= 2^(bmag-1)
    long e1 = a.err_exp - (bmag - 1);
    long e2 = a.mag_exp2() + b.err_exp - 2 * (bmag - 1);
    r.err_exp = emax(emax(e1, e2), r.mag_exp2() - bits) + 3;
    return r;
}

BigComplexValue BigComplexValue::conj() const { return BigComplexValue(re, -im, bits, err_exp); }

BigFloat BigComplexValue::abs() const { return (re * re + im * im).sqrt(); }

BigComplexValue BigComplexValue::pow(long e) const {
    if (e == 0) return exact(Rat(1), bits);
    bool inv = e < 0;
    unsigned long k = inv ? -(unsigned long)e : (unsigned long)e;
    BigComplexValue base(*this), acc = base;
    --k;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    if (inv) return exact(Rat(1), bits) / acc;
    return acc;
}

bool BigComplexValue::consistent_with(const BigComplexValue& o) const {
    BigComplexValue d = *this - o;
    long bound = emax(err_exp, o.err_exp) + 2;
    return d.mag_exp2() <= bound;
}

std::string BigComplexValue::str(size_t digits) const {
    std::ostringstream os;
    os << re.str(digits);
    if (!(im.is_zero())) {
        os << (im.sign() >= 0 ? " + " : " - ") << im.abs().str(digits) << "*i";
    }
    os << "  (err <= 2^" << err_exp << ")";
    return os.str();
}

BigComplexValue half_q(const BigComplexValue& tau) {
    long bits = tau.bits;
    if (!(tau.im > BigFloat::from(0.0, 8)))
        throw std::domain_error("half_q: tau must lie in the upper half plane");
    BigFloat pi = BigFloat::pi(bits);
    BigFloat mod = (-(pi * tau.im)).exp();        // e^{-pi y}
    auto [s, c] = (pi * tau.re).sin_cos();        // angle pi x
    BigComplexValue r(mod * c, mod * s, bits, 0);
    // d(e^{i pi tau}) = i pi e^{i pi tau} d(tau); |e^{..}| <= 1 here
    r.err_exp = std::max(tau.err_exp + 2, r.mag_exp2() - bits) + 3;
    return r;
}

} // namespace lamcm
