#ifndef LAMCM_FACTORED_HPP
#define LAMCM_FACTORED_HPP

#include <map>
#include <sstream>
#include <string>

#include "lamcm/rational.hpp"

namespace lamcm {

// Sign plus prime -> exponent map. Exponents may be negative, so the
// represented value is a rational in general; norm computations that
// promise integers assert it explicitly.
struct FactoredInteger {
    int sign = 1; // +1 or -1; 0 represents zero
    std::map<Int, long> factors;

    FactoredInteger() = default;
    explicit FactoredInteger(int s) : sign(s) {}

    static FactoredInteger zero() { return FactoredInteger(0); }
    static FactoredInteger one() { return FactoredInteger(1); }

    bool is_zero() const { return sign == 0; }

    void trim() {
        for (auto it = factors.begin(); it != factors.end();)
            it = (it->second == 0) ? factors.erase(it) : std::next(it);
    }

    FactoredInteger& operator*=(const FactoredInteger& o) {
        if (sign == 0 || o.sign == 0) { *this = zero(); return *this; }
        sign *= o.sign;
        for (const auto& [p, e] : o.factors) factors[p] += e;
        trim();
        return *this;
    }
    friend FactoredInteger operator*(FactoredInteger a, const FactoredInteger& b) { return a *= b; }

    FactoredInteger& operator/=(const FactoredInteger& o) {
        if (o.sign == 0) throw std::domain_error("FactoredInteger: division by zero");
        if (sign == 0) return *this;
        sign *= o.sign;
        for (const auto& [p, e] : o.factors) factors[p] -= e;
        trim();
        return *this;
    }
    friend FactoredInteger operator/(FactoredInteger a, const FactoredInteger& b) { return a /= b; }

    FactoredInteger pow(long k) const {
        if (sign == 0) {
            if (k <= 0) throw std::domain_error("FactoredInteger: 0^nonpositive");
            return zero();
        }
        FactoredInteger r;
        r.sign = (k % 2 == 0) ? 1 : sign;
        for (const auto& [p, e] : factors) if (e * k != 0) r.factors[p] = e * k;
        return r;
    }

    FactoredInteger abs() const {
        FactoredInteger r(*this);
        if (r.sign < 0) r.sign = 1;
        return r;
    }

    bool is_integral() const {
        for (const auto& [p, e] : factors) { (void)p; if (e < 0) return false; }
        return true;
    }

    Rat value() const {
        if (sign == 0) return Rat(0);
        Rat v(sign);
        for (const auto& [p, e] : factors) v *= pow_rat(Rat(p), e);
        return v;
    }

    bool operator==(const FactoredInteger& o) const {
        return sign == o.sign && factors == o.factors;
    }
    bool operator!=(const FactoredInteger& o) const { return !(*this == o); }
    bool operator<(const FactoredInteger& o) const {
        if (sign != o.sign) return sign < o.sign;
        return factors < o.factors;
    }

    std::string str() const {
        if (sign == 0) return "0";
        std::ostringstream os;
        if (sign < 0) os << "-";
        if (factors.empty()) { os << "1"; return os.str(); }
        bool first = true;
        for (const auto& [p, e] : factors) {
            if (!first) os << "*";
            first = false;
            os << p;
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }
};

} // namespace lamcm

#endif
