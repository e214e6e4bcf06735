#include "lamcm/halfqseries.hpp"

#include <algorithm>
#include <sstream>

namespace lamcm {

void HalfQSeries::drop_leading_zeros() {
    while (min_ < trunc_ && !c_.empty() && c_.front() == 0 && min_ < 0) {
        // keep nonnegative slots so constants stay addressable
        c_.erase(c_.begin());
        ++min_;
    }
}

HalfQSeries HalfQSeries::truncated(long new_trunc) const {
    if (new_trunc > trunc_) throw std::invalid_argument("HalfQSeries::truncated: cannot extend knowledge");
    HalfQSeries r(std::min(min_, new_trunc), new_trunc);
    for (long k = r.min_; k < r.trunc_; ++k)
        if (k >= min_) r.set(k, at(k));
    return r;
}

HalfQSeries HalfQSeries::operator-() const {
    HalfQSeries r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

HalfQSeries operator+(const HalfQSeries& a, const HalfQSeries& b) {
    long tr = std::min(a.trunc_, b.trunc_);
    long mn = std::min(std::min(a.min_, b.min_), tr);
    HalfQSeries r(mn, tr);
    for (long k = mn; k < tr; ++k) {
        Rat v(0);
        if (k >= a.min_ && k < a.trunc_) v += a.at(k);
        if (k >= b.min_ && k < b.trunc_) v += b.at(k);
        r.set(k, v);
    }
    return r;
}

HalfQSeries operator-(const HalfQSeries& a, const HalfQSeries& b) { return a + (-b); }

HalfQSeries operator*(const HalfQSeries& a, const HalfQSeries& b) {
    // known terms of the product: exponents below min(ta + mb, tb + ma)
    long tr = std::min(a.trunc_ + b.min_, b.trunc_ + a.min_);
    long mn = a.min_ + b.min_;
    if (tr < mn) tr = mn;
    HalfQSeries r(mn, tr);
    for (long i = a.min_; i < a.trunc_; ++i) {
        if (a.at(i) == 0) continue;
        long jmax = std::min(b.trunc_, tr - i);
        for (long j = b.min_; j < jmax; ++j) {
            if (b.at(j) == 0) continue;
            r.set(i + j, r.at(i + j) + a.at(i) * b.at(j));
        }
    }
    return r;
}

HalfQSeries operator*(const Rat& s, const HalfQSeries& a) {
    HalfQSeries r(a);
    for (auto& x : r.c_) x *= s;
    return r;
}

HalfQSeries HalfQSeries::pow(long e) const {
    if (e < 0) throw std::invalid_argument("HalfQSeries::pow: negative exponent, use inverse()");
    if (e == 0) return constant(Rat(1), std::max(1L, trunc_ - min_));
    HalfQSeries base(*this), acc = base;
    --e;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

HalfQSeries HalfQSeries::inverse() const {
    long ord = order();
    if (ord == trunc_)
        throw std::domain_error("HalfQSeries::inverse: no known nonzero term (truncation too small)");
    // factor q^(ord/2) * u with u(0) != 0; invert u by the standard recurrence
    long n = trunc_ - ord; // relative precision
    std::vector<Rat> u(static_cast<size_t>(n), Rat(0));
    for (long k = 0; k < n; ++k) u[size_t(k)] = at(ord + k);
    std::vector<Rat> v(size_t(n), Rat(0));
    v[0] = Rat(1) / u[0];
    for (long k = 1; k < n; ++k) {
        Rat s(0);
        for (long j = 1; j <= k; ++j) s += u[size_t(j)] * v[size_t(k - j)];
        v[size_t(k)] = -s / u[0];
    }
    HalfQSeries r(-ord, -ord + n);
    for (long k = 0; k < n; ++k) r.set(-ord + k, v[size_t(k)]);
    return r;
}

HalfQSeries HalfQSeries::shifted(long dk) const {
    HalfQSeries r(*this);
    r.min_ += dk;
    r.trunc_ += dk;
    return r;
}

HalfQSeries HalfQSeries::half_twist() const {
    HalfQSeries r(*this);
    for (long k = r.min_; k < r.trunc_; ++k)
        if (((k % 2) + 2) % 2 == 1) r.set(k, -r.at(k));
    return r;
}

bool HalfQSeries::agrees(const HalfQSeries& o) const {
    long tr = std::min(trunc_, o.trunc_);
    for (long k = std::min(min_, o.min_); k < tr; ++k) {
        Rat a = (k >= min_) ? at(k) : Rat(0);
        Rat b = (k >= o.min_) ? o.at(k) : Rat(0);
        if (a != b) return false;
    }
    return true;
}

std::string HalfQSeries::str(long max_terms) const {
    std::ostringstream os;
    long shown = 0;
    bool first = true;
    for (long k = min_; k < trunc_ && shown < max_terms; ++k) {
        if (at(k) == 0) continue;
        Rat v = at(k);
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        first = false;
        Rat a = abs(v);
        if (k == 0 || a != 1) os << a.get_str();
        if (k != 0) {
            if (a != 1) os << "*";
            os << "q";
            if (k != 2) {
                if (k % 2 == 0) os << "^" << k / 2;
                else os << "^(" << k << "/2)";
            }
        }
        ++shown;
    }
    if (first) os << "0";
    os << " + O(q^" << (trunc_ % 2 == 0 ? std::to_string(trunc_ / 2)
                                        : "(" + std::to_string(trunc_) + "/2)")
       << ")";
    return os.str();
}

} // namespace lamcm
