#ifndef LAMCM_HALFQSERIES_HPP
#define LAMCM_HALFQSERIES_HPP

#include <vector>

#include "lamcm/rational.hpp"

namespace lamcm {

// Truncated Laurent series in w = q^(1/2) with exact rational coefficients.
// Exponents are tracked in half-steps: the coefficient of q^(k/2) lives at
// half-exponent k. Terms with half-exponent >= trunc are unknown.
//
// Invariant: coeffs.size() == trunc - min_exp (one slot per half-step).
class HalfQSeries {
  public:
    HalfQSeries() : min_(0), trunc_(0) {}
    HalfQSeries(long min_half, long trunc_half)
        : min_(min_half), trunc_(trunc_half), c_(size_t(trunc_half - min_half), Rat(0)) {
        if (trunc_half < min_half) throw std::invalid_argument("HalfQSeries: trunc < min");
    }

    static HalfQSeries constant(const Rat& v, long trunc_half) {
        HalfQSeries s(std::min(0L, trunc_half), trunc_half);
        if (trunc_half > 0) s.set(0, v);
        return s;
    }
    // single term v * q^(k/2), known up to trunc
    static HalfQSeries monomial(const Rat& v, long k, long trunc_half) {
        HalfQSeries s(std::min(k, trunc_half), trunc_half);
        if (k < trunc_half) s.set(k, v);
        return s;
    }

    long min_half() const { return min_; }
    long trunc_half() const { return trunc_; }

    const Rat& at(long k) const {
        static const Rat z(0);
        if (k >= trunc_) throw std::out_of_range("HalfQSeries: coefficient beyond truncation");
        if (k < min_) return z;
        return c_[size_t(k - min_)];
    }
    void set(long k, const Rat& v) {
        if (k < min_ || k >= trunc_) throw std::out_of_range("HalfQSeries::set");
        c_[size_t(k - min_)] = v;
    }

    // half-exponent of the lowest nonzero term; trunc if none known
    long order() const {
        for (long k = min_; k < trunc_; ++k)
            if (at(k) != 0) return k;
        return trunc_;
    }

    bool known_zero() const { return order() == trunc_; }

    HalfQSeries truncated(long new_trunc) const;

    HalfQSeries operator-() const;
    friend HalfQSeries operator+(const HalfQSeries& a, const HalfQSeries& b);
    friend HalfQSeries operator-(const HalfQSeries& a, const HalfQSeries& b);
    friend HalfQSeries operator*(const HalfQSeries& a, const HalfQSeries& b);
    friend HalfQSeries operator*(const Rat& s, const HalfQSeries& a);

    HalfQSeries pow(long e) const;        // e >= 0
    HalfQSeries inverse() const;          // needs nonzero leading coefficient
    HalfQSeries shifted(long dk) const;   // multiply by q^(dk/2)

    // substitute q^(1/2) -> -q^(1/2)
    HalfQSeries half_twist() const;

    bool identical(const HalfQSeries& o) const {
        return min_ == o.min_ && trunc_ == o.trunc_ && c_ == o.c_;
    }
    // equal as series on the common known range
    bool agrees(const HalfQSeries& o) const;

    std::string str(long max_terms = 12) const;

  private:
    long min_;
    long trunc_;
    std::vector<Rat> c_;

    void drop_leading_zeros();
};

} // namespace lamcm

#endif
