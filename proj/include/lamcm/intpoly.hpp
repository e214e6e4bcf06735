#ifndef LAMCM_INTPOLY_HPP
#define LAMCM_INTPOLY_HPP

#include <vector>

#include "lamcm/rational.hpp"

namespace lamcm {

// Integer-coefficient polynomial, coefficients ascending by degree.
// Leading coefficient is kept nonzero (zero polynomial has empty coeffs).
struct IntPolynomial {
    std::vector<Int> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return (long)coeffs.size() - 1; } // -1 for zero
    const Int& leading() const { return coeffs.back(); }
    Int constant() const { return coeffs.empty() ? Int(0) : coeffs.front(); }

    Int content() const;
    IntPolynomial primitive_part() const;

    Int operator()(const Int& x) const;
    Rat operator()(const Rat& x) const;

    // make leading coefficient positive
    IntPolynomial positive_leading() const {
        IntPolynomial r(*this);
        if (!r.coeffs.empty() && r.coeffs.back() < 0)
            for (auto& c : r.coeffs) c = -c;
        return r;
    }

    bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }

    std::string str(const std::string& var = "x") const;
};

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

// res(P,Q) = lead(P)^deg Q * prod Q(root of P); exact, subresultant PRS.
Int resultant(const IntPolynomial& P, const IntPolynomial& Q);

} // namespace lamcm

#endif
