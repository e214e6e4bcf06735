#include "lamcm/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace lamcm {

Int IntPolynomial::content() const {
    Int g(0);
    for (const auto& c : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    IntPolynomial r(*this);
    for (auto& c : r.coeffs) c /= g;
    return r;
}

Int IntPolynomial::operator()(const Int& x) const {
    Int v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

Rat IntPolynomial::operator()(const Rat& x) const {
    Rat v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

std::string IntPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Int& c = coeffs[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial(std::move(c));
}

// Sylvester determinant by fraction-free (Bareiss) elimination. Degrees in
// this project stay small, so O(n^3) exact elimination beats getting a
// subresultant PRS sign wrong.
Int resultant(const IntPolynomial& P, const IntPolynomial& Q) {
    if (P.is_zero() || Q.is_zero()) return Int(0);
    long m = P.degree(), n = Q.degree();
    if (m == 0) return pow_int(P.coeffs[0], n);
    if (n == 0) return pow_int(Q.coeffs[0], m);

    long N = m + n;
    std::vector<std::vector<Int>> A(N, std::vector<Int>(N, Int(0)));
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) A[r][r + j] = P.coeffs[m - j];
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) A[n + r][r + j] = Q.coeffs[n - j];

    int sign = 1;
    Int prev(1);
    for (long k = 0; k < N - 1; ++k) {
        if (A[k][k] == 0) {
            long piv = -1;
            for (long r = k + 1; r < N; ++r)
                if (A[r][k] != 0) { piv = r; break; }
            if (piv < 0) return Int(0);
            std::swap(A[k], A[piv]);
            sign = -sign;
        }
        for (long i = k + 1; i < N; ++i) {
            for (long j = k + 1; j < N; ++j) {
                A[i][j] = A[k][k] * A[i][j] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign > 0 ? A[N - 1][N - 1] : Int(-A[N - 1][N - 1]);
}

} // namespace lamcm
