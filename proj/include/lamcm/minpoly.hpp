#ifndef LAMCM_MINPOLY_HPP
#define LAMCM_MINPOLY_HPP

#include <set>

#include "lamcm/factored.hpp"
#include "lamcm/intpoly.hpp"

namespace lamcm {

// Numerical oracle side: exact integer minimal polynomials of CM
// lambda-values recovered by integer-relation lattice reduction, then
// factored norms via exact resultants.

// Minimal polynomial of lambda_variant(tau0), tau0 = (d+sqrt(d))/2, of the
// degree predicted by the ray class data. Precision starts at
// max(256, 32*degree) bits and doubles until the recovered polynomial is
// stable across two levels (capped at 2^16 bits).
IntPolynomial minimal_polynomial(const Int& d, int variant, long bits_hint = 0);

// |N(lambda(tau0^{d1}) - lambda_variant_j(tau0^{d2}))| as a factored
// integer; requires coprime fundamental discriminants.
FactoredInteger norm_diff_oracle(const Int& d1, const Int& d2, int variant_j = 1);

// field norm of the difference as an exact rational (not forced integral);
// used by the norm-set computation where variants need not be integral
Rat norm_diff_rational(const IntPolynomial& P1, const IntPolynomial& P2);

enum class LambdaNormKind { Lambda, OneMinusLambda, InvLambda, LambdaOverLambdaMinusOne };

// |constant/leading| of the recovered minimal polynomial, factored;
// exponents may be negative for the reciprocal variants
FactoredInteger norm_lambda_oracle(const Int& d, LambdaNormKind which);

// the set N(d1,d2) of Lemma-4.8 type: all eighteen expressions, deduplicated
std::set<FactoredInteger> norm_set_oracle(const Int& d1, const Int& d2);

// |prod over reduced-form pairs of (j(tau_a1) - j(tau_a2))|, rounded to an
// exact integer and factored
FactoredInteger gz_jnorm_oracle(const Int& d1, const Int& d2, long bits);

} // namespace lamcm

#endif
