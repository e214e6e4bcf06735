#ifndef LAMCM_FACTORINT_HPP
#define LAMCM_FACTORINT_HPP

#include "lamcm/factored.hpp"
#include "lamcm/rational.hpp"

namespace lamcm {

bool is_prime(const Int& n);

// Full factorization: trial division below 10^6, then Pollard rho on the
// remaining cofactor. Throws if a cofactor resists (not expected here;
// all norms in scope are smooth).
FactoredInteger factor_integer(const Int& n);

// Factor a rational exactly (negative exponents for the denominator).
FactoredInteger factor_rational(const Rat& x);

} // namespace lamcm

#endif
