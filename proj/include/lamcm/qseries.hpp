#ifndef LAMCM_QSERIES_HPP
#define LAMCM_QSERIES_HPP

#include "lamcm/bigcomplex.hpp"
#include "lamcm/halfqseries.hpp"

namespace lamcm {

// lambda(tau) = -1/16 q^(-1/2) prod_{n>=1} ((1-q^(n-1/2))/(1+q^n))^8.
// trunc_half = 2*trunc in the q-exponent scale; requires trunc >= 1/2,
// i.e. trunc_half >= 1.
HalfQSeries lambda_series(long trunc_half);

// 1 - lambda, computed from the same product data
HalfQSeries one_minus_lambda_series(long trunc_half);

// The six roots of the degree-six relation over Q(j), in the order
//   1: x, 2: 1-x, 3: 1/x, 4: 1/(1-x), 5: (x-1)/x, 6: x/(x-1)
// applied to x = lambda. Derived algebraically from lambda_series.
HalfQSeries lambda_variant_series(int variant, long trunc_half);

// apply the variant transformation to an abstract argument
Rat variant_apply(int variant, const Rat& x);
BigComplexValue variant_apply(int variant, const BigComplexValue& x);
// index of the composed variant: variant_apply(a, variant_apply(b, x))
int variant_compose(int a, int b);

// j = 256 (1-x+x^2)^3 / (x^2 (1-x)^2); pole at x in {0,1}
Rat j_from_lambda(const Rat& x);
BigComplexValue j_from_lambda(const BigComplexValue& x);

// Delta = q prod (1-q^n)^24
HalfQSeries delta_series(long trunc_half);

// omega_2 = -16 / (x(1-x)), the degree-2 hauptmodul
Rat omega2_of_lambda(const Rat& x);
BigComplexValue omega2_of_lambda(const BigComplexValue& x);

// Evaluate a series at tau (upper half plane) with a rigorous error bound
// combining rounding and the series tail. The tail bound uses the checked
// coefficient-growth envelope below.
BigComplexValue eval_at(const HalfQSeries& s, const BigComplexValue& tau);

// |coeff of q^(k/2)| <= 2^(growth_envelope_exp(k)); asserted for every
// series this module produces, consumed by eval_at's tail bound.
long growth_envelope_exp(long k);
bool check_growth_envelope(const HalfQSeries& s);

} // namespace lamcm

#endif
