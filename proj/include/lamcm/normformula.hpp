#ifndef LAMCM_NORMFORMULA_HPP
#define LAMCM_NORMFORMULA_HPP

#include <map>
#include <vector>

#include "lamcm/factored.hpp"
#include "lamcm/idealarith.hpp"

namespace lamcm {

// Case data for the five-case difference-norm formula; inputs are expected
// in canonical order (see canonical_order).
struct CaseTag {
    int case_id;   // 1..5
    Rat epsilon_D; // 2, 1, or 1/2 by D mod 8
    int delta_D;   // 1 for odd D, 2 for even D
};

CaseTag case_tag(const Int& d1, const Int& d2);

// reorder (d1,d2) so the distinguished residue class comes first
std::pair<Int, Int> canonical_order(const Int& d1, const Int& d2);

// all t = (m+sqrt(D))/2 with m = D mod 2, |m| < sqrt(D), c(t) even,
// where c(t) = (d1^2+d2^2-(d1+d2))/4 - (m+D)/2
std::vector<RealQuadElement> enumerate_t(const Int& d1, const Int& d2);

// per-prime exponents as exact rationals, keyed by rational prime;
// integrality only asserted on final totals
using ExponentMap = std::map<Int, Rat>;

// one t's additive contribution to log|N|, as a coefficient of log p
struct LogContribution {
    Int p;
    Rat coeff; // coefficient of log(p); zero contribution = empty p=0
    Int m;     // source t
    bool zero() const { return p == 0; }
};

// the normalized Fourier coefficient a(t/sqrt(D), phi_mu5) of the
// incoherent Eisenstein derivative, evaluated from the local Whittaker
// values at 2 and the ideal counts away from 2; zero when |Diff| != 1
LogContribution a_coefficient(const RealQuadElement& t, const Int& d1, const Int& d2);

// the three constant-term combinations, as exact coefficients of log 2
// (Lambda(0,chi) = 4 h1 h2 / (w1 w2) substituted in)
struct A0Constants {
    Rat comb1; // the difference-norm bracket
    Rat comb2; // the lambda-norm bracket
    Rat comb3; // the (1-lambda)-norm bracket
};

A0Constants a0_constants(const Int& d1, const Int& d2);

// per-class constant term a0(phi_mu_j) as a multiple of Lambda(0,chi)*log2;
// j ranges over {1,2,3,4,6,7,9,10,12}
Rat a0_phi(const Int& d1, const Int& d2, int j);

// Theorem-1.4 evaluator: exact factored |N(lambda(tau1)-lambda(tau2))|
FactoredInteger theorem14(const Int& d1, const Int& d2);

// same value assembled from a_coefficient + a0_constants (the big CM value
// route); exponents returned before integrality collapse
ExponentMap bky_assembly_exponents(const Int& d1, const Int& d2);
ExponentMap theorem14_exponents(const Int& d1, const Int& d2);

enum class Table1Kind { Lambda, OneMinusLambda, InvLambda, LambdaOverLambdaMinusOne };

// |N(lambda_0)|-type norms as powers of two, via the constant-term route
// with an auxiliary discriminant (route independence asserted internally)
FactoredInteger table1_norm(const Int& d, Table1Kind which);

// order of the set N(d1,d2) per the residue classes
int nset_cardinality(const Int& d1, const Int& d2);

struct Conjecture61Result {
    Int sum;
    bool divisible_by_3;
};

// sum of rho_{E/F}(t p_t^{-1}) over t with odd ord_2(m^2-D) and m = -1 mod 4
Conjecture61Result conjecture61_check(const Int& d1, const Int& d2);

} // namespace lamcm

#endif
