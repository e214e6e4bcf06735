#ifndef LAMCM_CMFIELDS_HPP
#define LAMCM_CMFIELDS_HPP

#include <vector>

#include "lamcm/bigcomplex.hpp"
#include "lamcm/rational.hpp"

namespace lamcm {

// fundamental discriminant of an imaginary quadratic field
bool is_fundamental(const Int& d);

// Kronecker symbol (a|n)
int kronecker(const Int& a, const Int& n);

struct ClassData {
    long h;  // class number
    long w;  // roots of unity: 6, 4, or 2
    long r;  // residue factor r(d) in {1,2,3}
    long h2; // ray class number h(k,2) = (2/w) r(d) h
};

// h by reduced-form count; w, r by residue class; h2 from the ray class
// relation h(k,2)/h = (2/w) r(d).
ClassData class_data(const Int& d);

struct ReducedForm {
    long a, b, c;
};

// all reduced forms (a,b,c) of discriminant d: b^2-4ac = d, |b|<=a<=c,
// b>=0 when |b|==a or a==c
std::vector<ReducedForm> reduced_forms(const Int& d);

// tau = (-b + sqrt(d)) / (2a) in the upper half plane
BigComplexValue cm_tau(const ReducedForm& f, const Int& d, long bits);

// tau0 = (d + sqrt(d)) / 2, the distinguished CM point
BigComplexValue cm_tau0(const Int& d, long bits);

struct CMValueCloud {
    std::vector<BigComplexValue> values; // 6h entries, (form, variant) pairs
    long degree_prediction;              // h2 if 4|d else 2*h2
};

// all six lambda-variant values at each reduced form's CM point; rejects
// d = -3, -4 (ramified covering points break the 6h count)
CMValueCloud cm_value_cloud(const Int& d, long bits);

// minimal polynomial degree of lambda(tau0) predicted by the ray class data
long lambda_degree_prediction(const Int& d);

// value of lambda at tau0 = (d+sqrt(d))/2, with enough terms for `bits`
BigComplexValue lambda_at_tau0(const Int& d, long bits);
BigComplexValue lambda_at(const BigComplexValue& tau, long bits);

// truncation (in half-steps) so the eval_at tail stays below 2^(-bits-8)
// for Im(tau) >= y
long required_trunc_half(double y, long bits);

} // namespace lamcm

#endif
