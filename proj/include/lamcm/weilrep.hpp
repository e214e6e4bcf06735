#ifndef LAMCM_WEILREP_HPP
#define LAMCM_WEILREP_HPP

#include <array>
#include <vector>

#include "lamcm/bigcomplex.hpp"
#include "lamcm/halfqseries.hpp"

namespace lamcm {

// Finite Weil representation data for L = M_2(Z) with Q(x) = 2 det(x).
// L'/L has 16 classes mu_0..mu_15 with half-integer matrix entries; both
// e(Q(mu)) and e(-(mu,nu)) are +-1 here, so the representation matrices
// are rational.

inline constexpr int kWeilDim = 16;
using WeilVector = std::array<Rat, kWeilDim>;
using WeilMatrix = std::array<std::array<Rat, kWeilDim>, kWeilDim>;

// entries of the class representative mu_j, row-major quarters scaled by 2
// (0 or 1 standing for 0 or 1/2)
std::array<std::array<int, 4>, kWeilDim> weil_classes();

// Q(mu_j) mod 1, as twice the value (0 or 1)
int weil_twice_Q(int j);
// (mu_i, mu_j) mod 1, as twice the value (0 or 1)
int weil_twice_pairing(int i, int j);

WeilMatrix weil_T();
WeilMatrix weil_S();
WeilMatrix weil_mul(const WeilMatrix& a, const WeilMatrix& b);
WeilMatrix weil_inverse(const WeilMatrix& a);
WeilVector weil_apply(const WeilMatrix& a, const WeilVector& v);
WeilMatrix weil_identity();

// basis of the invariant (constant-form) subspace; dimension 5, and the
// listed basis f_0..f_4 is verified to span the computed kernel
std::vector<WeilVector> constant_forms_basis();

// the five listed basis vectors f_0..f_4
WeilVector constant_form_f(int j);

struct VectorQSeries {
    std::array<HalfQSeries, kWeilDim> comp;
};

// the weakly holomorphic vector-valued form with principal part
// q^(-1/2) phi_{mu_5} inducing lambda(z1)-lambda(z2); coefficients exact.
// Computed from a transversal of the level-2 principal congruence group;
// a second transversal cross-checks the result.
VectorQSeries induce_f(long trunc_half);

// Borcherds product of a constant coefficient vector at (z1, z2)
BigComplexValue borcherds_constant_product(const WeilVector& coeff, const BigComplexValue& z1,
                                           const BigComplexValue& z2, long trunc, long bits);

// Borcherds product of the difference form (equals lambda(z1)-lambda(z2)
// in the chamber Im z1 > Im z2 >> 0)
BigComplexValue borcherds_diff_product(const BigComplexValue& z1, const BigComplexValue& z2,
                                       long trunc, long bits);

} // namespace lamcm

#endif
