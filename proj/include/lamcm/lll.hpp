#ifndef LAMCM_LLL_HPP
#define LAMCM_LLL_HPP

#include <vector>

#include "lamcm/rational.hpp"

namespace lamcm {

// In-place LLL reduction of the row basis (delta = 3/4), exact integer
// arithmetic throughout. Rows must be linearly independent.
void lll_reduce(std::vector<std::vector<Int>>& basis);

} // namespace lamcm

#endif
