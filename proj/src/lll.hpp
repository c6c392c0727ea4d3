#pragma once

#include <vector>

#include "intutil.hpp"

namespace eiskron {

// Exact LLL reduction (delta = 99/100) of the rows of an integer matrix.
// Small dimensions only; rational Gram-Schmidt throughout.
void lll_reduce(std::vector<std::vector<Int>>& basis);

} // namespace eiskron
