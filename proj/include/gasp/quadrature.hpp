#pragma once

#include <vector>

namespace gasp {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule mapped to [lo, hi].
Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

} // namespace gasp
