#pragma once

#include "hypzero/bigfloat.hpp"

#include <vector>

namespace hypzero {

/// Gauss-Legendre rule mapped to [0, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<BigFloat> nodes;
    std::vector<BigFloat> weights;
};

/// Rule with `count` nodes at `bits` precision. Computed once per (count, bits) and
/// shared; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int count, Bits bits);

} // namespace hypzero
