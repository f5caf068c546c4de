#pragma once

#include <cstddef>

#include "jrank/core.hpp"

namespace jrank {

// Worst-case instance families for the price of JR.

/// k groups of `group_size` users; group g alone approves item g, which the
/// classifier scores epsilon. Item k is approved by nobody and scored c. The
/// price is (c + (k-1)·epsilon) / (k·epsilon) and grows without bound as
/// epsilon -> 0. Throws BadParams unless epsilon > 0, c > epsilon, k >= 1.
Instance construct_prop41_instance(std::size_t k, double epsilon, double c,
                                   std::size_t group_size = 2);

/// gamma = nk/(n+k) groups of n/k + 1 users. Group g unanimously approves
/// consensus item g; its first member also approves the k shared items
/// gamma..gamma+k-1. Under maximin diverse approval the exact price is
/// (n+k)/k, which is k when n = k(k-1). Throws BadDivisibility unless the
/// sizes are integral and gamma > 1.
Instance construct_thm42_instance(std::size_t n, std::size_t k);

/// gamma equal groups of n/gamma users, each unanimously approving only its
/// own item (items 0..gamma-1, score 0); items gamma..gamma+k-1 are approved
/// by nobody and scored c. The exact price is k/(k-gamma). Throws BadParams
/// unless 1 <= gamma < k, gamma divides n and c > 0.
Instance construct_thm51_tight_instance(std::size_t n, std::size_t k, std::size_t gamma,
                                        double c = 1.0);

}  // namespace jrank
