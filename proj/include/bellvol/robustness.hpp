// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

namespace bellvol {

// Detection-efficiency margins for the two-setting game, with undetected
// rounds assigned the worst-case outcome. Positive margin = violation
// survives at efficiency eta.

// additive expression: margin 2*sqrt(2) - (4/eta - 2)
inline double delta_additive(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("delta_additive: eta must be in (0, 1]");
    return 2.0 * std::sqrt(2.0) - (4.0 / eta - 2.0);
}

// multiplicative expression: margin 2 - (2/eta - 1)^2
inline double delta_multiplicative(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("delta_multiplicative: eta must be in (0, 1]");
    const double x = 2.0 / eta - 1.0;
    return 2.0 - x * x;
}

// The efficiency where the additive margin crosses zero: 4/(2*sqrt(2) + 2).
// Below 1 the multiplicative margin dominates strictly above this point.
inline double additive_margin_root() { return 4.0 / (2.0 * std::sqrt(2.0) + 2.0); }

} // namespace bellvol
