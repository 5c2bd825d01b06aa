#pragma once

#include "txpower/regression.hpp"

namespace txpower::test {

inline ExpFitModel make_fit(double a, double b, double lo = 1.0, double hi = 1000.0) {
    return ExpFitModel{.a = a,
                       .b = b,
                       .valid_lo = FrequencyGhz(lo),
                       .valid_hi = FrequencyGhz(hi),
                       .r_squared_linear = 1.0,
                       .r_squared_log = 1.0,
                       .n_points = 2,
                       .strategy = std::nullopt};
}

}  // namespace txpower::test
