// SPDX-License-Identifier: Apache-2.0
//
// bitload: multicarrier bit and power allocation
// Copyright (C) 2026 bitload contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "bitload/snr_gap.hpp"

#include "bitload/error.hpp"

#include <cmath>
#include <numbers>

namespace bitload {

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double inverse_q(double p)
{
    if (!(p > 0.0) || p > 0.5)
        throw InvalidParameter("inverse_q: probability must lie in (0, 0.5]");

    // Bracket then polish with Newton on log Q, which stays well scaled deep in the tail.
    double lo = 0.0;
    double hi = 1.0;
    while (q_function(hi) > p)
        hi *= 2.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (q_function(mid) > p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    const double log_p = std::log(p);
    for (int i = 0; i < 4; ++i) {
        const double q = q_function(x);
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        x += (std::log(q) - log_p) * q / pdf;
    }
    return x;
}

double snr_gap_from_ber(double ber)
{
    if (!(ber > 0.0) || ber >= 1.0)
        throw InvalidParameter("snr_gap_from_ber: BER must lie in (0, 1)");
    const double x = inverse_q(ber / 4.0);
    return x * x / 3.0;
}

} // namespace bitload
