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

#pragma once

namespace bitload {

/// Gaussian tail Q(x) = 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// Inverse of the Gaussian tail for p in (0, 0.5].
double inverse_q(double p);

/// Uncoded M-QAM gap approximation: Gamma = (1/3) [Q^-1(BER / 4)]^2.
double snr_gap_from_ber(double ber);

} // namespace bitload
