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

#include "bitload/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace bitload {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Eigen::Index;

/// Power-delay profile used when drawing multipath taps.
enum class DelayProfile {
    equal,       ///< sigma^2 = 1/L for every tap
    exponential  ///< sigma^2 proportional to exp(-tau / (tau_max / 4))
};

/// One user's multipath impulse response: L taps with complex amplitude,
/// delay in seconds, and average power. Powers sum to one.
template <typename Scalar = double>
struct TapSet {
    ComplexVector<Scalar> amplitudes;
    Vector<Scalar> delays;
    Vector<Scalar> powers;

    Index size() const { return delays.size(); }
};

/// Cell and link parameters shared by every user of a realization.
struct SystemParams {
    Index n_subcarriers = 1024;
    Index n_users = 8;
    double total_bandwidth = 2.0e6;                      // Hz
    double noise_density = 3.981071705534973e-21;        // W/Hz, -174 dBm/Hz
    double cell_radius = 1000.0;                         // m
    double pathloss_exponent = 4.0;
    double tau_max = 2.5e-6;                             // s
    Index num_taps = 10;
    double min_distance = 10.0;                          // m
    DelayProfile profile = DelayProfile::equal;

    double subchannel_bandwidth() const { return total_bandwidth / static_cast<double>(n_subcarriers); }
    Index block_size() const { return n_subcarriers / n_users; }

    void validate() const
    {
        if (n_users < 1 || n_subcarriers < n_users)
            throw InvalidParameter("need N >= K >= 1");
        if (n_subcarriers % n_users != 0)
            throw InvalidParameter("N must be divisible by K");
        if (!(total_bandwidth > 0.0))
            throw InvalidParameter("total bandwidth must be positive");
        if (!(noise_density > 0.0))
            throw InvalidParameter("noise density must be positive");
        if (!(cell_radius > min_distance) || !(min_distance > 0.0))
            throw InvalidParameter("cell radius must exceed the minimum user distance");
        if (!(pathloss_exponent >= 0.0))
            throw InvalidParameter("path-loss exponent must be nonnegative");
        if (!(tau_max > 0.0))
            throw InvalidParameter("tau_max must be positive");
        if (num_taps < 1)
            throw InvalidParameter("need at least one tap");
    }
};

/// Frequency-domain channel for all users on one OFDMA symbol. Row k holds
/// user k's contiguous block of N/K subcarriers.
template <typename Scalar = double>
struct ChannelRealization {
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> coefficients;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gains;
    Vector<Scalar> user_distances;
    std::vector<Index> assignment;  // subcarrier -> user, 0-based
    std::vector<TapSet<Scalar>> taps;

    Index n_users() const { return gains.rows(); }
    Index block_size() const { return gains.cols(); }
};

/// Tap powers for the selected profile, normalised to sum one.
template <typename Scalar>
Vector<Scalar> profile_powers(const Vector<Scalar>& delays, Scalar tau_max, DelayProfile profile)
{
    Vector<Scalar> powers(delays.size());
    switch (profile) {
        case DelayProfile::equal:
            powers.setConstant(Scalar(1) / static_cast<Scalar>(delays.size()));
            break;
        case DelayProfile::exponential: {
            const Scalar decay = tau_max / Scalar(4);
            powers = (-delays.array() / decay).exp().matrix();
            powers /= powers.sum();
            break;
        }
    }
    return powers;
}

/// Circularly-symmetric complex Gaussian amplitudes, tap i with variance powers[i].
template <typename Scalar, typename Rng>
ComplexVector<Scalar> draw_amplitudes(Rng& rng, const Vector<Scalar>& powers)
{
    std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
    ComplexVector<Scalar> amplitudes(powers.size());
    for (Index i = 0; i < powers.size(); ++i) {
        const Scalar sd = std::sqrt(powers[i] / Scalar(2));
        const Scalar re = normal(rng);
        const Scalar im = normal(rng);
        amplitudes[i] = std::complex<Scalar>(sd * re, sd * im);
    }
    return amplitudes;
}

/// Draws L taps: delays i.i.d. uniform on [0, tau_max] sorted ascending,
/// powers from the profile, amplitudes complex Gaussian.
template <typename Scalar = double, typename Rng>
TapSet<Scalar> draw_taps(Rng& rng, Index num_taps, Scalar tau_max, DelayProfile profile = DelayProfile::equal)
{
    if (num_taps < 1)
        throw InvalidParameter("draw_taps: L must be at least 1");
    if (!(tau_max > Scalar(0)))
        throw InvalidParameter("draw_taps: tau_max must be positive");

    std::uniform_real_distribution<Scalar> uniform(Scalar(0), tau_max);
    TapSet<Scalar> taps;
    taps.delays.resize(num_taps);
    for (Index i = 0; i < num_taps; ++i)
        taps.delays[i] = uniform(rng);
    std::sort(taps.delays.begin(), taps.delays.end());
    taps.powers = profile_powers<Scalar>(taps.delays, tau_max, profile);
    taps.amplitudes = draw_amplitudes<Scalar>(rng, taps.powers);
    return taps;
}

/// R_n = sum_i a_i exp(-j 2 pi f_n tau_i) for every requested frequency.
template <typename Scalar>
ComplexVector<Scalar> freq_response(const TapSet<Scalar>& taps, const Vector<Scalar>& frequencies)
{
    if (frequencies.size() == 0)
        throw InvalidParameter("freq_response: no frequencies");
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> phase =
        -two_pi * frequencies * taps.delays.transpose();
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> kernel =
        phase.unaryExpr([](Scalar x) { return std::polar(Scalar(1), x); });
    return kernel * taps.amplitudes;
}

/// Correlation E[R_n R_m^*] / E|R_n|^2 for two subcarriers separated by
/// freq_gap = f_m - f_n. Dividing by the summed tap power makes a zero gap
/// give exactly 1.
template <typename Scalar>
std::complex<Scalar> subchannel_correlation(const Vector<Scalar>& powers, const Vector<Scalar>& delays, Scalar freq_gap)
{
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    std::complex<Scalar> rho(0, 0);
    Scalar total(0);
    for (Index i = 0; i < powers.size(); ++i) {
        rho += powers[i] * std::polar(Scalar(1), two_pi * delays[i] * freq_gap);
        total += powers[i];
    }
    return rho / total;
}

/// Contiguous equal blocks: subcarrier n belongs to user n / (N/K).
inline std::vector<Index> assign_subcarriers(Index n_subcarriers, Index n_users)
{
    if (n_users < 1 || n_subcarriers < n_users || n_subcarriers % n_users != 0)
        throw InvalidParameter("assign_subcarriers: K must divide N");
    const Index block = n_subcarriers / n_users;
    std::vector<Index> owner(static_cast<std::size_t>(n_subcarriers));
    for (Index n = 0; n < n_subcarriers; ++n)
        owner[static_cast<std::size_t>(n)] = n / block;
    return owner;
}

/// Baseband centre frequencies n*B of user k's block.
template <typename Scalar = double>
Vector<Scalar> block_frequencies(const SystemParams& params, Index user)
{
    const Index block = params.block_size();
    const Scalar spacing = static_cast<Scalar>(params.subchannel_bandwidth());
    Vector<Scalar> freqs(block);
    for (Index i = 0; i < block; ++i)
        freqs[i] = static_cast<Scalar>(user * block + i) * spacing;
    return freqs;
}

/// Uniform position over the annulus [min_distance, cell_radius].
template <typename Scalar = double, typename Rng>
Scalar draw_distance(Rng& rng, const SystemParams& params)
{
    std::uniform_real_distribution<Scalar> uniform(Scalar(0), Scalar(1));
    const Scalar r2 = static_cast<Scalar>(params.cell_radius * params.cell_radius);
    const Scalar d2 = static_cast<Scalar>(params.min_distance * params.min_distance);
    return std::sqrt(d2 + uniform(rng) * (r2 - d2));
}

/// Path-loss-scaled coefficients h = R * d^(-xi/2) for one user.
template <typename Scalar>
ComplexVector<Scalar> user_coefficients(const TapSet<Scalar>& taps, Scalar distance, const Vector<Scalar>& frequencies,
                                        const SystemParams& params)
{
    const Scalar amplitude_loss = std::pow(distance, -static_cast<Scalar>(params.pathloss_exponent) / Scalar(2));
    return freq_response(taps, frequencies) * amplitude_loss;
}

/// delta = |h|^2 / (N0 B).
template <typename Scalar>
Vector<Scalar> normalized_gains(const ComplexVector<Scalar>& coefficients, const SystemParams& params)
{
    const Scalar noise = static_cast<Scalar>(params.noise_density * params.subchannel_bandwidth());
    return coefficients.cwiseAbs2() / noise;
}

/// One statistical channel draw for every user. Per user the random source
/// is consumed as: taps, then position. A draw producing a zero gain is
/// discarded and the user's taps are redrawn.
template <typename Scalar = double, typename Rng>
ChannelRealization<Scalar> realize_channel(const SystemParams& params, Rng& rng)
{
    params.validate();
    const Index users = params.n_users;
    const Index block = params.block_size();

    ChannelRealization<Scalar> out;
    out.coefficients.resize(users, block);
    out.gains.resize(users, block);
    out.user_distances.resize(users);
    out.assignment = assign_subcarriers(params.n_subcarriers, users);
    out.taps.reserve(static_cast<std::size_t>(users));

    for (Index k = 0; k < users; ++k) {
        const Vector<Scalar> freqs = block_frequencies<Scalar>(params, k);
        for (;;) {
            TapSet<Scalar> taps =
                draw_taps<Scalar>(rng, params.num_taps, static_cast<Scalar>(params.tau_max), params.profile);
            const Scalar distance = draw_distance<Scalar>(rng, params);
            const ComplexVector<Scalar> h = user_coefficients(taps, distance, freqs, params);
            const Vector<Scalar> delta = normalized_gains(h, params);
            if ((delta.array() > Scalar(0)).all()) {
                out.coefficients.row(k) = h.transpose();
                out.gains.row(k) = delta.transpose();
                out.user_distances[k] = distance;
                out.taps.push_back(std::move(taps));
                break;
            }
        }
    }
    return out;
}

} // namespace bitload
