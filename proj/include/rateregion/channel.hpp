// SPDX-License-Identifier: Apache-2.0
//
// n-user Gaussian interference channel with interference treated as noise.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rateregion {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// log2(1 + x), accurate for small SINR.
template <typename Scalar>
inline Scalar log2_1p(Scalar x)
{
    using std::log1p;
    return log1p(x) / std::numbers::ln2_v<Scalar>;
}

/// 2^r - 1, accurate for small rates.
template <typename Scalar>
inline Scalar exp2_m1(Scalar r)
{
    using std::expm1;
    return expm1(r * std::numbers::ln2_v<Scalar>);
}

/// Physical channel. gains(i, j) is the power gain seen at receiver i from
/// transmitter j, on a linear scale.
template <typename Scalar = double>
struct ChannelSpec {
    MatrixX<Scalar> gains;
    Scalar noise_power{1};
    Scalar p_max{1};

    ChannelSpec() = default;

    ChannelSpec(MatrixX<Scalar> g, Scalar noise, Scalar pmax)
        : gains(std::move(g)), noise_power(noise), p_max(pmax)
    {
        validate();
    }

    Eigen::Index n() const { return gains.rows(); }

    void validate() const
    {
        if (gains.rows() < 1 || gains.rows() != gains.cols())
            throw std::invalid_argument("ChannelSpec: gain matrix must be square with n >= 1");
        if (!gains.allFinite() || (gains.array() < Scalar(0)).any())
            throw std::invalid_argument("ChannelSpec: gains must be finite and nonnegative");
        if (!(noise_power > Scalar(0)) || !std::isfinite(double(noise_power)))
            throw std::invalid_argument("ChannelSpec: noise_power must be positive");
        if (!(p_max > Scalar(0)) || !std::isfinite(double(p_max)))
            throw std::invalid_argument("ChannelSpec: p_max must be positive");
    }
};

template <typename Scalar = double>
struct PowerVector {
    VectorX<Scalar> powers;

    Eigen::Index size() const { return powers.size(); }
    Scalar operator[](Eigen::Index i) const { return powers[i]; }
};

template <typename Scalar = double>
struct RatePoint {
    VectorX<Scalar> rates;

    Eigen::Index size() const { return rates.size(); }
    Scalar operator[](Eigen::Index i) const { return rates[i]; }
};

/// Noise-normalized two-user gains: a = g11, b = g12, c = g22, d = g21 (all over sigma^2).
template <typename Scalar = double>
struct NormalizedTwoUser {
    Scalar a{0};
    Scalar b{0};
    Scalar c{0};
    Scalar d{0};
    Scalar p_max{1};

    void validate() const
    {
        for (Scalar g : {a, b, c, d})
            if (!(g >= Scalar(0)) || !std::isfinite(double(g)))
                throw std::invalid_argument("NormalizedTwoUser: gains must be finite and nonnegative");
        if (!(p_max > Scalar(0)) || !std::isfinite(double(p_max)))
            throw std::invalid_argument("NormalizedTwoUser: p_max must be positive");
    }

    /// Equivalent physical channel with unit noise.
    ChannelSpec<Scalar> to_channel() const
    {
        MatrixX<Scalar> g(2, 2);
        g << a, b, d, c;
        return ChannelSpec<Scalar>(std::move(g), Scalar(1), p_max);
    }
};

template <typename Scalar>
void check_power_vector(const ChannelSpec<Scalar> &spec, const PowerVector<Scalar> &p)
{
    if (p.size() != spec.n())
        throw std::invalid_argument("PowerVector: length " + std::to_string(p.size()) +
                                    " does not match channel size " + std::to_string(spec.n()));
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (!(p[i] >= Scalar(0)) || !(p[i] <= spec.p_max))
            throw std::invalid_argument("PowerVector: entry " + std::to_string(i) +
                                        " outside [0, p_max]");
}

/// Per-link rates in bits per channel use. Does not validate; `powers` must
/// have length spec.n().
template <typename Scalar, typename Derived>
VectorX<Scalar> rates_unchecked(const ChannelSpec<Scalar> &spec, const Eigen::MatrixBase<Derived> &powers)
{
    const auto own = spec.gains.diagonal().cwiseProduct(powers);
    const VectorX<Scalar> interference =
        (spec.gains * powers - own).array() + spec.noise_power;
    VectorX<Scalar> out(spec.n());
    for (Eigen::Index i = 0; i < spec.n(); ++i)
        out[i] = log2_1p<Scalar>(own[i] / interference[i]);
    return out;
}

template <typename Scalar>
RatePoint<Scalar> rate_tuple(const ChannelSpec<Scalar> &spec, const PowerVector<Scalar> &p)
{
    check_power_vector(spec, p);
    return {rates_unchecked(spec, p.powers)};
}

template <typename Scalar>
NormalizedTwoUser<Scalar> normalize(const ChannelSpec<Scalar> &spec)
{
    if (spec.n() != 2)
        throw std::invalid_argument("normalize: requires a two-user channel, got n = " +
                                    std::to_string(spec.n()));
    const Scalar s = spec.noise_power;
    return {spec.gains(0, 0) / s, spec.gains(0, 1) / s, spec.gains(1, 1) / s,
            spec.gains(1, 0) / s, spec.p_max};
}

// Two-user rates in normalized form.

template <typename Scalar>
Scalar rate1(const NormalizedTwoUser<Scalar> &ch, Scalar p1, Scalar p2)
{
    return log2_1p<Scalar>(ch.a * p1 / (Scalar(1) + ch.b * p2));
}

template <typename Scalar>
Scalar rate2(const NormalizedTwoUser<Scalar> &ch, Scalar p1, Scalar p2)
{
    return log2_1p<Scalar>(ch.c * p2 / (Scalar(1) + ch.d * p1));
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> rate_pair(const NormalizedTwoUser<Scalar> &ch, Scalar p1, Scalar p2)
{
    return {rate1(ch, p1, p2), rate2(ch, p1, p2)};
}

using Channel = ChannelSpec<double>;
using Powers = PowerVector<double>;
using Rates = RatePoint<double>;
using TwoUser = NormalizedTwoUser<double>;

} // namespace rateregion
