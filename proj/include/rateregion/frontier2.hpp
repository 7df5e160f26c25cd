// SPDX-License-Identifier: Apache-2.0
//
// Two-user frontier: the potential lines F2 = Phi(:, Pmax) and F1 = Phi(Pmax, :)
// and the upper-right convex hull of their union.

#pragma once

#include "rateregion/channel.hpp"

#include <string>
#include <vector>

namespace rateregion {

/// P1 that achieves C1 = r for a given P2. The result may exceed p_max.
template <typename Scalar>
Scalar p1_for_target_rate(const NormalizedTwoUser<Scalar> &ch, Scalar r, Scalar p2)
{
    if (!(r >= Scalar(0)))
        throw std::invalid_argument("p1_for_target_rate: target rate must be nonnegative");
    if (r == Scalar(0))
        return Scalar(0);
    if (ch.a == Scalar(0))
        throw std::invalid_argument("p1_for_target_rate: a = 0 cannot reach a positive rate");
    return (Scalar(1) + ch.b * p2) * exp2_m1(r) / ch.a;
}

/// SINR of link 2 along the locus C1 = r, written as in the monotonicity
/// argument: g(P2) = a c P2 / (a + d (1 + b P2)(2^r - 1)).
template <typename Scalar>
Scalar constant_rate_sinr(const NormalizedTwoUser<Scalar> &ch, Scalar r, Scalar p2)
{
    const Scalar q = exp2_m1(r);
    return ch.a * ch.c * p2 / (ch.a + ch.d * (Scalar(1) + ch.b * p2) * q);
}

/// Closed-form dg/dP2 = ac (a + d q) / (a + d (1 + b P2) q)^2 with q = 2^r - 1.
template <typename Scalar>
Scalar constant_rate_sinr_slope(const NormalizedTwoUser<Scalar> &ch, Scalar r, Scalar p2)
{
    const Scalar q = exp2_m1(r);
    const Scalar den = ch.a + ch.d * (Scalar(1) + ch.b * p2) * q;
    return ch.a * ch.c * (ch.a + ch.d * q) / (den * den);
}

/// C2 as a function of P2 on the constant-rate locus C1 = r.
template <typename Scalar>
Scalar c2_given_p2(const NormalizedTwoUser<Scalar> &ch, Scalar r, Scalar p2)
{
    if (ch.a == Scalar(0))
        throw std::invalid_argument("c2_given_p2: undefined for a = 0");
    if (!(p2 >= Scalar(0)))
        throw std::invalid_argument("c2_given_p2: p2 must be nonnegative");
    const Scalar q = exp2_m1(r);
    return log2_1p<Scalar>(ch.c * p2 / (Scalar(1) + ch.d / ch.a * (Scalar(1) + ch.b * p2) * q));
}

/// Closed-form F2 curve: C2 as a function of c1 on [0, C1(Pmax, Pmax)].
template <typename Scalar>
Scalar f2_curve(const NormalizedTwoUser<Scalar> &ch, Scalar c1)
{
    const Scalar p = ch.p_max;
    return log2_1p<Scalar>(ch.c * p / (Scalar(1) + ch.d / ch.a * (Scalar(1) + ch.b * p) * exp2_m1(c1)));
}

/// Closed-form F1 curve: C2 as a function of c1 on [C1(Pmax, Pmax), C1(Pmax, 0)].
template <typename Scalar>
Scalar f1_curve(const NormalizedTwoUser<Scalar> &ch, Scalar c1)
{
    const Scalar p = ch.p_max;
    const Scalar q = exp2_m1(c1);
    return log2_1p<Scalar>(ch.c / ch.b * (ch.a * p - q) / (q * (Scalar(1) + ch.d * p)));
}

/// P2 on F1 that yields C1 = c1 with P1 = Pmax. Requires b > 0 and c1 > 0.
template <typename Scalar>
Scalar f1_p2_for_rate(const NormalizedTwoUser<Scalar> &ch, Scalar c1)
{
    return (ch.a * ch.p_max / exp2_m1(c1) - Scalar(1)) / ch.b;
}

/// Sampled potential line. Columns of `powers` and `rates` are (P1, P2) and
/// (C1, C2); samples are ordered by increasing C1. pinned_index is 1-based.
struct FrontierSample {
    int pinned_index = 2;
    int sweep_resolution = 0;
    Eigen::Matrix2Xd powers;
    Eigen::Matrix2Xd rates;

    Eigen::Index size() const { return rates.cols(); }
    Powers power(Eigen::Index k) const { return {powers.col(k)}; }
    Rates rate(Eigen::Index k) const { return {rates.col(k)}; }
};

struct HullVertex {
    Eigen::Vector2d power;
    Eigen::Vector2d rate;
    int curve = 0;          // pinned index of the sample it came from
    Eigen::Index index = 0; // sample index within that curve
};

struct AnchorPoints {
    Eigen::Vector2d a; // Phi(0, Pmax)
    Eigen::Vector2d b; // Phi(Pmax, Pmax)
    Eigen::Vector2d c; // Phi(Pmax, 0)
};

struct TwoUserFrontier {
    TwoUser channel;
    FrontierSample f1;
    FrontierSample f2;
    std::vector<HullVertex> hull; // from A (C2 axis) to C (C1 axis)
    AnchorPoints anchors;

    bool on_hull(int curve, Eigen::Index index) const;

    /// Upper boundary C2 as a function of c1 along the hull polyline; -inf
    /// outside [0, C1 of the last vertex].
    double hull_height(double c1) const;
};

constexpr int kDefaultResolution = 512;
constexpr double kRateTolerance = 1e-9;

FrontierSample frontier_f2(const TwoUser &ch, int resolution = kDefaultResolution);
FrontierSample frontier_f1(const TwoUser &ch, int resolution = kDefaultResolution);
TwoUserFrontier two_user_frontier(const TwoUser &ch, int resolution = kDefaultResolution);

AnchorPoints anchor_points(const TwoUser &ch);

/// Indices (into `points`) of the upper-right convex chain, starting at the
/// leftmost-highest point and ending at the rightmost-lowest point. Collinear
/// vertices are dropped; orientation is exact on coordinates rounded to
/// `grid` (default kRateTolerance).
std::vector<Eigen::Index> upper_hull(const Eigen::Matrix2Xd &points, double grid = kRateTolerance);

} // namespace rateregion
