// SPDX-License-Identifier: Apache-2.0
//
// Curvature classification of the two-user frontier lines.
//
// Along F2 (P2 = Pmax) the sign of the second derivative of C2 with respect
// to c1 equals sign(P1 - Q1), where
//
//   theta = d (1 + b Pmax),  Q1 = (Re sqrt((a - theta)(a - theta + a c Pmax)) - theta) / (a d).
//
// Swapping the roles of the users (a <-> c, b <-> d, P1 <-> P2) gives Q2 and
// beta = b (1 + d Pmax) for F1.

#pragma once

#include "rateregion/channel.hpp"

#include <limits>
#include <optional>
#include <string>

namespace rateregion {

enum class CurveShape { convex, concave, inflection };

std::string to_string(CurveShape s);

/// Shape of one frontier line. For `inflection`, `at_power` is the power of
/// the free transmitter where the curvature changes sign.
struct FrontierClass {
    CurveShape shape = CurveShape::convex;
    double at_power = 0.0;
};

namespace detail {

// Q for a line whose free transmitter has own gain `own` and causes
// interference `cross` at the other receiver; `theta` carries the other
// cross gain.
template <typename Scalar>
Scalar inflection_power(Scalar own, Scalar other_own, Scalar theta, Scalar cross, Scalar p_max)
{
    using std::sqrt;
    if (cross == Scalar(0))
        return std::numeric_limits<Scalar>::infinity();
    if (own == Scalar(0)) {
        // Limit as own -> 0+.
        return -(Scalar(2) + other_own * p_max) / (Scalar(2) * cross);
    }
    const Scalar radicand = (own - theta) * (own - theta + own * other_own * p_max);
    const Scalar root = radicand > Scalar(0) ? sqrt(radicand) : Scalar(0);
    return (root - theta) / (own * cross);
}

} // namespace detail

template <typename Scalar>
Scalar theta_of(const NormalizedTwoUser<Scalar> &ch)
{
    return ch.d + ch.d * ch.b * ch.p_max;
}

template <typename Scalar>
Scalar beta_of(const NormalizedTwoUser<Scalar> &ch)
{
    return ch.b + ch.b * ch.d * ch.p_max;
}

/// Q1. +inf when d = 0 (F2 is then concave throughout).
template <typename Scalar>
Scalar q1_of(const NormalizedTwoUser<Scalar> &ch)
{
    return detail::inflection_power(ch.a, ch.c, theta_of(ch), ch.d, ch.p_max);
}

/// Q2. +inf when b = 0.
template <typename Scalar>
Scalar q2_of(const NormalizedTwoUser<Scalar> &ch)
{
    return detail::inflection_power(ch.c, ch.a, beta_of(ch), ch.b, ch.p_max);
}

FrontierClass classify(double q, double p_max);

struct CurvatureReport {
    double theta = 0.0;
    double beta = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    FrontierClass f2_class;
    FrontierClass f1_class;
    std::optional<Eigen::Vector2d> inflection_f2; // E = Phi(Q1, Pmax)
    std::optional<Eigen::Vector2d> inflection_f1; // Phi(Pmax, Q2)
};

CurvatureReport curvature_report(const TwoUser &ch);

constexpr double kDefaultCurvatureStep = 1e-4;
constexpr double kCurvatureZero = 1e-7;

/// Sign of the central second difference of F2 at c1, estimated as
/// (F(c1 + h) - 2 F(c1) + F(c1 - h)) / h^2 and reported as 0 when its
/// magnitude is within kCurvatureZero. Throws if c1 -/+ h leaves F2's domain.
int second_difference_sign(const TwoUser &ch, double c1, double h = kDefaultCurvatureStep);

/// Same for F1 (C2 as a function of c1 on [C1(Pmax,Pmax), C1(Pmax,0)]).
/// Requires b > 0.
int second_difference_sign_f1(const TwoUser &ch, double c1, double h = kDefaultCurvatureStep);

} // namespace rateregion
