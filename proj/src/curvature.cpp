// SPDX-License-Identifier: Apache-2.0

#include "rateregion/curvature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rateregion {

std::string to_string(CurveShape s)
{
    switch (s) {
    case CurveShape::convex:
        return "convex";
    case CurveShape::concave:
        return "concave";
    case CurveShape::inflection:
        return "inflection";
    }
    return "unknown";
}

FrontierClass classify(double q, double p_max)
{
    if (q <= 0.0)
        return {CurveShape::convex, q};
    if (q >= p_max)
        return {CurveShape::concave, q};
    return {CurveShape::inflection, q};
}

CurvatureReport curvature_report(const TwoUser &ch)
{
    ch.validate();
    CurvatureReport r;
    r.theta = theta_of(ch);
    r.beta = beta_of(ch);
    r.q1 = q1_of(ch);
    r.q2 = q2_of(ch);
    r.f2_class = classify(r.q1, ch.p_max);
    r.f1_class = classify(r.q2, ch.p_max);
    if (r.f2_class.shape == CurveShape::inflection)
        r.inflection_f2 = rate_pair(ch, r.q1, ch.p_max);
    if (r.f1_class.shape == CurveShape::inflection)
        r.inflection_f1 = rate_pair(ch, ch.p_max, r.q2);
    return r;
}

namespace {

constexpr double ln2 = std::numbers::ln2;

int sign_of_curvature(double second_difference, double h)
{
    const double estimate = second_difference / (h * h);
    if (std::abs(estimate) <= kCurvatureZero)
        return 0;
    return estimate > 0.0 ? 1 : -1;
}

void check_step(double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("second difference step must be positive");
}

} // namespace

int second_difference_sign(const TwoUser &ch, double c1, double h)
{
    check_step(h);
    if (ch.a == 0.0)
        throw std::invalid_argument("second_difference_sign: F2 is degenerate for a = 0");
    const double p = ch.p_max;
    const double c1_b = rate1(ch, p, p);
    if (c1 - h < 0.0 || c1 + h > c1_b)
        throw std::invalid_argument("second_difference_sign: c1 too close to the boundary of F2");

    // F(c1) = log2(1 + cP/u), u = 1 + k (2^c1 - 1). Each one-sided difference
    // is formed from the increment of u so the cancellation is only in the
    // final sum.
    const double k = ch.d / ch.a * (1.0 + ch.b * p);
    const double u = 1.0 + k * std::expm1(c1 * ln2);
    const double cp = ch.c * p;
    const double base = k * std::exp2(c1);
    auto one_sided = [&](double step) {
        const double du = base * std::expm1(step * ln2);
        return (std::log1p(du / (u + cp)) - std::log1p(du / u)) / ln2;
    };
    return sign_of_curvature(one_sided(h) + one_sided(-h), h);
}

int second_difference_sign_f1(const TwoUser &ch, double c1, double h)
{
    check_step(h);
    if (ch.a == 0.0 || ch.b == 0.0)
        throw std::invalid_argument("second_difference_sign_f1: F1 is vertical or degenerate");
    const double p = ch.p_max;
    const double lo = rate1(ch, p, p);
    const double hi = rate1(ch, p, 0.0);
    if (c1 - h < lo || c1 + h > hi)
        throw std::invalid_argument("second_difference_sign_f1: c1 too close to the boundary of F1");

    // F(c1) = log2(1 + X), X = K (aP / q - 1), q = 2^c1 - 1.
    const double kk = ch.c / (ch.b * (1.0 + ch.d * p));
    const double q = std::expm1(c1 * ln2);
    const double x = kk * (ch.a * p / q - 1.0);
    const double base = std::exp2(c1);
    auto one_sided = [&](double step) {
        const double dq = base * std::expm1(step * ln2);
        const double dx = -kk * ch.a * p * dq / (q * (q + dq));
        return std::log1p(dx / (1.0 + x)) / ln2;
    };
    return sign_of_curvature(one_sided(h) + one_sided(-h), h);
}

} // namespace rateregion
