// SPDX-License-Identifier: Apache-2.0

#include "rateregion/frontier2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rateregion {

namespace {

void check_resolution(int resolution)
{
    if (resolution < 2)
        throw std::invalid_argument("frontier resolution must be >= 2");
}

void fill_rates(const TwoUser &ch, FrontierSample &s)
{
    s.rates.resize(2, s.powers.cols());
    for (Eigen::Index k = 0; k < s.powers.cols(); ++k)
        s.rates.col(k) = rate_pair(ch, s.powers(0, k), s.powers(1, k));
}

// Uniform parameter in [lo, hi] with both endpoints exact.
double lerp_exact(double lo, double hi, int k, int count)
{
    if (k == 0)
        return lo;
    if (k == count - 1)
        return hi;
    return lo + (hi - lo) * double(k) / double(count - 1);
}

} // namespace

AnchorPoints anchor_points(const TwoUser &ch)
{
    const double p = ch.p_max;
    return {rate_pair(ch, 0.0, p), rate_pair(ch, p, p), rate_pair(ch, p, 0.0)};
}

FrontierSample frontier_f2(const TwoUser &ch, int resolution)
{
    ch.validate();
    check_resolution(resolution);
    const double p = ch.p_max;
    FrontierSample s;
    s.pinned_index = 2;
    s.sweep_resolution = resolution;
    s.powers.resize(2, resolution);
    s.powers.row(1).setConstant(p);

    if (ch.a == 0.0) {
        // C1 is identically zero; the line collapses onto the C2 axis.
        for (int k = 0; k < resolution; ++k)
            s.powers(0, k) = lerp_exact(0.0, p, k, resolution);
    } else {
        const double c1_b = rate1(ch, p, p);
        for (int k = 0; k < resolution; ++k) {
            const double p1 = p1_for_target_rate(ch, lerp_exact(0.0, c1_b, k, resolution), p);
            s.powers(0, k) = std::clamp(p1, 0.0, p);
        }
        s.powers(0, resolution - 1) = p;
    }
    fill_rates(ch, s);
    return s;
}

FrontierSample frontier_f1(const TwoUser &ch, int resolution)
{
    ch.validate();
    check_resolution(resolution);
    const double p = ch.p_max;
    FrontierSample s;
    s.pinned_index = 1;
    s.sweep_resolution = resolution;
    s.powers.resize(2, resolution);
    s.powers.row(0).setConstant(p);

    if (ch.a == 0.0 || ch.b == 0.0) {
        // C1 does not depend on P2: sweep P2 directly from Pmax (B) down to 0 (C).
        for (int k = 0; k < resolution; ++k)
            s.powers(1, k) = lerp_exact(p, 0.0, k, resolution);
    } else {
        const double c1_b = rate1(ch, p, p);
        const double c1_c = rate1(ch, p, 0.0);
        for (int k = 0; k < resolution; ++k) {
            const double c1 = lerp_exact(c1_b, c1_c, k, resolution);
            s.powers(1, k) = std::clamp(f1_p2_for_rate(ch, c1), 0.0, p);
        }
        s.powers(1, 0) = p;
        s.powers(1, resolution - 1) = 0.0;
    }
    fill_rates(ch, s);
    return s;
}

std::vector<Eigen::Index> upper_hull(const Eigen::Matrix2Xd &points, double grid)
{
    const Eigen::Index n = points.cols();
    std::vector<std::int64_t> x(n), y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        x[k] = std::llround(points(0, k) / grid);
        y[k] = std::llround(points(1, k) / grid);
    }
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return x[i] != x[j] ? x[i] < x[j] : y[i] > y[j];
    });
    // Drop exact rounded duplicates, keeping the first occurrence.
    order.erase(std::unique(order.begin(), order.end(),
                            [&](Eigen::Index i, Eigen::Index j) { return x[i] == x[j] && y[i] == y[j]; }),
                order.end());

    auto cross = [&](Eigen::Index o, Eigen::Index a, Eigen::Index b) {
        const __int128 ax = x[a] - x[o], ay = y[a] - y[o];
        const __int128 bx = x[b] - x[o], by = y[b] - y[o];
        return ax * by - ay * bx;
    };

    std::vector<Eigen::Index> hull;
    for (Eigen::Index k : order) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), k) >= 0)
            hull.pop_back();
        hull.push_back(k);
    }
    return hull;
}

bool TwoUserFrontier::on_hull(int curve, Eigen::Index index) const
{
    return std::any_of(hull.begin(), hull.end(),
                       [&](const HullVertex &v) { return v.curve == curve && v.index == index; });
}

double TwoUserFrontier::hull_height(double c1) const
{
    double best = -std::numeric_limits<double>::infinity();
    if (hull.empty())
        return best;
    if (hull.size() == 1)
        return c1 >= 0.0 && c1 <= hull.front().rate.x() ? hull.front().rate.y() : best;
    if (c1 < 0.0)
        return best;
    if (c1 <= hull.front().rate.x())
        return hull.front().rate.y();
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const Eigen::Vector2d &l = hull[k].rate;
        const Eigen::Vector2d &r = hull[k + 1].rate;
        if (c1 < l.x() || c1 > r.x())
            continue;
        const double dx = r.x() - l.x();
        const double h = dx > 0.0 ? l.y() + (r.y() - l.y()) * (c1 - l.x()) / dx : std::max(l.y(), r.y());
        best = std::max(best, h);
    }
    return best;
}

TwoUserFrontier two_user_frontier(const TwoUser &ch, int resolution)
{
    TwoUserFrontier out;
    out.channel = ch;
    out.f2 = frontier_f2(ch, resolution);
    out.f1 = frontier_f1(ch, resolution);
    out.anchors = anchor_points(ch);

    const Eigen::Index m2 = out.f2.size();
    const Eigen::Index m1 = out.f1.size();
    Eigen::Matrix2Xd all(2, m2 + m1);
    all << out.f2.rates, out.f1.rates;

    for (Eigen::Index k : upper_hull(all)) {
        HullVertex v;
        if (k < m2) {
            v.curve = 2;
            v.index = k;
            v.power = out.f2.powers.col(k);
        } else {
            v.curve = 1;
            v.index = k - m2;
            v.power = out.f1.powers.col(k - m2);
        }
        v.rate = all.col(k);
        out.hull.push_back(v);
    }
    return out;
}

} // namespace rateregion
