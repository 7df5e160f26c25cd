// SPDX-License-Identifier: Apache-2.0

#include "rateregion/oracle.hpp"

#include "rateregion/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rateregion {

std::string to_string(ViolationKind k)
{
    switch (k) {
    case ViolationKind::oracle_above_frontier:
        return "oracle_above_frontier";
    case ViolationKind::frontier_dominated:
        return "frontier_dominated";
    case ViolationKind::frontier_unreached:
        return "frontier_unreached";
    }
    return "unknown";
}

int default_oracle_resolution(Eigen::Index n)
{
    if (n <= 2)
        return 101;
    if (n == 3)
        return 26;
    return 11;
}

std::vector<Eigen::Index> pareto_indices(const Eigen::MatrixXd &rates, const Eigen::MatrixXd *powers)
{
    const Eigen::Index dims = rates.rows();
    const Eigen::Index count = rates.cols();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        for (Eigen::Index r = 0; r < dims; ++r)
            if (rates(r, i) != rates(r, j))
                return rates(r, i) > rates(r, j);
        if (powers)
            for (Eigen::Index r = 0; r < powers->rows(); ++r)
                if ((*powers)(r, i) != (*powers)(r, j))
                    return (*powers)(r, i) < (*powers)(r, j);
        return i < j;
    });

    // Anything that dominates or equals a point sorts before it, so one pass
    // against the kept set suffices.
    std::vector<Eigen::Index> kept;
    if (dims == 2) {
        double best = -std::numeric_limits<double>::infinity();
        for (Eigen::Index k : order)
            if (rates(1, k) > best) {
                kept.push_back(k);
                best = rates(1, k);
            }
        return kept;
    }
    for (Eigen::Index k : order) {
        const auto candidate = rates.col(k);
        const bool covered = std::any_of(kept.begin(), kept.end(), [&](Eigen::Index q) {
            return (rates.col(q).array() >= candidate.array()).all();
        });
        if (!covered)
            kept.push_back(k);
    }
    return kept;
}

ParetoCloud pareto_grid(const Channel &spec, int grid_resolution, std::int64_t budget)
{
    spec.validate();
    if (grid_resolution < 2)
        throw std::invalid_argument("pareto_grid: grid resolution must be >= 2");
    const int n = int(spec.n());
    const std::int64_t total = grid_size(grid_resolution, n);
    if (total < 0 || total > budget)
        throw std::length_error("pareto_grid: " + std::to_string(total) +
                                " power tuples exceed the point budget of " + std::to_string(budget));

    Eigen::MatrixXd powers(n, total);
    Eigen::MatrixXd rates(n, total);
    parallel_for(std::size_t(total), [&](std::size_t begin, std::size_t end) {
        Eigen::VectorXd p(n);
        for (std::size_t t = begin; t < end; ++t) {
            std::int64_t rest = std::int64_t(t);
            for (int i = n - 1; i >= 0; --i) {
                p[i] = grid_value(spec.p_max, int(rest % grid_resolution), grid_resolution);
                rest /= grid_resolution;
            }
            powers.col(Eigen::Index(t)) = p;
            rates.col(Eigen::Index(t)) = rates_unchecked(spec, p);
        }
    });

    // Largest rate change per unit power between axis-adjacent grid points.
    const double step = spec.p_max / double(grid_resolution - 1);
    double slope = 0.0;
    std::int64_t stride = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
        for (std::int64_t t = 0; t < total; ++t) {
            if ((t / stride) % grid_resolution == grid_resolution - 1)
                continue;
            const double diff = (rates.col(t + stride) - rates.col(t)).cwiseAbs().maxCoeff();
            slope = std::max(slope, diff / step);
        }
        stride *= grid_resolution;
    }

    const std::vector<Eigen::Index> keep = pareto_indices(rates, &powers);
    ParetoCloud cloud;
    cloud.spec = spec;
    cloud.grid_resolution = grid_resolution;
    cloud.evaluated = total;
    cloud.dominated_count = total - Eigen::Index(keep.size());
    cloud.max_slope = slope;
    cloud.powers.resize(n, Eigen::Index(keep.size()));
    cloud.rates.resize(n, Eigen::Index(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        cloud.powers.col(Eigen::Index(k)) = powers.col(keep[k]);
        cloud.rates.col(Eigen::Index(k)) = rates.col(keep[k]);
    }
    return cloud;
}

double default_tolerance(const ParetoCloud &cloud)
{
    return 2.0 / double(cloud.grid_resolution - 1) * cloud.spec.p_max * cloud.max_slope;
}

Eigen::Index unpinned_count(const ParetoCloud &cloud)
{
    Eigen::Index bad = 0;
    for (Eigen::Index k = 0; k < cloud.size(); ++k) {
        if ((cloud.rates.col(k).array() == 0.0).all())
            continue;
        if (cloud.powers.col(k).maxCoeff() != cloud.spec.p_max)
            ++bad;
    }
    return bad;
}

bool verify_pinned_power_property(const ParetoCloud &cloud)
{
    return unpinned_count(cloud) == 0;
}

namespace {

// Upper concave chain of a planar point set: the boundary of the oracle's
// region once time sharing between grid points is allowed.
class UpperChain {
public:
    explicit UpperChain(const Eigen::MatrixXd &pts)
    {
        std::vector<Eigen::Vector2d> p;
        for (Eigen::Index k = 0; k < pts.cols(); ++k)
            p.emplace_back(pts(0, k), pts(1, k));
        std::sort(p.begin(), p.end(), [](const Eigen::Vector2d &l, const Eigen::Vector2d &r) {
            return l.x() != r.x() ? l.x() < r.x() : l.y() > r.y();
        });
        for (const Eigen::Vector2d &q : p) {
            while (chain_.size() >= 2) {
                const Eigen::Vector2d &o = chain_[chain_.size() - 2];
                const Eigen::Vector2d &a = chain_.back();
                const double turn = (a.x() - o.x()) * (q.y() - o.y()) - (a.y() - o.y()) * (q.x() - o.x());
                if (turn < 0.0)
                    break;
                chain_.pop_back();
            }
            chain_.push_back(q);
        }
    }

    double height(double x) const
    {
        double best = -std::numeric_limits<double>::infinity();
        if (chain_.empty() || x < 0.0)
            return best;
        if (x <= chain_.front().x())
            return chain_.front().y();
        for (std::size_t k = 0; k + 1 < chain_.size(); ++k) {
            const Eigen::Vector2d &l = chain_[k];
            const Eigen::Vector2d &r = chain_[k + 1];
            if (x < l.x() || x > r.x())
                continue;
            const double dx = r.x() - l.x();
            best = std::max(best, dx > 0.0 ? l.y() + (r.y() - l.y()) * (x - l.x()) / dx : std::max(l.y(), r.y()));
        }
        return best;
    }

private:
    std::vector<Eigen::Vector2d> chain_;
};

void check_same_channel(const Channel &x, const Channel &y)
{
    bool same = x.n() == y.n() && x.p_max == y.p_max;
    if (same) {
        const Eigen::MatrixXd gx = x.gains / x.noise_power;
        const Eigen::MatrixXd gy = y.gains / y.noise_power;
        same = ((gx - gy).array().abs() <= 1e-12 * (1.0 + gx.array().abs())).all();
    }
    if (!same)
        throw std::invalid_argument("verify_frontier_dominance: oracle and frontier use different channels");
}

} // namespace

DominanceReport verify_frontier_dominance(const ParetoCloud &cloud, const TwoUserFrontier &frontier, double tol)
{
    if (cloud.spec.n() != 2)
        throw std::invalid_argument("verify_frontier_dominance: two-user frontier needs a two-user cloud");
    if (!(tol >= 0.0))
        throw std::invalid_argument("verify_frontier_dominance: tolerance must be nonnegative");
    check_same_channel(cloud.spec, frontier.channel.to_channel());

    DominanceReport report;
    report.tolerance = tol;
    report.oracle_points = cloud.size();
    report.frontier_points = Eigen::Index(frontier.hull.size());

    for (Eigen::Index k = 0; k < cloud.size(); ++k) {
        const double need = cloud.rates(1, k) - tol;
        const double have = frontier.hull_height(std::max(cloud.rates(0, k) - tol, 0.0));
        if (have < need)
            report.violations.push_back({ViolationKind::oracle_above_frontier, cloud.rates.col(k),
                                         std::isfinite(have) ? need - have : need});
    }

    const UpperChain oracle(cloud.rates);
    for (const HullVertex &v : frontier.hull) {
        const double above = oracle.height(v.rate.x() + tol);
        if (above > v.rate.y() + tol)
            report.violations.push_back({ViolationKind::frontier_dominated, v.rate, above - v.rate.y() - tol});
        const double reach = oracle.height(std::max(v.rate.x() - tol, 0.0));
        if (reach < v.rate.y() - tol)
            report.violations.push_back({ViolationKind::frontier_unreached, v.rate,
                                         std::isfinite(reach) ? v.rate.y() - tol - reach : v.rate.y()});
    }
    return report;
}

DominanceReport verify_frontier_dominance(const ParetoCloud &cloud, const NUserFrontier &frontier, double tol)
{
    if (!(tol >= 0.0))
        throw std::invalid_argument("verify_frontier_dominance: tolerance must be nonnegative");
    check_same_channel(cloud.spec, frontier.spec);

    DominanceReport report;
    report.tolerance = tol;
    report.oracle_points = cloud.size();
    report.frontier_points = Eigen::Index(frontier.pareto.size());

    Eigen::MatrixXd analytic(frontier.all_rates.rows(), Eigen::Index(frontier.pareto.size()));
    for (std::size_t k = 0; k < frontier.pareto.size(); ++k)
        analytic.col(Eigen::Index(k)) = frontier.all_rates.col(frontier.pareto[k]);

    // Smallest over `set` of the largest shortfall of a column below `x`.
    auto shortfall = [](const Eigen::MatrixXd &set, const Eigen::VectorXd &x) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < set.cols(); ++k)
            best = std::min(best, (x - set.col(k)).maxCoeff());
        return best;
    };

    for (Eigen::Index k = 0; k < cloud.size(); ++k) {
        const double gap = shortfall(analytic, cloud.rates.col(k));
        if (gap > tol)
            report.violations.push_back({ViolationKind::oracle_above_frontier, cloud.rates.col(k), gap - tol});
    }
    for (Eigen::Index k = 0; k < analytic.cols(); ++k) {
        const Eigen::VectorXd s = analytic.col(k);
        double lead = -std::numeric_limits<double>::infinity();
        for (Eigen::Index q = 0; q < cloud.size(); ++q)
            lead = std::max(lead, (cloud.rates.col(q) - s).minCoeff());
        if (lead > tol)
            report.violations.push_back({ViolationKind::frontier_dominated, s, lead - tol});
        const double gap = shortfall(cloud.rates, s);
        if (gap > tol)
            report.violations.push_back({ViolationKind::frontier_unreached, s, gap - tol});
    }
    return report;
}

} // namespace rateregion
