// SPDX-License-Identifier: Apache-2.0

#include "rateregion/nuser.hpp"

#include "rateregion/oracle.hpp"
#include "rateregion/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace rateregion {

double grid_value(double p_max, int k, int resolution)
{
    if (k == resolution - 1)
        return p_max;
    return p_max * double(k) / double(resolution - 1);
}

std::int64_t grid_size(int resolution, int dims)
{
    std::int64_t total = 1;
    for (int k = 0; k < dims; ++k) {
        if (total > std::numeric_limits<std::int64_t>::max() / resolution)
            return -1;
        total *= resolution;
    }
    return total;
}

namespace {

void check_budget(std::int64_t points, std::int64_t budget)
{
    if (points < 0 || points > budget)
        throw std::length_error("grid of " + (points < 0 ? std::string("overflowing size") : std::to_string(points)) +
                                " power tuples exceeds the point budget of " + std::to_string(budget));
}

} // namespace

HyperSurfaceSample sample_surface(const Channel &spec, int pinned, int grid_resolution, std::int64_t budget)
{
    spec.validate();
    const int n = int(spec.n());
    if (pinned < 1 || pinned > n)
        throw std::invalid_argument("sample_surface: pinned index " + std::to_string(pinned) +
                                    " outside [1, " + std::to_string(n) + "]");
    if (grid_resolution < 2)
        throw std::invalid_argument("sample_surface: grid resolution must be >= 2");
    const std::int64_t count = grid_size(grid_resolution, n - 1);
    check_budget(count, budget);

    HyperSurfaceSample s;
    s.pinned_index = pinned;
    s.grid_resolution = grid_resolution;
    s.powers.resize(n, count);
    s.rates.resize(n, count);

    parallel_for(std::size_t(count), [&](std::size_t begin, std::size_t end) {
        Eigen::VectorXd p(n);
        for (std::size_t t = begin; t < end; ++t) {
            std::int64_t rest = std::int64_t(t);
            for (int i = n - 1; i >= 0; --i) {
                if (i == pinned - 1) {
                    p[i] = spec.p_max;
                    continue;
                }
                p[i] = grid_value(spec.p_max, int(rest % grid_resolution), grid_resolution);
                rest /= grid_resolution;
            }
            s.powers.col(Eigen::Index(t)) = p;
            s.rates.col(Eigen::Index(t)) = rates_unchecked(spec, p);
        }
    });
    return s;
}

bool surface_monotone_in_pinned_axis(const Channel &spec, int pinned, const Powers &free_powers, int sweep)
{
    spec.validate();
    if (pinned < 1 || pinned > spec.n())
        throw std::invalid_argument("surface_monotone_in_pinned_axis: invalid pinned index");
    if (sweep < 2)
        throw std::invalid_argument("surface_monotone_in_pinned_axis: sweep must be >= 2");
    Powers p = free_powers;
    const Eigen::Index i = pinned - 1;
    p.powers[i] = 0.0;
    check_power_vector(spec, p);

    double previous = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < sweep; ++k) {
        p.powers[i] = grid_value(spec.p_max, k, sweep);
        const double c = rates_unchecked(spec, p.powers)[i];
        if (c < previous)
            return false;
        previous = c;
    }
    return true;
}

NUserFrontier n_user_frontier(const Channel &spec, int grid_resolution, std::int64_t budget)
{
    spec.validate();
    const int n = int(spec.n());
    if (grid_resolution < 2)
        throw std::invalid_argument("n_user_frontier: grid resolution must be >= 2");
    const std::int64_t per_surface = grid_size(grid_resolution, n - 1);
    const std::int64_t total = per_surface < 0 || per_surface > budget ? -1 : per_surface * n;
    check_budget(total, budget);

    NUserFrontier f;
    f.spec = spec;
    for (int i = 1; i <= n; ++i)
        f.surfaces.push_back(sample_surface(spec, i, grid_resolution, budget));

    f.all_powers.resize(n, total);
    f.all_rates.resize(n, total);
    Eigen::Index col = 0;
    for (const HyperSurfaceSample &s : f.surfaces) {
        f.all_powers.middleCols(col, s.size()) = s.powers;
        f.all_rates.middleCols(col, s.size()) = s.rates;
        f.provenance.insert(f.provenance.end(), std::size_t(s.size()), s.pinned_index);
        col += s.size();
    }
    f.pareto = pareto_indices(f.all_rates, &f.all_powers);
    return f;
}

TwoUser effective_two_user(const Channel &spec, int i, int j, const Powers &others)
{
    spec.validate();
    if (i < 0 || j < 0 || i >= spec.n() || j >= spec.n() || i == j)
        throw std::invalid_argument("effective_two_user: invalid user pair");
    if (others.size() != spec.n())
        throw std::invalid_argument("effective_two_user: power vector has the wrong length");
    auto lumped_noise = [&](int rx) {
        double noise = spec.noise_power;
        for (Eigen::Index k = 0; k < spec.n(); ++k)
            if (k != i && k != j)
                noise += spec.gains(rx, k) * others[k];
        return noise;
    };
    const double ni = lumped_noise(i);
    const double nj = lumped_noise(j);
    return {spec.gains(i, i) / ni, spec.gains(i, j) / ni, spec.gains(j, j) / nj, spec.gains(j, i) / nj,
            spec.p_max};
}

namespace {

using Face = std::array<Eigen::Index, 3>;

struct Plane {
    Eigen::Vector3d normal;
    double offset = 0.0;

    double distance(const Eigen::Vector3d &x) const { return normal.dot(x) - offset; }
};

Plane plane_of(const Eigen::Matrix3Xd &pts, const Face &f)
{
    const Eigen::Vector3d a = pts.col(f[0]);
    Eigen::Vector3d normal = (pts.col(f[1]) - a).cross(pts.col(f[2]) - a);
    const double len = normal.norm();
    if (len > 0.0)
        normal /= len;
    return {normal, normal.dot(a)};
}

} // namespace

std::vector<Face> pareto_hull_3d(const Eigen::Matrix3Xd &points)
{
    const Eigen::Index n = points.cols();
    if (n < 4)
        return {};
    const double scale = std::max(1.0, points.cwiseAbs().maxCoeff());
    const double eps = 1e-10 * scale;

    // Initial tetrahedron from extreme points.
    Eigen::Index i0 = 0, i1 = 0, i2 = 0, i3 = 0;
    points.row(0).minCoeff(&i0);
    (points.colwise() - points.col(i0)).colwise().squaredNorm().maxCoeff(&i1);
    {
        const Eigen::Vector3d dir = (points.col(i1) - points.col(i0)).normalized();
        double best = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dist = (points.col(k) - points.col(i0)).cross(dir).norm();
            if (dist > best) {
                best = dist;
                i2 = k;
            }
        }
        if (best <= eps)
            return {};
    }
    {
        const Plane base = plane_of(points, {i0, i1, i2});
        double best = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dist = std::abs(base.distance(points.col(k)));
            if (dist > best) {
                best = dist;
                i3 = k;
            }
        }
        if (best <= eps)
            return {};
    }

    const Eigen::Vector3d inside =
        (points.col(i0) + points.col(i1) + points.col(i2) + points.col(i3)) / 4.0;
    std::vector<Face> faces;
    auto add_face = [&](Face f) {
        if (plane_of(points, f).distance(inside) > 0.0)
            std::swap(f[1], f[2]);
        faces.push_back(f);
    };
    add_face({i0, i1, i2});
    add_face({i0, i1, i3});
    add_face({i0, i2, i3});
    add_face({i1, i2, i3});

    for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i0 || k == i1 || k == i2 || k == i3)
            continue;
        const Eigen::Vector3d x = points.col(k);
        std::vector<bool> visible(faces.size());
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            visible[f] = plane_of(points, faces[f]).distance(x) > eps;
            any = any || visible[f];
        }
        if (!any)
            continue;
        std::set<std::pair<Eigen::Index, Eigen::Index>> edges;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (visible[f])
                for (int e = 0; e < 3; ++e)
                    edges.emplace(faces[f][e], faces[f][(e + 1) % 3]);
        std::vector<Face> kept;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f])
                kept.push_back(faces[f]);
        for (const auto &[u, v] : edges)
            if (!edges.count({v, u}))
                kept.push_back({u, v, k});
        faces = std::move(kept);
    }

    std::vector<Face> out;
    for (const Face &f : faces) {
        const Eigen::Vector3d normal = plane_of(points, f).normal;
        if ((normal.array() >= -1e-12).all())
            out.push_back(f);
    }
    return out;
}

} // namespace rateregion
