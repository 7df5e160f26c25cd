// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference: evaluate every tuple of an inclusive power grid and
// keep the rate points that no other grid point dominates.

#pragma once

#include "rateregion/channel.hpp"
#include "rateregion/frontier2.hpp"
#include "rateregion/nuser.hpp"

#include <string>
#include <vector>

namespace rateregion {

struct ParetoCloud {
    Channel spec;
    int grid_resolution = 0;
    Eigen::MatrixXd powers; // n x k, Pareto-optimal grid points
    Eigen::MatrixXd rates;
    Eigen::Index evaluated = 0;
    Eigen::Index dominated_count = 0;
    double max_slope = 0.0; // largest |dC_i| / dP_j between axis-adjacent grid points

    Eigen::Index size() const { return rates.cols(); }
};

/// Columns of `rates` that are not dominated (>= in every coordinate, > in at
/// least one) by another column. Among identical rate columns the one with the
/// lexicographically smallest `powers` column is kept (first column if
/// `powers` is null). Output is sorted by decreasing rates.
std::vector<Eigen::Index> pareto_indices(const Eigen::MatrixXd &rates, const Eigen::MatrixXd *powers = nullptr);

/// Default per-axis resolution: 101 for n = 2, 26 for n = 3, 11 otherwise.
int default_oracle_resolution(Eigen::Index n);

ParetoCloud pareto_grid(const Channel &spec, int grid_resolution, std::int64_t budget = kDefaultPointBudget);

/// Rate-space discretization tolerance: 2 / (resolution - 1) * Pmax scaled by
/// the cloud's largest finite-difference slope.
double default_tolerance(const ParetoCloud &cloud);

enum class ViolationKind {
    oracle_above_frontier, // an achievable grid point lies outside the analytic frontier
    frontier_dominated,    // the oracle (with time sharing) beats an analytic point
    frontier_unreached,    // no oracle point comes near an analytic point
};

std::string to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    Eigen::VectorXd rate;
    double excess = 0.0; // amount beyond the tolerance
};

struct DominanceReport {
    double tolerance = 0.0;
    Eigen::Index oracle_points = 0;
    Eigen::Index frontier_points = 0;
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
};

DominanceReport verify_frontier_dominance(const ParetoCloud &cloud, const TwoUserFrontier &frontier, double tol);
DominanceReport verify_frontier_dominance(const ParetoCloud &cloud, const NUserFrontier &frontier, double tol);

/// Every Pareto point has at least one transmitter at exactly Pmax (points
/// with all-zero rates are exempt).
bool verify_pinned_power_property(const ParetoCloud &cloud);

/// Number of cloud points that violate the pinned-power property.
Eigen::Index unpinned_count(const ParetoCloud &cloud);

} // namespace rateregion
