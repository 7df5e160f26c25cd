// SPDX-License-Identifier: Apache-2.0
//
// n-user frontier as the union of the n pinned-power hyper-surfaces
// Phi(:, ..., Pmax, ..., :).

#pragma once

#include "rateregion/channel.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace rateregion {

constexpr std::int64_t kDefaultPointBudget = 2'000'000;

/// Grid over [0, Pmax]^(n-1) with transmitter `pinned_index` (1-based) fixed
/// at Pmax. Columns of powers/rates are points, enumerated row-major over the
/// free transmitters in increasing index order (the last one varies fastest).
struct HyperSurfaceSample {
    int pinned_index = 1;
    int grid_resolution = 0;
    Eigen::MatrixXd powers;
    Eigen::MatrixXd rates;

    Eigen::Index size() const { return rates.cols(); }
};

struct NUserFrontier {
    Channel spec;
    std::vector<HyperSurfaceSample> surfaces;
    Eigen::MatrixXd all_powers;      // merged cloud
    Eigen::MatrixXd all_rates;
    std::vector<int> provenance;     // pinned index of each merged point
    std::vector<Eigen::Index> pareto; // columns of the merged cloud that are Pareto-optimal in it
};

/// Inclusive uniform grid value k of `resolution` over [0, p_max].
double grid_value(double p_max, int k, int resolution);

/// resolution^dims, or -1 on overflow.
std::int64_t grid_size(int resolution, int dims);

HyperSurfaceSample sample_surface(const Channel &spec, int pinned, int grid_resolution,
                                  std::int64_t budget = kDefaultPointBudget);

/// Sweeps P_pinned over `sweep` points of [0, Pmax] with the other powers
/// taken from `free_powers` and reports whether C_pinned never decreases.
bool surface_monotone_in_pinned_axis(const Channel &spec, int pinned, const Powers &free_powers,
                                     int sweep = 257);

NUserFrontier n_user_frontier(const Channel &spec, int grid_resolution,
                              std::int64_t budget = kDefaultPointBudget);

/// Two-user channel seen by users i and j (0-based) when every other
/// transmitter k sends the fixed power others[k]; that interference is folded
/// into each receiver's noise before normalizing.
TwoUser effective_two_user(const Channel &spec, int i, int j, const Powers &others);

/// Faces of the convex hull of a 3-D point cloud whose outward normals are
/// componentwise nonnegative (the part facing the Pareto frontier). Each face
/// lists three column indices of `points`, counter-clockwise seen from outside.
/// Returns an empty list for degenerate (coplanar) input.
std::vector<std::array<Eigen::Index, 3>> pareto_hull_3d(const Eigen::Matrix3Xd &points);

} // namespace rateregion
