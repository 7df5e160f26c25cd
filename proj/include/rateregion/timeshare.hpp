// SPDX-License-Identifier: Apache-2.0
//
// Time-sharing structure of the two-user rate region.

#pragma once

#include "rateregion/curvature.hpp"
#include "rateregion/frontier2.hpp"

#include <string>
#include <vector>

namespace rateregion {

struct AcConditionTerms {
    double lhs = 0.0;   // (1 + cP)(1 + dP) / (1 + cP + dP)
    double rhs = 0.0;   // ((1 + aP + bP) / (1 + bP))^gamma
    double gamma = 0.0; // log2(1 + cP) / log2(1 + aP)
};

AcConditionTerms ac_condition_terms(const TwoUser &ch);

/// True when time sharing directly between A and C is at least as good as
/// passing through B. Meaningful when both frontier lines are convex.
bool ac_timeshare_condition(const TwoUser &ch);

/// Cross gain above which a symmetric channel should run one transmitter at a
/// time: sqrt(1 + a Pmax) / Pmax.
double symmetric_bstar(double a, double p_max);

struct OperatingPoint {
    std::string name;
    Eigen::Vector2d power;
    Eigen::Vector2d rate;
};

enum class SegmentKind { curve, line };

/// One piece of the schedule's frontier, oriented by increasing C1.
///
/// A `curve` runs along frontier line F_{pinned_index} between `start` and
/// `end`. A `line` is a time-sharing chord: the rate start + t (end - start)
/// is realized by spending a fraction (1 - t) of the time in the start state
/// and t in the end state.
struct ScheduleSegment {
    SegmentKind kind = SegmentKind::curve;
    int pinned_index = 0; // curves only
    OperatingPoint start;
    OperatingPoint end;
    Eigen::Matrix2Xd rates; // polyline vertices, including both endpoints

    /// Chord parameter t for a target c1 (line segments only).
    double fraction_for_c1(double c1) const;
};

struct TimeShareSchedule {
    std::vector<ScheduleSegment> segments;
    std::vector<OperatingPoint> anchors; // named points used by the schedule
    double area = 0.0;                   // area under the piecewise frontier

    /// Polyline through every segment vertex, from the C2 axis to the C1 axis.
    Eigen::Matrix2Xd vertices() const;
    std::size_t line_count() const;
};

TimeShareSchedule build_schedule(const TwoUser &ch, const CurvatureReport &report,
                                 const TwoUserFrontier &frontier);

std::string to_string(SegmentKind k);

} // namespace rateregion
