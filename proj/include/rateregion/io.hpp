// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV forms of channels and results.

#pragma once

#include "rateregion/curvature.hpp"
#include "rateregion/frontier2.hpp"
#include "rateregion/nuser.hpp"
#include "rateregion/oracle.hpp"
#include "rateregion/timeshare.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace rateregion {

using nlohmann::json;

/// Thrown for malformed or invalid input documents.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Accepts {"n", "gains", "noise_power", "p_max"} or the two-user shorthand
/// {"normalized": {"a", "b", "c", "d", "p_max"}} (unit noise). With `db`,
/// every gain, noise_power and p_max is read in dB and converted to linear.
Channel channel_from_json(const json &doc, bool db = false);
Channel parse_channel(std::string_view text, bool db = false);
json channel_to_json(const Channel &spec);

/// 12 significant digits, '.' decimal separator.
std::string csv_number(double x);

void to_json(json &j, const FrontierSample &s);
void from_json(const json &j, FrontierSample &s);
void to_json(json &j, const TwoUserFrontier &f);
void from_json(const json &j, TwoUserFrontier &f);
void to_json(json &j, const CurvatureReport &r);
void from_json(const json &j, CurvatureReport &r);
void to_json(json &j, const TimeShareSchedule &s);
void from_json(const json &j, TimeShareSchedule &s);
void to_json(json &j, const HyperSurfaceSample &s);
void from_json(const json &j, HyperSurfaceSample &s);
void to_json(json &j, const ParetoCloud &c);
void from_json(const json &j, ParetoCloud &c);
void to_json(json &j, const DominanceReport &r);
void from_json(const json &j, DominanceReport &r);

/// Columns P1, P2, C1, C2, on_hull: F2 samples followed by F1 samples.
void write_frontier_csv(std::ostream &os, const TwoUserFrontier &f);
/// Columns P_1..P_n, C_1..C_n, pinned_index.
void write_surfaces_csv(std::ostream &os, const std::vector<HyperSurfaceSample> &surfaces);
/// Surface columns plus is_pareto; pinned_index is the first transmitter at
/// Pmax (0 when none is).
void write_cloud_csv(std::ostream &os, const ParetoCloud &cloud);
/// Columns segment, kind, pinned_index, start, end, P1_start, P2_start,
/// C1_start, C2_start, P1_end, P2_end, C1_end, C2_end.
void write_schedule_csv(std::ostream &os, const TimeShareSchedule &s);

} // namespace rateregion
