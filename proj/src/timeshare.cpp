// SPDX-License-Identifier: Apache-2.0

#include "rateregion/timeshare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rateregion {

std::string to_string(SegmentKind k)
{
    return k == SegmentKind::curve ? "curve" : "line";
}

AcConditionTerms ac_condition_terms(const TwoUser &ch)
{
    ch.validate();
    if (ch.a == 0.0 || ch.c == 0.0)
        throw std::invalid_argument("ac_timeshare_condition: requires a > 0 and c > 0");
    const double p = ch.p_max;
    AcConditionTerms t;
    t.gamma = log2_1p(ch.c * p) / log2_1p(ch.a * p);
    t.lhs = (1.0 + ch.c * p) * (1.0 + ch.d * p) / (1.0 + ch.c * p + ch.d * p);
    t.rhs = std::pow((1.0 + ch.a * p + ch.b * p) / (1.0 + ch.b * p), t.gamma);
    return t;
}

bool ac_timeshare_condition(const TwoUser &ch)
{
    const AcConditionTerms t = ac_condition_terms(ch);
    return t.lhs >= t.rhs;
}

double symmetric_bstar(double a, double p_max)
{
    if (!(a >= 0.0) || !(p_max > 0.0))
        throw std::invalid_argument("symmetric_bstar: requires a >= 0 and p_max > 0");
    return std::sqrt(1.0 + a * p_max) / p_max;
}

double ScheduleSegment::fraction_for_c1(double c1) const
{
    if (kind != SegmentKind::line)
        throw std::logic_error("fraction_for_c1: not a time-sharing segment");
    const double dx = end.rate.x() - start.rate.x();
    if (dx == 0.0)
        return 0.0;
    const double t = (c1 - start.rate.x()) / dx;
    if (t < -kRateTolerance || t > 1.0 + kRateTolerance)
        throw std::out_of_range("fraction_for_c1: c1 outside the segment");
    return std::clamp(t, 0.0, 1.0);
}

Eigen::Matrix2Xd TimeShareSchedule::vertices() const
{
    std::vector<Eigen::Vector2d> pts;
    for (const ScheduleSegment &s : segments)
        for (Eigen::Index k = 0; k < s.rates.cols(); ++k) {
            if (!pts.empty() && k == 0 && (pts.back() - s.rates.col(0)).norm() <= kRateTolerance)
                continue;
            pts.emplace_back(s.rates.col(k));
        }
    if (pts.empty() && !anchors.empty())
        pts.push_back(anchors.front().rate);
    Eigen::Matrix2Xd out(2, Eigen::Index(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k)
        out.col(Eigen::Index(k)) = pts[k];
    return out;
}

std::size_t TimeShareSchedule::line_count() const
{
    return std::size_t(std::count_if(segments.begin(), segments.end(),
                                     [](const ScheduleSegment &s) { return s.kind == SegmentKind::line; }));
}

namespace {

double trapezoid(const Eigen::Vector2d &l, const Eigen::Vector2d &r)
{
    return 0.5 * (r.x() - l.x()) * (l.y() + r.y());
}

bool same_value(double x, double y)
{
    return x == y || std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x));
}

void check_consistent(const TwoUser &ch, const CurvatureReport &report, const TwoUserFrontier &frontier)
{
    const AnchorPoints expect = anchor_points(ch);
    const bool anchors_ok = (expect.a - frontier.anchors.a).norm() <= kRateTolerance &&
                            (expect.b - frontier.anchors.b).norm() <= kRateTolerance &&
                            (expect.c - frontier.anchors.c).norm() <= kRateTolerance;
    if (!anchors_ok || !same_value(q1_of(ch), report.q1) || !same_value(q2_of(ch), report.q2))
        throw std::invalid_argument("build_schedule: report and frontier were not computed from this channel");
    if (frontier.f1.size() < 2 || frontier.f2.size() < 2)
        throw std::invalid_argument("build_schedule: frontier samples are empty");
}

// Sample indices at which a curve run may start or end. F2 is concave for
// P1 <= Q1 (the A side); F1 is concave for P2 <= Q2 (the C side).
std::vector<Eigen::Index> allowed_f2_ends(const FrontierSample &f2, const FrontierClass &cls)
{
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < f2.size(); ++i) {
        const bool ok = i == 0 || cls.shape == CurveShape::concave ||
                        (cls.shape == CurveShape::inflection && f2.powers(0, i) <= cls.at_power);
        if (ok)
            out.push_back(i);
    }
    return out;
}

std::vector<Eigen::Index> allowed_f1_starts(const FrontierSample &f1, const FrontierClass &cls)
{
    std::vector<Eigen::Index> out;
    const Eigen::Index last = f1.size() - 1;
    for (Eigen::Index j = 0; j <= last; ++j) {
        const bool ok = j == last || cls.shape == CurveShape::concave ||
                        (cls.shape == CurveShape::inflection && f1.powers(1, j) <= cls.at_power);
        if (ok)
            out.push_back(j);
    }
    return out;
}

struct Candidate {
    double area = -1.0;
    Eigen::Index i = 0;  // last F2 sample on the leading curve run (0 = none)
    Eigen::Index j = 0;  // first F1 sample on the trailing curve run
    bool via_b = false;  // chord i -> B -> j instead of i -> j
    int segments = 0;
    int lines = 0;
};

bool better(const Candidate &x, const Candidate &best)
{
    const double tie = 1e-12 * (1.0 + std::abs(best.area));
    if (x.area > best.area + tie)
        return true;
    if (x.area < best.area - tie)
        return false;
    if (x.segments != best.segments)
        return x.segments < best.segments;
    return x.lines < best.lines;
}

} // namespace

TimeShareSchedule build_schedule(const TwoUser &ch, const CurvatureReport &report,
                                 const TwoUserFrontier &frontier)
{
    check_consistent(ch, report, frontier);
    const FrontierSample &f2 = frontier.f2;
    const FrontierSample &f1 = frontier.f1;
    const Eigen::Index m2 = f2.size();
    const Eigen::Index m1 = f1.size();

    std::vector<double> prefix2(std::size_t(m2), 0.0);
    for (Eigen::Index k = 1; k < m2; ++k)
        prefix2[k] = prefix2[k - 1] + trapezoid(f2.rates.col(k - 1), f2.rates.col(k));
    std::vector<double> suffix1(std::size_t(m1), 0.0);
    for (Eigen::Index k = m1 - 2; k >= 0; --k)
        suffix1[k] = suffix1[k + 1] + trapezoid(f1.rates.col(k), f1.rates.col(k + 1));

    const Eigen::Vector2d b = frontier.anchors.b;
    Candidate best;
    for (Eigen::Index i : allowed_f2_ends(f2, report.f2_class)) {
        const Eigen::Vector2d left = f2.rates.col(i);
        for (Eigen::Index j : allowed_f1_starts(f1, report.f1_class)) {
            const Eigen::Vector2d right = f1.rates.col(j);
            const int curves = int(i > 0) + int(j < m1 - 1);

            Candidate direct{prefix2[i] + trapezoid(left, right) + suffix1[j], i, j, false};
            direct.lines = (i == m2 - 1 && j == 0) ? 0 : 1;
            direct.segments = curves + direct.lines;
            if (better(direct, best))
                best = direct;

            if (i < m2 - 1 && j > 0) {
                Candidate through{prefix2[i] + trapezoid(left, b) + trapezoid(b, right) + suffix1[j], i, j, true};
                through.lines = 2;
                through.segments = curves + 2;
                if (better(through, best))
                    best = through;
            }
        }
    }

    // E: the F2 sample nearest to P1 = Q1 (and the F1 analogue).
    auto nearest = [](const Eigen::RowVectorXd &p, double target) {
        Eigen::Index k = 0;
        (p.array() - target).abs().minCoeff(&k);
        return k;
    };
    const bool f2_inflected = report.f2_class.shape == CurveShape::inflection;
    const bool f1_inflected = report.f1_class.shape == CurveShape::inflection;
    const Eigen::Index e2 = f2_inflected ? nearest(f2.powers.row(0), report.q1) : -1;
    const Eigen::Index e1 = f1_inflected ? nearest(f1.powers.row(1), report.q2) : -1;

    auto point_f2 = [&](Eigen::Index k) {
        std::string name = k == 0 ? "A" : k == m2 - 1 ? "B" : k == e2 ? "E" : "T2";
        return OperatingPoint{name, f2.powers.col(k), f2.rates.col(k)};
    };
    auto point_f1 = [&](Eigen::Index k) {
        std::string name = k == 0 ? "B" : k == m1 - 1 ? "C" : k == e1 ? "E1" : "T1";
        return OperatingPoint{name, f1.powers.col(k), f1.rates.col(k)};
    };
    const OperatingPoint point_b{"B", Eigen::Vector2d(ch.p_max, ch.p_max), b};

    TimeShareSchedule out;
    out.area = best.area;
    auto line = [](const OperatingPoint &s, const OperatingPoint &e) {
        ScheduleSegment seg;
        seg.kind = SegmentKind::line;
        seg.start = s;
        seg.end = e;
        seg.rates.resize(2, 2);
        seg.rates << s.rate, e.rate;
        return seg;
    };

    if (best.i > 0) {
        ScheduleSegment seg;
        seg.kind = SegmentKind::curve;
        seg.pinned_index = 2;
        seg.start = point_f2(0);
        seg.end = point_f2(best.i);
        seg.rates = f2.rates.leftCols(best.i + 1);
        out.segments.push_back(std::move(seg));
    }
    if (best.via_b) {
        out.segments.push_back(line(point_f2(best.i), point_b));
        out.segments.push_back(line(point_b, point_f1(best.j)));
    } else if (best.lines == 1) {
        out.segments.push_back(line(point_f2(best.i), point_f1(best.j)));
    }
    if (best.j < m1 - 1) {
        ScheduleSegment seg;
        seg.kind = SegmentKind::curve;
        seg.pinned_index = 1;
        seg.start = point_f1(best.j);
        seg.end = point_f1(m1 - 1);
        seg.rates = f1.rates.rightCols(m1 - best.j);
        out.segments.push_back(std::move(seg));
    }

    auto add_anchor = [&](const OperatingPoint &p) {
        const bool seen = std::any_of(out.anchors.begin(), out.anchors.end(),
                                      [&](const OperatingPoint &q) { return q.name == p.name; });
        if (!seen)
            out.anchors.push_back(p);
    };
    if (out.segments.empty()) {
        add_anchor(point_f2(0));
    }
    for (const ScheduleSegment &s : out.segments) {
        add_anchor(s.start);
        add_anchor(s.end);
    }
    return out;
}

} // namespace rateregion
