// SPDX-License-Identifier: Apache-2.0

#include "rateregion/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace rateregion {

namespace {

double from_db(double x)
{
    return std::pow(10.0, x / 10.0);
}

double number(const json &doc, const char *key, const char *where)
{
    if (!doc.contains(key))
        throw InputError(std::string(where) + ": missing \"" + key + "\"");
    const json &v = doc.at(key);
    if (!v.is_number())
        throw InputError(std::string(where) + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

// JSON has no infinity; unbounded inflection powers are written as null.
json finite_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

double null_as_infinity(const json &j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json vec(const Eigen::VectorXd &v)
{
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd to_vec(const json &j)
{
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

json columns(const Eigen::MatrixXd &m)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
        out.push_back(vec(m.col(k)));
    return out;
}

Eigen::MatrixXd from_columns(const json &j, Eigen::Index rows)
{
    Eigen::MatrixXd m(rows, Eigen::Index(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Eigen::VectorXd c = to_vec(j[k]);
        if (c.size() != rows)
            throw InputError("column has the wrong length");
        m.col(Eigen::Index(k)) = c;
    }
    return m;
}

json channel_json(const TwoUser &ch)
{
    return {{"a", ch.a}, {"b", ch.b}, {"c", ch.c}, {"d", ch.d}, {"p_max", ch.p_max}};
}

TwoUser channel_from(const json &j)
{
    return {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(), j.at("d").get<double>(),
            j.at("p_max").get<double>()};
}

json class_json(const FrontierClass &c)
{
    json j = {{"shape", to_string(c.shape)}};
    if (c.shape == CurveShape::inflection)
        j["at_power"] = c.at_power;
    return j;
}

FrontierClass class_from(const json &j, double q)
{
    const std::string s = j.at("shape").get<std::string>();
    if (s == "convex")
        return {CurveShape::convex, q};
    if (s == "concave")
        return {CurveShape::concave, q};
    if (s == "inflection")
        return {CurveShape::inflection, j.at("at_power").get<double>()};
    throw InputError("unknown frontier shape \"" + s + "\"");
}

json point_json(const OperatingPoint &p)
{
    return {{"name", p.name},
            {"P1", p.power.x()},
            {"P2", p.power.y()},
            {"C1", p.rate.x()},
            {"C2", p.rate.y()}};
}

OperatingPoint point_from(const json &j)
{
    return {j.at("name").get<std::string>(),
            Eigen::Vector2d(j.at("P1").get<double>(), j.at("P2").get<double>()),
            Eigen::Vector2d(j.at("C1").get<double>(), j.at("C2").get<double>())};
}

} // namespace

Channel channel_from_json(const json &doc, bool db)
{
    if (!doc.is_object())
        throw InputError("channel: expected a JSON object");
    auto conv = [db](double x) { return db ? from_db(x) : x; };
    try {
        if (doc.contains("normalized")) {
            const json &nz = doc.at("normalized");
            if (!nz.is_object())
                throw InputError("channel: \"normalized\" must be an object");
            TwoUser ch{conv(number(nz, "a", "normalized")), conv(number(nz, "b", "normalized")),
                       conv(number(nz, "c", "normalized")), conv(number(nz, "d", "normalized")),
                       conv(number(nz, "p_max", "normalized"))};
            ch.validate();
            return ch.to_channel();
        }
        const double n_field = number(doc, "n", "channel");
        if (n_field < 1 || n_field != std::floor(n_field))
            throw InputError("channel: \"n\" must be a positive integer");
        const auto n = Eigen::Index(n_field);
        if (!doc.contains("gains") || !doc.at("gains").is_array() || Eigen::Index(doc.at("gains").size()) != n)
            throw InputError("channel: \"gains\" must be an array of n rows");
        Eigen::MatrixXd g(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const json &row = doc.at("gains")[std::size_t(i)];
            if (!row.is_array() || Eigen::Index(row.size()) != n)
                throw InputError("channel: gains row " + std::to_string(i) + " must have n entries");
            for (Eigen::Index j = 0; j < n; ++j) {
                if (!row[std::size_t(j)].is_number())
                    throw InputError("channel: gains[" + std::to_string(i) + "][" + std::to_string(j) +
                                     "] must be a number");
                g(i, j) = conv(row[std::size_t(j)].get<double>());
            }
        }
        return Channel(std::move(g), conv(number(doc, "noise_power", "channel")),
                       conv(number(doc, "p_max", "channel")));
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
}

Channel parse_channel(std::string_view text, bool db)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed channel JSON: ") + e.what());
    }
    return channel_from_json(doc, db);
}

json channel_to_json(const Channel &spec)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < spec.n(); ++i)
        rows.push_back(vec(spec.gains.row(i).transpose()));
    return {{"n", spec.n()}, {"gains", rows}, {"noise_power", spec.noise_power}, {"p_max", spec.p_max}};
}

std::string csv_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// FrontierSample

void to_json(json &j, const FrontierSample &s)
{
    json pts = json::array();
    for (Eigen::Index k = 0; k < s.size(); ++k)
        pts.push_back({{"P1", s.powers(0, k)}, {"P2", s.powers(1, k)}, {"C1", s.rates(0, k)}, {"C2", s.rates(1, k)}});
    j = {{"pinned_index", s.pinned_index}, {"sweep_resolution", s.sweep_resolution}, {"points", pts}};
}

void from_json(const json &j, FrontierSample &s)
{
    s.pinned_index = j.at("pinned_index").get<int>();
    s.sweep_resolution = j.at("sweep_resolution").get<int>();
    const json &pts = j.at("points");
    s.powers.resize(2, Eigen::Index(pts.size()));
    s.rates.resize(2, Eigen::Index(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const json &p = pts[k];
        s.powers.col(Eigen::Index(k)) << p.at("P1").get<double>(), p.at("P2").get<double>();
        s.rates.col(Eigen::Index(k)) << p.at("C1").get<double>(), p.at("C2").get<double>();
    }
}

// TwoUserFrontier

void to_json(json &j, const TwoUserFrontier &f)
{
    json hull = json::array();
    for (const HullVertex &v : f.hull)
        hull.push_back({{"curve", v.curve},
                        {"index", v.index},
                        {"P1", v.power.x()},
                        {"P2", v.power.y()},
                        {"C1", v.rate.x()},
                        {"C2", v.rate.y()}});
    j = {{"channel", channel_json(f.channel)},
         {"anchors",
          {{"A", vec(f.anchors.a)}, {"B", vec(f.anchors.b)}, {"C", vec(f.anchors.c)}}},
         {"f1", f.f1},
         {"f2", f.f2},
         {"hull", hull}};
}

void from_json(const json &j, TwoUserFrontier &f)
{
    f.channel = channel_from(j.at("channel"));
    const json &a = j.at("anchors");
    f.anchors = {to_vec(a.at("A")), to_vec(a.at("B")), to_vec(a.at("C"))};
    f.f1 = j.at("f1").get<FrontierSample>();
    f.f2 = j.at("f2").get<FrontierSample>();
    f.hull.clear();
    for (const json &v : j.at("hull"))
        f.hull.push_back({Eigen::Vector2d(v.at("P1").get<double>(), v.at("P2").get<double>()),
                          Eigen::Vector2d(v.at("C1").get<double>(), v.at("C2").get<double>()),
                          v.at("curve").get<int>(), v.at("index").get<Eigen::Index>()});
}

// CurvatureReport

void to_json(json &j, const CurvatureReport &r)
{
    j = {{"theta", r.theta},
         {"beta", r.beta},
         {"q1", finite_or_null(r.q1)},
         {"q2", finite_or_null(r.q2)},
         {"f2_class", class_json(r.f2_class)},
         {"f1_class", class_json(r.f1_class)}};
    if (r.inflection_f2)
        j["inflection_f2"] = vec(*r.inflection_f2);
    if (r.inflection_f1)
        j["inflection_f1"] = vec(*r.inflection_f1);
}

void from_json(const json &j, CurvatureReport &r)
{
    r.theta = j.at("theta").get<double>();
    r.beta = j.at("beta").get<double>();
    r.q1 = null_as_infinity(j.at("q1"));
    r.q2 = null_as_infinity(j.at("q2"));
    r.f2_class = class_from(j.at("f2_class"), r.q1);
    r.f1_class = class_from(j.at("f1_class"), r.q2);
    r.inflection_f2.reset();
    r.inflection_f1.reset();
    if (j.contains("inflection_f2"))
        r.inflection_f2 = to_vec(j.at("inflection_f2"));
    if (j.contains("inflection_f1"))
        r.inflection_f1 = to_vec(j.at("inflection_f1"));
}

// TimeShareSchedule

void to_json(json &j, const TimeShareSchedule &s)
{
    json segs = json::array();
    for (const ScheduleSegment &seg : s.segments) {
        json e = {{"kind", to_string(seg.kind)}, {"start", point_json(seg.start)}, {"end", point_json(seg.end)}};
        if (seg.kind == SegmentKind::curve) {
            e["pinned_index"] = seg.pinned_index;
            e["rates"] = columns(seg.rates);
        } else {
            e["parameterization"] = "rate = (1 - t) * start + t * end; time fraction t in end state";
        }
        segs.push_back(e);
    }
    json anchors = json::array();
    for (const OperatingPoint &p : s.anchors)
        anchors.push_back(point_json(p));
    j = {{"segments", segs}, {"anchors", anchors}, {"area", s.area}};
}

void from_json(const json &j, TimeShareSchedule &s)
{
    s.segments.clear();
    for (const json &e : j.at("segments")) {
        ScheduleSegment seg;
        const std::string kind = e.at("kind").get<std::string>();
        if (kind != "curve" && kind != "line")
            throw InputError("unknown segment kind \"" + kind + "\"");
        seg.kind = kind == "curve" ? SegmentKind::curve : SegmentKind::line;
        seg.start = point_from(e.at("start"));
        seg.end = point_from(e.at("end"));
        if (seg.kind == SegmentKind::curve) {
            seg.pinned_index = e.at("pinned_index").get<int>();
            seg.rates = from_columns(e.at("rates"), 2);
        } else {
            seg.rates.resize(2, 2);
            seg.rates << seg.start.rate, seg.end.rate;
        }
        s.segments.push_back(std::move(seg));
    }
    s.anchors.clear();
    for (const json &p : j.at("anchors"))
        s.anchors.push_back(point_from(p));
    s.area = j.at("area").get<double>();
}

// HyperSurfaceSample

void to_json(json &j, const HyperSurfaceSample &s)
{
    j = {{"pinned_index", s.pinned_index},
         {"grid_resolution", s.grid_resolution},
         {"powers", columns(s.powers)},
         {"rates", columns(s.rates)}};
}

void from_json(const json &j, HyperSurfaceSample &s)
{
    s.pinned_index = j.at("pinned_index").get<int>();
    s.grid_resolution = j.at("grid_resolution").get<int>();
    const json &p = j.at("powers");
    const Eigen::Index rows = p.empty() ? 0 : Eigen::Index(p[0].size());
    s.powers = from_columns(p, rows);
    s.rates = from_columns(j.at("rates"), rows);
}

// ParetoCloud

void to_json(json &j, const ParetoCloud &c)
{
    j = {{"channel", channel_to_json(c.spec)},
         {"grid_resolution", c.grid_resolution},
         {"evaluated", c.evaluated},
         {"dominated_count", c.dominated_count},
         {"max_slope", c.max_slope},
         {"powers", columns(c.powers)},
         {"rates", columns(c.rates)}};
}

void from_json(const json &j, ParetoCloud &c)
{
    c.spec = channel_from_json(j.at("channel"));
    c.grid_resolution = j.at("grid_resolution").get<int>();
    c.evaluated = j.at("evaluated").get<Eigen::Index>();
    c.dominated_count = j.at("dominated_count").get<Eigen::Index>();
    c.max_slope = j.at("max_slope").get<double>();
    c.powers = from_columns(j.at("powers"), c.spec.n());
    c.rates = from_columns(j.at("rates"), c.spec.n());
}

// DominanceReport

void to_json(json &j, const DominanceReport &r)
{
    json v = json::array();
    for (const Violation &x : r.violations)
        v.push_back({{"kind", to_string(x.kind)}, {"rate", vec(x.rate)}, {"excess", x.excess}});
    j = {{"tolerance", r.tolerance},
         {"oracle_points", r.oracle_points},
         {"frontier_points", r.frontier_points},
         {"passed", r.passed()},
         {"violations", v}};
}

void from_json(const json &j, DominanceReport &r)
{
    r.tolerance = j.at("tolerance").get<double>();
    r.oracle_points = j.at("oracle_points").get<Eigen::Index>();
    r.frontier_points = j.at("frontier_points").get<Eigen::Index>();
    r.violations.clear();
    for (const json &x : j.at("violations")) {
        const std::string kind = x.at("kind").get<std::string>();
        ViolationKind k;
        if (kind == "oracle_above_frontier")
            k = ViolationKind::oracle_above_frontier;
        else if (kind == "frontier_dominated")
            k = ViolationKind::frontier_dominated;
        else if (kind == "frontier_unreached")
            k = ViolationKind::frontier_unreached;
        else
            throw InputError("unknown violation kind \"" + kind + "\"");
        r.violations.push_back({k, to_vec(x.at("rate")), x.at("excess").get<double>()});
    }
}

// CSV

void write_frontier_csv(std::ostream &os, const TwoUserFrontier &f)
{
    os << "P1,P2,C1,C2,on_hull\n";
    for (const FrontierSample *s : {&f.f2, &f.f1})
        for (Eigen::Index k = 0; k < s->size(); ++k)
            os << csv_number(s->powers(0, k)) << ',' << csv_number(s->powers(1, k)) << ','
               << csv_number(s->rates(0, k)) << ',' << csv_number(s->rates(1, k)) << ','
               << (f.on_hull(s->pinned_index, k) ? 1 : 0) << '\n';
}

namespace {

void surface_header(std::ostream &os, Eigen::Index n)
{
    for (Eigen::Index i = 1; i <= n; ++i)
        os << "P_" << i << ',';
    for (Eigen::Index i = 1; i <= n; ++i)
        os << "C_" << i << ',';
    os << "pinned_index";
}

void surface_row(std::ostream &os, const Eigen::VectorXd &p, const Eigen::VectorXd &c, int pinned)
{
    for (Eigen::Index i = 0; i < p.size(); ++i)
        os << csv_number(p[i]) << ',';
    for (Eigen::Index i = 0; i < c.size(); ++i)
        os << csv_number(c[i]) << ',';
    os << pinned;
}

} // namespace

void write_surfaces_csv(std::ostream &os, const std::vector<HyperSurfaceSample> &surfaces)
{
    const Eigen::Index n = surfaces.empty() ? 0 : surfaces.front().powers.rows();
    surface_header(os, n);
    os << '\n';
    for (const HyperSurfaceSample &s : surfaces)
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            surface_row(os, s.powers.col(k), s.rates.col(k), s.pinned_index);
            os << '\n';
        }
}

void write_cloud_csv(std::ostream &os, const ParetoCloud &cloud)
{
    surface_header(os, cloud.spec.n());
    os << ",is_pareto\n";
    for (Eigen::Index k = 0; k < cloud.size(); ++k) {
        int pinned = 0;
        for (Eigen::Index i = 0; i < cloud.spec.n() && pinned == 0; ++i)
            if (cloud.powers(i, k) == cloud.spec.p_max)
                pinned = int(i) + 1;
        surface_row(os, cloud.powers.col(k), cloud.rates.col(k), pinned);
        os << ",1\n";
    }
}

void write_schedule_csv(std::ostream &os, const TimeShareSchedule &s)
{
    os << "segment,kind,pinned_index,start,end,P1_start,P2_start,C1_start,C2_start,P1_end,P2_end,C1_end,C2_end\n";
    for (std::size_t k = 0; k < s.segments.size(); ++k) {
        const ScheduleSegment &seg = s.segments[k];
        os << k << ',' << to_string(seg.kind) << ',' << seg.pinned_index << ',' << seg.start.name << ','
           << seg.end.name;
        for (const OperatingPoint *p : {&seg.start, &seg.end})
            os << ',' << csv_number(p->power.x()) << ',' << csv_number(p->power.y()) << ','
               << csv_number(p->rate.x()) << ',' << csv_number(p->rate.y());
        os << '\n';
    }
}

} // namespace rateregion
