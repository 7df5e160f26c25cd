// SPDX-License-Identifier: Apache-2.0

#include "catch_amalgamated.hpp"

#include "rateregion/io.hpp"
#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace rateregion;
using testsupport::unit_channel;
using testsupport::mixed_channel;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        out.push_back(line);
    return out;
}

std::size_t count(const std::string &s, char c)
{
    return std::size_t(std::count(s.begin(), s.end(), c));
}

} // namespace

TEST_CASE("full channel documents parse", "[io]")
{
    const Channel spec = parse_channel(R"({"n": 2, "gains": [[2, 0.5], [0.25, 3]], "noise_power": 0.5, "p_max": 4})");
    REQUIRE(spec.n() == 2);
    CHECK(spec.gains(0, 1) == 0.5);
    CHECK(spec.gains(1, 0) == 0.25);
    CHECK(spec.noise_power == 0.5);
    CHECK(spec.p_max == 4.0);
    const TwoUser ch = normalize(spec);
    CHECK(ch.a == 4.0);
    CHECK(ch.b == 1.0);
    CHECK(ch.c == 6.0);
    CHECK(ch.d == 0.5);
}

TEST_CASE("normalized shorthand uses unit noise", "[io]")
{
    const Channel spec = parse_channel(R"({"normalized": {"a": 20, "b": 1, "c": 15, "d": 5, "p_max": 1}})");
    CHECK(spec.noise_power == 1.0);
    const TwoUser ch = normalize(spec);
    const TwoUser want = mixed_channel();
    CHECK(ch.a == want.a);
    CHECK(ch.b == want.b);
    CHECK(ch.c == want.c);
    CHECK(ch.d == want.d);
    CHECK(ch.p_max == want.p_max);
}

TEST_CASE("dB input converts every quantity", "[io]")
{
    const Channel spec =
        parse_channel(R"({"n": 2, "gains": [[10, 0], [-10, 20]], "noise_power": 0, "p_max": 3})", true);
    CHECK_THAT(spec.gains(0, 0), WithinAbs(10.0, 1e-12));
    CHECK_THAT(spec.gains(0, 1), WithinAbs(1.0, 1e-12));
    CHECK_THAT(spec.gains(1, 0), WithinAbs(0.1, 1e-12));
    CHECK_THAT(spec.gains(1, 1), WithinAbs(100.0, 1e-10));
    CHECK_THAT(spec.noise_power, WithinAbs(1.0, 1e-12));
    CHECK_THAT(spec.p_max, WithinAbs(std::pow(10.0, 0.3), 1e-12));
    const Channel nz = parse_channel(R"({"normalized": {"a": 13.0103, "b": 0, "c": 0, "d": 0, "p_max": 0}})", true);
    CHECK_THAT(normalize(nz).a, WithinAbs(20.0, 1e-4));
    CHECK_THAT(normalize(nz).b, WithinAbs(1.0, 1e-12));
}

TEST_CASE("malformed JSON reports a location", "[io][error]")
{
    try {
        (void)parse_channel("{\"n\": 2,\n \"gains\": [[1, 2], [3 4]]}");
        FAIL("no exception");
    } catch (const InputError &e) {
        CHECK_THAT(e.what(), ContainsSubstring("malformed"));
        CHECK_THAT(e.what(), ContainsSubstring("line 2"));
    }
}

TEST_CASE("invalid channel documents are rejected", "[io][error]")
{
    const char *bad[] = {
        "[1, 2]",
        R"({"gains": [[1]], "noise_power": 1, "p_max": 1})",
        R"({"n": 0, "gains": [], "noise_power": 1, "p_max": 1})",
        R"({"n": 1.5, "gains": [[1]], "noise_power": 1, "p_max": 1})",
        R"({"n": 2, "gains": [[1, 1]], "noise_power": 1, "p_max": 1})",
        R"({"n": 2, "gains": [[1, 1], [1]], "noise_power": 1, "p_max": 1})",
        R"({"n": 1, "gains": [["x"]], "noise_power": 1, "p_max": 1})",
        R"({"n": 1, "gains": [[-1]], "noise_power": 1, "p_max": 1})",
        R"({"n": 1, "gains": [[1]], "noise_power": 0, "p_max": 1})",
        R"({"n": 1, "gains": [[1]], "noise_power": 1})",
        R"({"n": 1, "gains": [[1]], "noise_power": 1, "p_max": "1"})",
        R"({"normalized": [1, 2]})",
        R"({"normalized": {"a": 1, "b": 1, "c": 1, "p_max": 1}})",
        R"({"normalized": {"a": 1, "b": -1, "c": 1, "d": 1, "p_max": 1}})",
    };
    for (const char *doc : bad) {
        INFO(doc);
        CHECK_THROWS_AS(parse_channel(doc), InputError);
    }
}

TEST_CASE("channel JSON round-trips", "[io]")
{
    testsupport::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        const Channel spec = rng.channel(rng.integer(1, 4));
        const Channel back = channel_from_json(json::parse(channel_to_json(spec).dump()));
        CHECK(back.gains == spec.gains);
        CHECK(back.noise_power == spec.noise_power);
        CHECK(back.p_max == spec.p_max);
    }
}

TEST_CASE("frontier JSON round-trips", "[io]")
{
    const TwoUserFrontier f = two_user_frontier(mixed_channel(), 64);
    const TwoUserFrontier back = json::parse(json(f).dump()).get<TwoUserFrontier>();
    CHECK(back.channel.a == f.channel.a);
    CHECK(back.channel.d == f.channel.d);
    CHECK(back.f1.powers == f.f1.powers);
    CHECK(back.f1.rates == f.f1.rates);
    CHECK(back.f2.rates == f.f2.rates);
    CHECK(back.f2.pinned_index == 2);
    CHECK(back.f1.sweep_resolution == 64);
    CHECK(back.anchors.b == f.anchors.b);
    REQUIRE(back.hull.size() == f.hull.size());
    for (std::size_t k = 0; k < f.hull.size(); ++k) {
        CHECK(back.hull[k].rate == f.hull[k].rate);
        CHECK(back.hull[k].power == f.hull[k].power);
        CHECK(back.hull[k].curve == f.hull[k].curve);
        CHECK(back.hull[k].index == f.hull[k].index);
    }
    CHECK(json(back) == json(f));
}

TEST_CASE("curvature JSON writes unbounded powers as null", "[io]")
{
    const CurvatureReport inf = curvature_report({1.0, 0.0, 1.0, 0.0, 1.0});
    REQUIRE(std::isinf(inf.q1));
    const json j = inf;
    CHECK(j.at("q1").is_null());
    CHECK(j.at("q2").is_null());
    const CurvatureReport back = j.get<CurvatureReport>();
    CHECK(std::isinf(back.q1));
    CHECK(back.q1 > 0.0);
    CHECK(back.f2_class.shape == inf.f2_class.shape);

    const CurvatureReport r = curvature_report(mixed_channel());
    const CurvatureReport r2 = json::parse(json(r).dump()).get<CurvatureReport>();
    CHECK(r2.q1 == r.q1);
    CHECK(r2.q2 == r.q2);
    CHECK(r2.theta == r.theta);
    CHECK(r2.f2_class.shape == CurveShape::inflection);
    CHECK(r2.f2_class.at_power == r.f2_class.at_power);
    REQUIRE(r2.inflection_f2.has_value());
    CHECK(*r2.inflection_f2 == *r.inflection_f2);
    CHECK(r2.inflection_f1.has_value() == r.inflection_f1.has_value());
    CHECK(json(r2) == json(r));
}

TEST_CASE("schedule JSON round-trips", "[io]")
{
    for (const TwoUser &ch : {unit_channel(), mixed_channel(), TwoUser{1.0, 2.0, 1.0, 2.0, 1.0}}) {
        const TimeShareSchedule s = build_schedule(ch, curvature_report(ch), two_user_frontier(ch, 128));
        const json j = s;
        const TimeShareSchedule back = json::parse(j.dump()).get<TimeShareSchedule>();
        REQUIRE(back.segments.size() == s.segments.size());
        for (std::size_t k = 0; k < s.segments.size(); ++k) {
            CHECK(back.segments[k].kind == s.segments[k].kind);
            CHECK(back.segments[k].start.name == s.segments[k].start.name);
            CHECK(back.segments[k].end.rate == s.segments[k].end.rate);
            CHECK(back.segments[k].rates == s.segments[k].rates);
            if (s.segments[k].kind == SegmentKind::line)
                CHECK(j["segments"][k].contains("parameterization"));
        }
        CHECK(back.area == s.area);
        CHECK(json(back) == j);
    }
    CHECK_THROWS_AS(json({{"segments", {{{"kind", "spiral"}}}}, {"anchors", json::array()}, {"area", 0}})
                        .get<TimeShareSchedule>(),
                    InputError);
}

TEST_CASE("surface, cloud and report JSON round-trip", "[io]")
{
    const Channel spec = testsupport::Rng(3).channel(3);
    const NUserFrontier f = n_user_frontier(spec, 6);
    for (const HyperSurfaceSample &s : f.surfaces) {
        const HyperSurfaceSample back = json::parse(json(s).dump()).get<HyperSurfaceSample>();
        CHECK(back.powers == s.powers);
        CHECK(back.rates == s.rates);
        CHECK(back.pinned_index == s.pinned_index);
        CHECK(back.grid_resolution == 6);
    }

    const ParetoCloud cloud = pareto_grid(spec, 6);
    const ParetoCloud cb = json::parse(json(cloud).dump()).get<ParetoCloud>();
    CHECK(cb.rates == cloud.rates);
    CHECK(cb.powers == cloud.powers);
    CHECK(cb.evaluated == cloud.evaluated);
    CHECK(cb.dominated_count == cloud.dominated_count);
    CHECK(cb.max_slope == cloud.max_slope);
    CHECK(cb.spec.gains == spec.gains);

    const DominanceReport r = verify_frontier_dominance(pareto_grid(mixed_channel().to_channel(), 21), two_user_frontier(mixed_channel()), 0.0);
    REQUIRE_FALSE(r.passed());
    const json rj = r;
    CHECK(rj.at("passed") == false);
    const DominanceReport rb = json::parse(rj.dump()).get<DominanceReport>();
    REQUIRE(rb.violations.size() == r.violations.size());
    for (std::size_t k = 0; k < r.violations.size(); ++k) {
        CHECK(rb.violations[k].kind == r.violations[k].kind);
        CHECK(rb.violations[k].rate == r.violations[k].rate);
        CHECK(rb.violations[k].excess == r.violations[k].excess);
    }
    CHECK(json(rb) == rj);
}

TEST_CASE("CSV numbers carry 12 significant digits", "[io][csv]")
{
    CHECK(csv_number(1.0) == "1");
    CHECK(csv_number(0.1) == "0.1");
    CHECK(csv_number(std::sqrt(2.0)) == "1.41421356237");
    CHECK(csv_number(1234567.891011121) == "1234567.89101");
    CHECK(csv_number(-2.5e-20) == "-2.5e-20");
    CHECK(csv_number(1e15) == "1e+15");
    for (double x : {std::acos(-1.0), 1.0 / 3.0, 123456789.123, 9.87654321e-7})
        CHECK_THAT(std::stod(csv_number(x)), WithinAbs(x, std::abs(x) * 1e-11));
}

TEST_CASE("frontier CSV has a header and one row per sample", "[io][csv]")
{
    const TwoUserFrontier f = two_user_frontier(mixed_channel(), 16);
    std::ostringstream os;
    write_frontier_csv(os, f);
    const auto rows = lines(os.str());
    REQUIRE(rows.size() == 1 + std::size_t(f.f1.size() + f.f2.size()));
    CHECK(rows[0] == "P1,P2,C1,C2,on_hull");
    std::size_t hull_rows = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(count(rows[k], ',') == 4);
        CHECK(rows[k].find(' ') == std::string::npos);
        hull_rows += rows[k].back() == '1';
    }
    CHECK(hull_rows >= f.hull.size());
    CHECK(rows[1] == "0,1," + csv_number(f.f2.rates(0, 0)) + ',' + csv_number(f.f2.rates(1, 0)) + ",1");
}

TEST_CASE("surface and cloud CSV headers", "[io][csv]")
{
    const Channel spec = testsupport::Rng(11).channel(3);
    std::ostringstream s;
    write_surfaces_csv(s, n_user_frontier(spec, 4).surfaces);
    const auto rows = lines(s.str());
    CHECK(rows[0] == "P_1,P_2,P_3,C_1,C_2,C_3,pinned_index");
    CHECK(rows.size() == 1 + 3 * 16);

    const ParetoCloud cloud = pareto_grid(spec, 4);
    std::ostringstream c;
    write_cloud_csv(c, cloud);
    const auto crow = lines(c.str());
    CHECK(crow[0] == "P_1,P_2,P_3,C_1,C_2,C_3,pinned_index,is_pareto");
    CHECK(crow.size() == 1 + std::size_t(cloud.size()));
    for (std::size_t k = 1; k < crow.size(); ++k)
        CHECK(crow[k].substr(crow[k].size() - 2) == ",1");

    std::ostringstream empty;
    write_surfaces_csv(empty, {});
    CHECK(empty.str() == "pinned_index\n");
}

TEST_CASE("schedule CSV lists segments in order", "[io][csv]")
{
    const TwoUser ch{1.0, 2.0, 1.0, 2.0, 1.0};
    const TimeShareSchedule s = build_schedule(ch, curvature_report(ch), two_user_frontier(ch));
    std::ostringstream os;
    write_schedule_csv(os, s);
    const auto rows = lines(os.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] ==
          "segment,kind,pinned_index,start,end,P1_start,P2_start,C1_start,C2_start,P1_end,P2_end,C1_end,C2_end");
    CHECK(rows[1].rfind("0,line,0,", 0) == 0);
    CHECK(count(rows[1], ',') == 12);
}
