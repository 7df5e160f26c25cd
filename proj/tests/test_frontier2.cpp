// SPDX-License-Identifier: Apache-2.0

#include "rateregion/frontier2.hpp"

#include "catch_amalgamated.hpp"
#include "test_support.hpp"

#include <set>

using namespace rateregion;
using Catch::Matchers::WithinAbs;
using testsupport::unit_channel;
using testsupport::mixed_channel;

TEST_CASE("p1_for_target_rate", "[frontier2]")
{
    const TwoUser ch{1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(p1_for_target_rate(ch, 0.0, 0.7) == 0.0);
    CHECK_THAT(p1_for_target_rate(ch, 1.0, 0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(p1_for_target_rate(mixed_channel(), 2.0, 1.0), WithinAbs(0.3, 1e-15));
    // May exceed Pmax; feasibility is the caller's concern.
    CHECK(p1_for_target_rate(ch, 3.0, 1.0) > ch.p_max);

    const TwoUser mute{0.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(p1_for_target_rate(mute, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(p1_for_target_rate(mute, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p1_for_target_rate(ch, -0.5, 1.0), std::invalid_argument);
}

TEST_CASE("p1_for_target_rate inverts the rate equation", "[frontier2][property]")
{
    testsupport::Rng rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const TwoUser ch = rng.two_user();
        const double p2 = rng.uniform(0.0, 1.0);
        const double r = rng.uniform(0.0, 8.0);
        const double p1 = p1_for_target_rate(ch, r, p2);
        CHECK_THAT(double(testsupport::ref_c1(ch, p1, p2)), WithinAbs(r, 1e-12 * (1.0 + r)));
    }
}

TEST_CASE("c2_given_p2", "[frontier2]")
{
    const TwoUser ch = unit_channel();
    CHECK(c2_given_p2(ch, 0.7, 0.0) == 0.0);
    CHECK(c2_given_p2(mixed_channel(), 2.5, 0.0) == 0.0);
    CHECK_THAT(c2_given_p2(ch, 0.0, 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(c2_given_p2(ch, std::log2(1.5), 1.0), WithinAbs(std::log2(1.5), 1e-15));
    CHECK_THROWS_AS(c2_given_p2(TwoUser{0.0, 1.0, 1.0, 1.0, 1.0}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(c2_given_p2(ch, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("c2_given_p2 equals C2 at the power pair that holds C1 fixed", "[frontier2][property]")
{
    testsupport::Rng rng(22);
    for (int trial = 0; trial < 500; ++trial) {
        const TwoUser ch = rng.two_user();
        const double p2 = rng.uniform(0.0, 1.0);
        const double r = rng.uniform(0.0, 6.0);
        const double p1 = p1_for_target_rate(ch, r, p2);
        const double ref = double(testsupport::ref_c2(ch, p1, p2));
        CHECK_THAT(c2_given_p2(ch, r, p2), WithinAbs(ref, 1e-12 * (1.0 + ref)));
        CHECK_THAT(log2_1p(constant_rate_sinr(ch, r, p2)), WithinAbs(ref, 1e-12 * (1.0 + ref)));
    }
}

TEST_CASE("c2_given_p2 is strictly increasing in P2", "[frontier2][property]")
{
    testsupport::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const TwoUser ch = rng.two_user();
        const double r = rng.uniform(0.0, log2_1p(ch.a * ch.p_max));
        double prev = c2_given_p2(ch, r, 0.0);
        for (int k = 1; k <= 64; ++k) {
            const double v = c2_given_p2(ch, r, ch.p_max * k / 64.0);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("closed-form slope of the constant-rate SINR matches finite differences", "[frontier2][property]")
{
    testsupport::Rng rng(24);
    for (int trial = 0; trial < 500; ++trial) {
        const TwoUser ch = rng.two_user();
        const double r = rng.uniform(0.0, 5.0);
        const double p2 = rng.uniform(0.05, 0.95);
        const double h = 1e-6;
        // Reference derivative from power-domain quantities only.
        auto g = [&](double x) {
            const long double p1 = (1.0L + ch.b * x) * (std::exp2((long double)r) - 1.0L) / ch.a;
            return (long double)ch.c * x / (1.0L + ch.d * p1);
        };
        const double fd = double((g(p2 + h) - g(p2 - h)) / (2.0L * h));
        const double slope = constant_rate_sinr_slope(ch, r, p2);
        CHECK(slope > 0.0);
        CHECK_THAT(slope, WithinAbs(fd, 1e-6 * (1.0 + std::abs(fd))));
    }
}

TEST_CASE("frontier_f2 on the unit channel at resolution 3", "[frontier2]")
{
    const FrontierSample s = frontier_f2(unit_channel(), 3);
    REQUIRE(s.size() == 3);
    CHECK(s.pinned_index == 2);
    CHECK(s.sweep_resolution == 3);
    const double cb = std::log2(1.5);
    CHECK(s.rates(0, 0) == 0.0);
    CHECK_THAT(s.rates(0, 1), WithinAbs(cb / 2, 1e-15));
    CHECK_THAT(s.rates(0, 2), WithinAbs(cb, 1e-15));
    CHECK_THAT(s.rates(1, 0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(s.rates(1, 2), WithinAbs(cb, 1e-15));
    CHECK((s.powers.row(1).array() == 1.0).all());
    CHECK(s.powers(0, 0) == 0.0);
    CHECK(s.powers(0, 2) == 1.0);
}

TEST_CASE("frontier_f2 with c = 0 lies on the C1 axis", "[frontier2]")
{
    const FrontierSample s = frontier_f2(TwoUser{2.0, 1.0, 0.0, 1.0, 1.0}, 17);
    CHECK((s.rates.row(1).array() == 0.0).all());
}

TEST_CASE("frontier_f2 starts at A on the mixed-curvature channel", "[frontier2]")
{
    const FrontierSample s = frontier_f2(mixed_channel(), 64);
    CHECK(s.rates(0, 0) == 0.0);
    CHECK_THAT(s.rates(1, 0), WithinAbs(4.0, 1e-15));
}

TEST_CASE("frontier_f1 on the unit channel", "[frontier2]")
{
    const FrontierSample s = frontier_f1(unit_channel(), 9);
    CHECK(s.pinned_index == 1);
    const Eigen::Index last = s.size() - 1;
    CHECK(s.powers(1, last) == 0.0);
    CHECK_THAT(s.rates(0, last), WithinAbs(1.0, 1e-15));
    CHECK(s.rates(1, last) == 0.0);
    CHECK(s.powers(1, 0) == 1.0);
    CHECK_THAT(s.rates(0, 0), WithinAbs(std::log2(1.5), 1e-15));
    CHECK_THAT(s.rates(1, 0), WithinAbs(std::log2(1.5), 1e-15));
    CHECK((s.powers.row(0).array() == 1.0).all());
    CHECK_THAT(f1_p2_for_rate(unit_channel(), 1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(f1_p2_for_rate(unit_channel(), std::log2(1.5)), WithinAbs(1.0, 1e-15));
}

TEST_CASE("frontier_f1 with b = 0 is a vertical segment", "[frontier2]")
{
    const TwoUser ch{3.0, 0.0, 2.0, 1.5, 1.0};
    const FrontierSample s = frontier_f1(ch, 11);
    const double c1 = std::log2(1.0 + 3.0);
    CHECK((s.rates.row(0).array() == c1).all());
    CHECK_THAT(s.rates(1, 0), WithinAbs(double(testsupport::ref_c2(ch, 1.0, 1.0)), 1e-15));
    CHECK(s.rates(1, 10) == 0.0);
    for (Eigen::Index k = 1; k < s.size(); ++k)
        CHECK(s.rates(1, k) < s.rates(1, k - 1));
}

TEST_CASE("sample ordering and pinned powers", "[frontier2][property]")
{
    testsupport::Rng rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        const TwoUser ch = rng.two_user(0.01, 100.0, rng.log_uniform(0.1, 10.0));
        const int res = rng.integer(2, 200);
        for (const FrontierSample &s : {frontier_f2(ch, res), frontier_f1(ch, res)}) {
            REQUIRE(s.size() == res);
            const int pinned = s.pinned_index - 1;
            CHECK((s.powers.row(pinned).array() == ch.p_max).all());
            for (Eigen::Index k = 1; k < s.size(); ++k) {
                CHECK(s.rates(0, k) > s.rates(0, k - 1));
                CHECK(s.rates(1, k) < s.rates(1, k - 1));
            }
        }
    }
}

TEST_CASE("sampled points match the bisection reference and the closed forms", "[frontier2][property]")
{
    testsupport::Rng rng(26);
    for (int trial = 0; trial < 100; ++trial) {
        const TwoUser ch = rng.two_user();
        const FrontierSample f2 = frontier_f2(ch, 33);
        const FrontierSample f1 = frontier_f1(ch, 33);
        for (Eigen::Index k = 0; k < 33; ++k) {
            const double c1 = f2.rates(0, k);
            const double ref = double(testsupport::ref_f2(ch, c1));
            CHECK_THAT(f2.rates(1, k), WithinAbs(ref, 1e-9));
            CHECK_THAT(f2_curve(ch, c1), WithinAbs(ref, 1e-9));

            const double e1 = f1.rates(0, k);
            const double ref1 = double(testsupport::ref_f1(ch, e1));
            CHECK_THAT(f1.rates(1, k), WithinAbs(ref1, 1e-9));
            if (k > 0)
                CHECK_THAT(f1_curve(ch, e1), WithinAbs(ref1, 1e-9 * (1.0 + ref1)));
        }
    }
}

TEST_CASE("F1 and F2 meet at B", "[frontier2][property]")
{
    testsupport::Rng rng(27);
    for (int trial = 0; trial < 300; ++trial) {
        const TwoUser ch = rng.two_user();
        const FrontierSample f2 = frontier_f2(ch, 50);
        const FrontierSample f1 = frontier_f1(ch, 50);
        const Eigen::Vector2d b = rate_pair(ch, ch.p_max, ch.p_max);
        CHECK((f2.rates.col(49) - f1.rates.col(0)).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((f2.rates.col(49) - b).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("potential lines at different P2 never share a rate point", "[frontier2][property]")
{
    testsupport::Rng rng(28);
    for (int trial = 0; trial < 50; ++trial) {
        const TwoUser ch = rng.two_user();
        const double p2a = rng.uniform(0.0, 0.5), p2b = rng.uniform(0.5, 1.0);
        std::vector<Eigen::Vector2d> line_a, line_b;
        for (int k = 0; k <= 100; ++k) {
            const double p1 = ch.p_max * k / 100.0;
            line_a.push_back(rate_pair(ch, p1, p2a));
            line_b.push_back(rate_pair(ch, p1, p2b));
        }
        for (const auto &u : line_a)
            for (const auto &v : line_b)
                CHECK((u - v).cwiseAbs().maxCoeff() > 1e-9);
    }
}

TEST_CASE("unit channel hull is A-B-C", "[frontier2]")
{
    const TwoUserFrontier f = two_user_frontier(unit_channel(), 128);
    REQUIRE(f.hull.size() == 3);
    CHECK((f.hull[0].rate - Eigen::Vector2d(0, 1)).norm() < 1e-12);
    CHECK((f.hull[1].rate - Eigen::Vector2d(std::log2(1.5), std::log2(1.5))).norm() < 1e-12);
    CHECK((f.hull[2].rate - Eigen::Vector2d(1, 0)).norm() < 1e-12);
    CHECK(f.on_hull(2, 0));
    CHECK(f.on_hull(2, 127));
    CHECK(f.on_hull(1, 127));
    CHECK_FALSE(f.on_hull(2, 64));
}

TEST_CASE("mixed-curvature hull follows F2, chords to B, then follows F1", "[frontier2]")
{
    const TwoUser ch = mixed_channel();
    const TwoUserFrontier f = two_user_frontier(ch, 512);
    const double p1_b = ch.p_max;
    std::vector<double> f2_p1;
    std::size_t f1_count = 0;
    for (const HullVertex &v : f.hull) {
        if (v.curve == 2 && v.power.x() < p1_b)
            f2_p1.push_back(v.power.x());
        if (v.curve == 1)
            ++f1_count;
    }
    // The concave part of F2 is kept up to the tangent point, and every F1
    // sample is on the hull because F1 is concave throughout.
    REQUIRE_FALSE(f2_p1.empty());
    const double tangent = f2_p1.back();
    CHECK(tangent < 0.456776);
    CHECK_THAT(tangent, WithinAbs(0.2965, 2e-3));
    CHECK(f1_count >= 511);
    CHECK(f.hull.front().rate == f.anchors.a);
    CHECK((f.hull.back().rate - f.anchors.c).norm() < 1e-15);
}

TEST_CASE("degenerate channels", "[frontier2]")
{
    const TwoUserFrontier zero = two_user_frontier(TwoUser{0.0, 1.0, 0.0, 1.0, 1.0}, 16);
    REQUIRE(zero.hull.size() == 1);
    CHECK(zero.hull[0].rate.isZero());

    const TwoUserFrontier axis = two_user_frontier(TwoUser{0.0, 1.0, 3.0, 1.0, 1.0}, 16);
    REQUIRE(axis.hull.size() == 2);
    CHECK((axis.hull[0].rate - Eigen::Vector2d(0.0, 2.0)).norm() < 1e-15);
    CHECK(axis.hull[1].rate.isZero());
    CHECK((axis.f2.rates.row(0).array() == 0.0).all());

    // No interference: the region is the rectangle with corner B.
    const TwoUserFrontier box = two_user_frontier(TwoUser{1.0, 0.0, 1.0, 0.0, 1.0}, 16);
    REQUIRE(box.hull.size() == 3);
    CHECK((box.hull[1].rate - Eigen::Vector2d(1, 1)).norm() < 1e-15);
    CHECK((box.hull[2].rate - Eigen::Vector2d(1, 0)).norm() < 1e-15);
}

TEST_CASE("hull is concave, anchored at A and C, and dominates every sample", "[frontier2][property]")
{
    testsupport::Rng rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const TwoUser ch = rng.two_user(0.01, 100.0, rng.log_uniform(0.1, 10.0));
        const TwoUserFrontier f = two_user_frontier(ch, rng.integer(2, 300));
        REQUIRE(f.hull.size() >= 2);
        CHECK((f.hull.front().rate - f.anchors.a).norm() < 1e-12);
        CHECK((f.hull.back().rate - f.anchors.c).norm() < 1e-12);
        Eigen::Matrix2Xd poly(2, Eigen::Index(f.hull.size()));
        for (std::size_t k = 0; k < f.hull.size(); ++k)
            poly.col(Eigen::Index(k)) = f.hull[k].rate;
        for (Eigen::Index k = 1; k + 1 < poly.cols(); ++k) {
            const Eigen::Vector2d u = poly.col(k) - poly.col(k - 1);
            const Eigen::Vector2d v = poly.col(k + 1) - poly.col(k);
            CHECK(u.x() * v.y() - u.y() * v.x() < 0.0);
            CHECK(u.x() > 0.0);
        }
        for (const FrontierSample *s : {&f.f1, &f.f2})
            for (Eigen::Index k = 0; k < s->size(); ++k)
                // Componentwise: some hull point is within the rounding grid in both coordinates.
                CHECK(testsupport::polyline_height(poly, std::max(s->rates(0, k) - 2e-9, 0.0)) >=
                      s->rates(1, k) - 2e-9);
        // Points from the full power box stay under the hull too.
        for (int k = 0; k < 50; ++k) {
            const Eigen::Vector2d r = rate_pair(ch, rng.uniform(0, ch.p_max), rng.uniform(0, ch.p_max));
            CHECK(f.hull_height(std::max(r.x() - 2e-9, 0.0)) >= r.y() - 2e-9);
        }
    }
}

TEST_CASE("hull_height", "[frontier2]")
{
    const TwoUserFrontier f = two_user_frontier(unit_channel(), 32);
    CHECK(f.hull_height(-0.1) == -INFINITY);
    CHECK(f.hull_height(1.1) == -INFINITY);
    CHECK_THAT(f.hull_height(0.0), WithinAbs(1.0, 1e-15));
    const double cb = std::log2(1.5);
    CHECK_THAT(f.hull_height(cb / 2), WithinAbs(1.0 + (cb - 1.0) / 2, 1e-12));
    CHECK_THAT(f.hull_height(1.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("upper_hull drops collinear and duplicate points", "[frontier2]")
{
    Eigen::Matrix2Xd pts(2, 6);
    pts << 0, 1, 2, 3, 1, 1, 3, 2, 1, 0, 2.0000000000001, 0.5;
    const std::vector<Eigen::Index> h = upper_hull(pts);
    CHECK(h == std::vector<Eigen::Index>{0, 3});
}

TEST_CASE("frontier errors", "[frontier2][error]")
{
    CHECK_THROWS_AS(frontier_f2(unit_channel(), 1), std::invalid_argument);
    CHECK_THROWS_AS(frontier_f1(unit_channel(), 0), std::invalid_argument);
    CHECK_THROWS_AS(two_user_frontier(TwoUser{1.0, -1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
}
