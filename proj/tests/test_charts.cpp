#include <doctest.h>

#include <cmath>
#include <random>

#include "cccsafe/charts.hpp"

using namespace cccsafe;

namespace {

const PolicyParams kTablePolicy{5.0, 0.6, 15.0};
const SafetyParams kTableSafety{1.0, 0.6, 0.6};
constexpr double kVBar = 15.0;

// smallest distance gain accepted by ttc_safe at fixed speed/accel gain
double ttc_min_distance_gain(double speed_gain, double accel_gain, const BrakeBound& bound) {
    double lo = 0.0;
    double hi = 8.0;
    const auto safe = [&](double a) {
        return ttc_safe({a, speed_gain, accel_gain}, kTablePolicy, kTableSafety, kVBar, bound, 0.01);
    };
    if (safe(lo)) return lo;
    REQUIRE(safe(hi));
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (safe(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

TEST_CASE("headway chart membership") {
    SUBCASE("reference points on both sides of the boundary") {
        CHECK(th_safe({0.4, 0.6, 0.0}, kTablePolicy, kTableSafety, kVBar));
        CHECK_FALSE(th_safe({0.4, 0.3, 0.0}, kTablePolicy, kTableSafety, kVBar));
        CHECK(th_safe({2.0, 0.3, 0.0}, kTablePolicy, kTableSafety, kVBar));
    }
    SUBCASE("threshold at speed gain 0.3") {
        const double threshold = th_min_safe_distance_gain(0.3, kTablePolicy, kTableSafety, kVBar);
        CHECK(std::abs(threshold - 1.875) <= 1e-12);
    }
    SUBCASE("nonzero accel gain is outside the theorem's scope") {
        CHECK_THROWS_AS(th_safe({0.4, 0.6, 0.5}, kTablePolicy, kTableSafety, kVBar),
                        std::invalid_argument);
    }
    SUBCASE("negative gains are rejected as unsafe") {
        CHECK_FALSE(th_safe({-0.1, 0.6, 0.0}, kTablePolicy, kTableSafety, kVBar));
        CHECK_FALSE(th_safe({0.4, -0.1, 0.0}, kTablePolicy, kTableSafety, kVBar));
    }
    SUBCASE("matched-speed-gain line works for any speed cap") {
        CHECK(th_safe({0.0, 0.6, 0.0}, kTablePolicy, kTableSafety, 1e9));
    }
    SUBCASE("monotone in the distance gain") {
        std::mt19937 rng(53);
        std::uniform_real_distribution<double> gain(0.0, 4.0);
        for (int i = 0; i < 300; ++i) {
            const double a = gain(rng);
            const double b = gain(rng) * 0.375;  // B in [0, 1.5]
            if (th_safe({a, b, 0.0}, kTablePolicy, kTableSafety, kVBar)) {
                CHECK(th_safe({a + 0.5, b, 0.0}, kTablePolicy, kTableSafety, kVBar));
                CHECK(th_safe({a + 2.0, b, 0.0}, kTablePolicy, kTableSafety, kVBar));
            }
        }
    }
    SUBCASE("regions shrink as the speed cap grows") {
        std::mt19937 rng(59);
        std::uniform_real_distribution<double> gain(0.0, 4.0);
        for (int i = 0; i < 300; ++i) {
            const Gains gains{gain(rng), gain(rng) * 0.375, 0.0};
            if (th_safe(gains, kTablePolicy, kTableSafety, 15.0)) {
                CHECK(th_safe(gains, kTablePolicy, kTableSafety, 5.0));
            }
        }
    }
}

TEST_CASE("conflict chart membership") {
    const BrakeBound bound = BrakeBound::sqrt_scaled(20.0);

    SUBCASE("full feedforward removes the brake-bound burden") {
        CHECK(ttc_safe({0.0, 0.6, 1.0}, kTablePolicy, kTableSafety, kVBar, bound, 0.01));
        CHECK(ttc_safe({1.0, 0.6, 1.0}, kTablePolicy, kTableSafety, kVBar, bound, 0.01));
    }
    SUBCASE("zero gains are unsafe") {
        CHECK_FALSE(ttc_safe({0.0, 0.0, 0.0}, kTablePolicy, kTableSafety, kVBar, bound, 0.01));
    }
    SUBCASE("gate conditions return false rather than throwing") {
        CHECK_FALSE(ttc_safe({1.0, 0.6, 1.5}, kTablePolicy, kTableSafety, kVBar, bound, 0.01));
        CHECK_FALSE(ttc_safe({-0.1, 0.6, 0.0}, kTablePolicy, kTableSafety, kVBar, bound, 0.01));
        const PolicyParams tight{1.0, 0.6, 15.0};  // D_st = D_sf kills the margin term
        CHECK_FALSE(ttc_safe({5.0, 0.6, 0.0}, tight, kTableSafety, kVBar, bound, 0.01));
    }
    SUBCASE("boundary at matched speed gain matches the hand-derived value") {
        // at B = kap, C = 0: condition 2.4 A - 5/A >= 0, so A* = sqrt(5/2.4)
        const double expected = std::sqrt(5.0 / 2.4);
        const double measured = ttc_min_distance_gain(0.6, 0.0, bound);
        CHECK(measured == doctest::Approx(expected).epsilon(1e-6));
    }
    SUBCASE("boundary moves to smaller distance gains as feedforward grows") {
        double previous = ttc_min_distance_gain(0.6, 0.0, bound);
        for (const double c : {0.25, 0.5, 0.75}) {
            const double current = ttc_min_distance_gain(0.6, c, bound);
            CHECK(current <= previous + 1e-9);
            previous = current;
        }
    }
}

TEST_CASE("stability regions") {
    CHECK(plant_stable({0.4, 0.6, 0.0}));
    CHECK(string_stable({0.4, 0.6, 0.0}, 0.6));
    CHECK(string_stable({0.0, 0.6, 0.0}, 0.6));   // on the boundary
    CHECK_FALSE(string_stable({0.1, 0.0, 0.0}, 0.6));
    CHECK_FALSE(string_stable({1.0, 0.0, 1.5}, 0.6));

    SUBCASE("string boundary passes through B = (1 - C) gradient at A = 0") {
        for (const double c : {0.0, 0.25, 0.5, 0.75}) {
            const double b = (1.0 - c) * 0.6;
            CHECK(string_stable({0.0, b, c}, 0.6));
            CHECK_FALSE(string_stable({0.0, b - 1e-9, c}, 0.6));
        }
    }
}

TEST_CASE("rasterization") {
    SUBCASE("axis nodes land on exact grid values") {
        const auto values = axis_values({0.0, 1.5, 0.01});
        REQUIRE(values.size() == 151);
        CHECK(values[60] == 0.6);
        CHECK(values[0] == 0.0);
        CHECK(values[150] == doctest::Approx(1.5).epsilon(1e-15));
    }
    SUBCASE("degenerate single-point ranges give a 1x1 grid") {
        ChartSpec spec;
        spec.criterion = ChartCriterion::TimeHeadway;
        spec.policy = kTablePolicy;
        spec.safety = kTableSafety;
        spec.b_range = {0.6, 0.6, 0.01};
        spec.a_range = {0.0, 0.0, 0.01};
        const RegionGrid grid = rasterize(spec);
        REQUIRE(grid.b_values.size() == 1);
        REQUIRE(grid.a_values.size() == 1);
        CHECK(grid.is_member(0, 0));
    }
    SUBCASE("headway region is a V with vertex at (0.6, 0)") {
        ChartSpec spec;
        spec.criterion = ChartCriterion::TimeHeadway;
        spec.policy = kTablePolicy;
        spec.safety = kTableSafety;
        spec.v_bar = 15.0;
        spec.b_range = {0.0, 1.5, 0.01};
        spec.a_range = {0.0, 1.5, 0.01};
        const RegionGrid grid = rasterize(spec);

        // vertex cell is a member, and each column is upward closed with the
        // minimum member exactly at the analytic threshold
        CHECK(grid.is_member(0, 60));
        for (std::size_t bi = 0; bi < grid.b_values.size(); ++bi) {
            const double threshold =
                th_min_safe_distance_gain(grid.b_values[bi], kTablePolicy, kTableSafety, 15.0);
            bool seen_member = false;
            for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
                const bool member = grid.is_member(ai, bi);
                if (seen_member) CHECK(member);  // upward closed
                if (member && !seen_member) {
                    seen_member = true;
                    CHECK(grid.a_values[ai] >= threshold);
                    if (ai > 0) CHECK(grid.a_values[ai - 1] < threshold);
                }
            }
            const bool reachable = threshold <= grid.a_values.back();
            CHECK(seen_member == reachable);
        }
    }
    SUBCASE("a huge speed cap collapses the region to the matched-gain line") {
        ChartSpec spec;
        spec.criterion = ChartCriterion::TimeHeadway;
        spec.policy = kTablePolicy;
        spec.safety = kTableSafety;
        spec.v_bar = 1e6;
        spec.b_range = {0.0, 1.5, 0.01};
        spec.a_range = {0.0, 1.5, 0.01};
        const RegionGrid grid = rasterize(spec);
        for (std::size_t bi = 0; bi < grid.b_values.size(); ++bi) {
            for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
                CHECK(grid.is_member(ai, bi) == (grid.b_values[bi] == 0.6));
            }
        }
    }
}

TEST_CASE("boundary certification") {
    const ResistanceModel no_drag;
    const BrakeBound bound = BrakeBound::sqrt_scaled(20.0);
    const ClassK unit = ClassK::linear(1.0);

    SUBCASE("provably safe gains certify clean") {
        const auto report = certify_boundary(MeasureKind::TimeHeadway, {0.4, 0.6, 0.0},
                                             kTablePolicy, kTableSafety, no_drag, kVBar, bound,
                                             10000, 0, unit);
        CHECK(report.worst_margin >= -1e-9);
        CHECK(report.samples >= 10000);
    }
    SUBCASE("unsafe gains produce a negative margin at a corner") {
        const auto report = certify_boundary(MeasureKind::TimeHeadway, {0.4, 0.3, 0.0},
                                             kTablePolicy, kTableSafety, no_drag, kVBar, bound,
                                             10000, 0, unit);
        CHECK(report.worst_margin < 0.0);
        // worst corner: v = v_bar, vL = 0, margin = 0.96 - 4.5
        CHECK(report.worst_margin == doctest::Approx(-3.54).epsilon(1e-12));
        CHECK(report.argmin_state.speed == kVBar);
        CHECK(report.argmin_state.lead_speed == 0.0);
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto first = certify_boundary(MeasureKind::TimeToConflict, {1.5, 0.6, 0.5},
                                            kTablePolicy, kTableSafety, no_drag, kVBar, bound,
                                            5000, 42, unit);
        const auto second = certify_boundary(MeasureKind::TimeToConflict, {1.5, 0.6, 0.5},
                                             kTablePolicy, kTableSafety, no_drag, kVBar, bound,
                                             5000, 42, unit);
        CHECK(first.worst_margin == second.worst_margin);
        CHECK(first.argmin_state == second.argmin_state);
        CHECK(first.samples == second.samples);
    }
    SUBCASE("distance criterion is not certifiable directly") {
        CHECK_THROWS_AS(certify_boundary(MeasureKind::Distance, {0.4, 0.6, 0.0}, kTablePolicy,
                                         kTableSafety, no_drag, kVBar, bound, 100, 0, unit),
                        std::invalid_argument);
    }
    SUBCASE("chart-true gains never certify unsafe") {
        std::mt19937 rng(61);
        std::uniform_real_distribution<double> a_gain(0.0, 4.0);
        std::uniform_real_distribution<double> b_gain(0.0, 1.5);
        std::uniform_real_distribution<double> c_gain(0.0, 1.0);
        int th_true = 0;
        int ttc_true = 0;
        for (int i = 0; i < 200; ++i) {
            const Gains th_gains{a_gain(rng), b_gain(rng), 0.0};
            if (th_safe(th_gains, kTablePolicy, kTableSafety, kVBar)) {
                ++th_true;
                const auto report =
                    certify_boundary(MeasureKind::TimeHeadway, th_gains, kTablePolicy,
                                     kTableSafety, no_drag, kVBar, bound, 2000, 7 + i, unit);
                CHECK(report.worst_margin >= -1e-9);
            }
            const Gains ttc_gains{a_gain(rng), b_gain(rng), c_gain(rng)};
            if (ttc_safe(ttc_gains, kTablePolicy, kTableSafety, kVBar, bound, 0.01)) {
                ++ttc_true;
                const auto report =
                    certify_boundary(MeasureKind::TimeToConflict, ttc_gains, kTablePolicy,
                                     kTableSafety, no_drag, kVBar, bound, 2000, 7 + i, unit);
                CHECK(report.worst_margin >= -1e-9);
            }
        }
        CHECK(th_true > 20);
        CHECK(ttc_true > 20);
    }
}
