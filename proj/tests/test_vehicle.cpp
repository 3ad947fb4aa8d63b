#include <doctest.h>

#include <cmath>
#include <random>

#include "cccsafe/vehicle.hpp"

using namespace cccsafe;

TEST_CASE("control_affine splits the dynamics into drift and input direction") {
    const ResistanceModel no_drag;

    SUBCASE("equilibrium state has zero drift") {
        const auto terms = control_affine({30.0, 15.0, 15.0}, no_drag, 0.0);
        CHECK(terms.drift == Eigen::Vector3d(0.0, 0.0, 0.0));
        CHECK(terms.control_direction == Eigen::Vector3d(0.0, 1.0, 0.0));
    }
    SUBCASE("closing gap and braking lead") {
        const auto terms = control_affine({10.0, 5.0, 3.0}, no_drag, -1.0);
        CHECK(terms.drift == Eigen::Vector3d(-2.0, 0.0, -1.0));
        CHECK(terms.control_direction == Eigen::Vector3d(0.0, 1.0, 0.0));
    }
    SUBCASE("resistance enters the speed equation") {
        const ResistanceModel drag{0.1, 0.001};
        const auto terms = control_affine({10.0, 10.0, 0.0}, drag, 0.5);
        CHECK(terms.drift[0] == -10.0);
        CHECK(terms.drift[1] == doctest::Approx(-0.2).epsilon(1e-14));
        CHECK(terms.drift[2] == 0.5);
    }
    SUBCASE("input direction is constant over random states") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> box(-50.0, 50.0);
        for (int i = 0; i < 100; ++i) {
            const State s{box(rng), box(rng), box(rng)};
            const auto terms = control_affine(s, no_drag, box(rng));
            CHECK(terms.control_direction == Eigen::Vector3d(0.0, 1.0, 0.0));
        }
    }
}

TEST_CASE("state_derivative is drift plus commanded acceleration") {
    const ResistanceModel no_drag;
    CHECK(state_derivative({30.0, 15.0, 15.0}, 0.0, no_drag, 0.0) ==
          Eigen::Vector3d(0.0, 0.0, 0.0));
    CHECK(state_derivative({10.0, 5.0, 3.0}, -1.9, no_drag, -1.0) ==
          Eigen::Vector3d(-2.0, -1.9, -1.0));
    CHECK(state_derivative({5.0, 0.0, 0.0}, 1.0, no_drag, 0.0) ==
          Eigen::Vector3d(0.0, 1.0, 0.0));

    SUBCASE("agrees with control_affine for random inputs") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> box(-20.0, 20.0);
        for (int i = 0; i < 100; ++i) {
            const State s{box(rng), box(rng), box(rng)};
            const double u = box(rng);
            const double lead_accel = box(rng);
            const ResistanceModel drag{0.05, 0.002};
            const auto terms = control_affine(s, drag, lead_accel);
            const Eigen::Vector3d expected = terms.drift + terms.control_direction * u;
            CHECK(state_derivative(s, u, drag, lead_accel) == expected);
        }
    }
}

TEST_CASE("resistance model is nonnegative for nonnegative speeds") {
    const ResistanceModel drag{0.3, 0.004};
    for (double v = 0.0; v <= 40.0; v += 0.5) {
        CHECK(drag(v) >= 0.0);
    }
    CHECK(ResistanceModel{}(12.0) == 0.0);
}

TEST_CASE("constant-jerk stop profile") {
    const ConstantJerkStop profile{15.0, 2.0, 0.0};
    const LeadProfile lead = profile;
    const double half_span = std::sqrt(15.0 / 2.0);

    SUBCASE("braking phase ramps the deceleration") {
        CHECK(lead_acceleration(lead, 1.0, 13.0) == doctest::Approx(-2.0).epsilon(1e-14));
    }
    SUBCASE("profile ends at rest with zero acceleration") {
        CHECK(2.0 * half_span == doctest::Approx(5.477225575051661).epsilon(1e-12));
        CHECK(lead_acceleration(lead, 2.0 * half_span, 0.0) == 0.0);
        CHECK(lead_acceleration(lead, 10.0, 0.0) == 0.0);
        CHECK(lead_speed(lead, 2.0 * half_span) == 0.0);
        CHECK(lead_speed(lead, 100.0) == 0.0);
    }
    SUBCASE("speed and acceleration are continuous across the phase switch") {
        const double eps = 1e-9;
        CHECK(lead_speed(lead, half_span - eps) ==
              doctest::Approx(lead_speed(lead, half_span + eps)).epsilon(1e-6));
        const double before =
            lead_acceleration(lead, half_span - eps, lead_speed(lead, half_span - eps));
        const double after =
            lead_acceleration(lead, half_span + eps, lead_speed(lead, half_span + eps));
        CHECK(before == doctest::Approx(after).epsilon(1e-6));
        CHECK(lead_speed(lead, half_span) == doctest::Approx(7.5).epsilon(1e-12));
    }
    SUBCASE("start_time delays the schedule") {
        const LeadProfile delayed = ConstantJerkStop{15.0, 2.0, 1.0};
        CHECK(lead_acceleration(delayed, 0.5, 15.0) == 0.0);
        CHECK(lead_speed(delayed, 1.0) == 15.0);
        CHECK(lead_acceleration(delayed, 2.0, 13.0) == doctest::Approx(-2.0).epsilon(1e-14));
    }
    SUBCASE("negative integrated speed clamps the command") {
        CHECK(lead_acceleration(lead, 1.0, 0.0) == 0.0);
        CHECK(lead_acceleration(lead, 1.0, -1e-12) == 0.0);
    }
}

TEST_CASE("constant-speed and piecewise profiles") {
    CHECK(lead_acceleration(ConstantSpeed{15.0}, 0.0, 15.0) == 0.0);
    CHECK(lead_acceleration(ConstantSpeed{15.0}, 42.0, 15.0) == 0.0);
    CHECK(lead_speed(ConstantSpeed{10.0}, 3.0) == 10.0);

    const LeadProfile table = PiecewiseAccel{{{0.0, 0.0}, {1.0, -2.0}, {3.0, 0.0}}};
    SUBCASE("linear interpolation between breakpoints") {
        CHECK(lead_acceleration(table, 0.5, 10.0) == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(lead_acceleration(table, 2.0, 10.0) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("held constant beyond the ends") {
        CHECK(lead_acceleration(table, -1.0, 10.0) == 0.0);
        CHECK(lead_acceleration(table, 99.0, 10.0) == 0.0);
    }
    SUBCASE("stopped leads stay stopped") {
        const LeadProfile restart = PiecewiseAccel{{{0.0, -5.0}, {2.0, 3.0}}};
        CHECK(lead_acceleration(restart, 2.0, 0.0) == 0.0);
    }
    SUBCASE("no closed-form speed") {
        CHECK_THROWS_AS((void)lead_speed(table, 1.0), std::invalid_argument);
    }
}

TEST_CASE("lead profile validation") {
    CHECK_NOTHROW(validate_lead_profile(ConstantJerkStop{15.0, 2.0, 0.0}));
    CHECK_NOTHROW(validate_lead_profile(ConstantJerkStop{15.0, 10.0, 0.0}));
    CHECK_THROWS_AS(validate_lead_profile(ConstantJerkStop{0.0, 2.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_lead_profile(ConstantJerkStop{15.0, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_lead_profile(ConstantJerkStop{15.0, 10.5, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_lead_profile(PiecewiseAccel{{{1.0, 0.0}, {1.0, 2.0}}}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_lead_profile(PiecewiseAccel{{{0.0, 0.0}, {2.0, -1.0}}}));
}

TEST_CASE("brake bound margins") {
    const BrakeBound bound = BrakeBound::sqrt_scaled(20.0);

    SUBCASE("constant speed keeps the full gamma margin") {
        const double margin = check_brake_bound(ConstantSpeed{10.0}, bound, 1e-3, 10.0);
        CHECK(margin == doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
    }
    SUBCASE("jerk 10 touches the bound") {
        const double margin = check_brake_bound(ConstantJerkStop{15.0, 10.0, 0.0}, bound, 1e-3, 10.0);
        CHECK(margin >= -1e-9);
        CHECK(margin <= 1e-6);
    }
    SUBCASE("gentler jerks keep positive margin") {
        CHECK(check_brake_bound(ConstantJerkStop{15.0, 2.0, 0.0}, bound, 1e-3, 10.0) > 0.0);
        CHECK(check_brake_bound(ConstantJerkStop{8.0, 5.0, 1.0}, bound, 1e-3, 12.0) > 0.0);
    }
    SUBCASE("piecewise profile braking harder than the bound is caught") {
        // -8 m/s^2 from 4 m/s violates a_L >= -sqrt(20 vL) almost immediately
        const LeadProfile hard = PiecewiseAccel{{{0.0, -8.0}, {5.0, -8.0}}};
        CHECK(check_brake_bound(hard, bound, 1e-3, 2.0, 4.0) < 0.0);
    }
    SUBCASE("brake bound is class K") {
        CHECK(bound(0.0) == 0.0);
        double prev = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double value = bound(0.15 * i);
            CHECK(value > prev);
            prev = value;
        }
        const BrakeBound lin = BrakeBound::linear(2.0);
        CHECK(lin(0.0) == 0.0);
        CHECK(lin(3.0) == 6.0);
    }
}

TEST_CASE("integrating any profile keeps the lead speed nonnegative") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> speed0(0.0, 15.0);
    std::uniform_real_distribution<double> jerk(0.5, 10.0);
    std::uniform_real_distribution<double> accel(-6.0, 2.0);

    for (int trial = 0; trial < 50; ++trial) {
        LeadProfile profile;
        double speed = 0.0;
        switch (trial % 3) {
            case 0:
                speed = speed0(rng);
                profile = ConstantSpeed{speed};
                break;
            case 1: {
                const double v0 = std::max(speed0(rng), 0.1);
                profile = ConstantJerkStop{v0, jerk(rng), 0.5};
                speed = v0;
                break;
            }
            default: {
                PiecewiseAccel table;
                double t = 0.0;
                for (int k = 0; k < 5; ++k) {
                    table.table.emplace_back(t, accel(rng));
                    t += 1.0 + 0.5 * k;
                }
                profile = table;
                speed = speed0(rng);
                break;
            }
        }
        // no external clamp: the schedule's own rule must keep the speed from
        // running negative (up to one Euler step of undershoot)
        const double dt = 1e-3;
        bool ok = true;
        for (double t = 0.0; t < 12.0 && ok; t += dt) {
            const double a = lead_acceleration(profile, t, speed);
            speed += dt * a;
            ok = speed >= -8.0 * dt;
        }
        CHECK(ok);
    }
}
