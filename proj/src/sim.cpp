#include "cccsafe/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cccsafe {

Scenario default_braking_scenario() {
    Scenario scenario;
    scenario.x0 = {30.0, 15.0, 15.0};  // D = D_st + v_max / gradient
    scenario.lead = ConstantJerkStop{15.0, 2.0, 1.0};
    scenario.duration = 30.0;
    scenario.dt = 0.01;
    return scenario;
}

IntegrationError::IntegrationError(double t)
    : std::runtime_error("integration produced a non-finite state at t = " + std::to_string(t)),
      time_(t) {}

namespace {

struct ControlOutputs {
    double desired = 0.0;
    double applied = 0.0;
    double safe = 0.0;
};

ControlOutputs control(const State& state, double lead_accel, const Scenario& scenario) {
    const auto& spec = scenario.controller;
    ControlOutputs out;
    out.safe = spec.criterion == MeasureKind::TimeHeadway
                   ? safe_input_th(state, scenario.safety, scenario.resistance, spec.alpha)
                   : safe_input_ttc(state, scenario.safety, scenario.resistance, lead_accel,
                                    spec.alpha);
    switch (spec.law) {
        case ControlLaw::Nominal:
            out.desired = ccc_desired(state, lead_accel, spec.gains, scenario.policy);
            out.applied = out.desired;
            break;
        case ControlLaw::Filtered:
            out.desired = ccc_desired(state, lead_accel, spec.gains, scenario.policy);
            out.applied = scalar_filter(out.desired, out.safe, -1);  // lgh = -1
            break;
        case ControlLaw::SafeOnly:
            out.desired = out.safe;
            out.applied = out.safe;
            break;
    }
    return out;
}

Eigen::Vector3d closed_loop_derivative(const State& state, double t, const Scenario& scenario) {
    const double lead_accel = lead_acceleration(scenario.lead, t, state.lead_speed);
    const double input = control(state, lead_accel, scenario).applied;
    return state_derivative(state, input, scenario.resistance, lead_accel);
}

void validate(const Scenario& scenario) {
    if (!(scenario.dt > 0.0)) throw std::invalid_argument("scenario: dt must be > 0");
    if (!(scenario.duration >= scenario.dt)) {
        throw std::invalid_argument("scenario: duration must be >= dt");
    }
    if (!std::isfinite(scenario.x0.distance) || !std::isfinite(scenario.x0.speed) ||
        !std::isfinite(scenario.x0.lead_speed)) {
        throw std::invalid_argument("scenario: initial state must be finite");
    }
    if (scenario.controller.criterion == MeasureKind::Distance) {
        throw std::invalid_argument("scenario: filter criterion must be TimeHeadway or TimeToConflict");
    }
    validate_lead_profile(scenario.lead);
}

}  // namespace

State step(const State& state, double t, const Scenario& scenario) {
    const double dt = scenario.dt;
    const Eigen::Vector3d x = to_vector(state);
    const Eigen::Vector3d k1 = closed_loop_derivative(state, t, scenario);
    const Eigen::Vector3d k2 =
        closed_loop_derivative(state_from(x + 0.5 * dt * k1), t + 0.5 * dt, scenario);
    const Eigen::Vector3d k3 =
        closed_loop_derivative(state_from(x + 0.5 * dt * k2), t + 0.5 * dt, scenario);
    const Eigen::Vector3d k4 = closed_loop_derivative(state_from(x + dt * k3), t + dt, scenario);
    Eigen::Vector3d next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) throw IntegrationError(t + dt);
    // lead kinematics are clamped at standstill; keep the discrete state on
    // that manifold too (the ego speed is deliberately left unclamped)
    if (state.lead_speed >= 0.0 && next[2] < 0.0) next[2] = 0.0;
    return state_from(next);
}

Trajectory run(const Scenario& scenario) {
    validate(scenario);
    const auto steps =
        static_cast<std::size_t>(std::floor(scenario.duration / scenario.dt + 1e-9));

    const SafetyMeasure h_d{MeasureKind::Distance, scenario.safety};
    const SafetyMeasure h_th{MeasureKind::TimeHeadway, scenario.safety};
    const SafetyMeasure h_ttc{MeasureKind::TimeToConflict, scenario.safety};

    Trajectory trajectory;
    trajectory.reserve(steps + 1);
    State state = scenario.x0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * scenario.dt;
        const double lead_accel = lead_acceleration(scenario.lead, t, state.lead_speed);
        const ControlOutputs u = control(state, lead_accel, scenario);
        trajectory.push_back({t, state.distance, state.speed, state.lead_speed, lead_accel,
                              u.desired, u.applied, u.safe, evaluate(h_d, state),
                              evaluate(h_th, state), evaluate(h_ttc, state)});
        if (i < steps) state = step(state, t, scenario);
    }
    return trajectory;
}

MonitorReport monitor(const Trajectory& trajectory) {
    if (trajectory.empty()) throw std::invalid_argument("monitor: trajectory is empty");

    MonitorReport report;
    report.distance.min_value = trajectory.front().h_distance;
    report.headway.min_value = trajectory.front().h_headway;
    report.conflict.min_value = trajectory.front().h_conflict;
    report.min_input = report.max_input = trajectory.front().input_applied;

    std::size_t active = 0;
    const auto track = [](MeasureStats& stats, double h, double t) {
        stats.min_value = std::min(stats.min_value, h);
        if (h < 0.0 && !stats.first_violation_time) stats.first_violation_time = t;
    };
    for (const auto& record : trajectory) {
        track(report.distance, record.h_distance, record.t);
        track(report.headway, record.h_headway, record.t);
        track(report.conflict, record.h_conflict, record.t);
        report.min_input = std::min(report.min_input, record.input_applied);
        report.max_input = std::max(report.max_input, record.input_applied);
        if (record.input_applied != record.input_desired) ++active;
    }
    report.filter_active_fraction =
        static_cast<double>(active) / static_cast<double>(trajectory.size());
    return report;
}

}  // namespace cccsafe
