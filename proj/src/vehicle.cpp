#include "cccsafe/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cccsafe {

void validate_lead_profile(const LeadProfile& profile) {
    if (const auto* jerk_stop = std::get_if<ConstantJerkStop>(&profile)) {
        if (!(jerk_stop->initial_speed > 0.0)) {
            throw std::invalid_argument("ConstantJerkStop: initial_speed must be > 0");
        }
        if (!(jerk_stop->jerk > 0.0 && jerk_stop->jerk <= 10.0)) {
            throw std::invalid_argument("ConstantJerkStop: jerk must be in (0, 10]");
        }
        if (!(jerk_stop->start_time >= 0.0)) {
            throw std::invalid_argument("ConstantJerkStop: start_time must be >= 0");
        }
    } else if (const auto* piecewise = std::get_if<PiecewiseAccel>(&profile)) {
        const auto& table = piecewise->table;
        for (std::size_t i = 1; i < table.size(); ++i) {
            if (!(table[i - 1].first < table[i].first)) {
                throw std::invalid_argument("PiecewiseAccel: breakpoint times must be strictly increasing");
            }
        }
    }
}

BrakeBound BrakeBound::sqrt_scaled(double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("BrakeBound: scale must be > 0");
    return BrakeBound(Kind::SqrtScaled, scale);
}

BrakeBound BrakeBound::linear(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("BrakeBound: rate must be > 0");
    return BrakeBound(Kind::Linear, rate);
}

double BrakeBound::operator()(double speed) const {
    switch (kind_) {
        case Kind::SqrtScaled:
            return std::sqrt(param_ * std::max(speed, 0.0));
        case Kind::Linear:
            return param_ * speed;
    }
    return 0.0;
}

ControlAffineTerms control_affine(const State& state, const ResistanceModel& resistance,
                                  double lead_accel) {
    return {{state.lead_speed - state.speed, -resistance(state.speed), lead_accel},
            {0.0, 1.0, 0.0}};
}

Eigen::Vector3d state_derivative(const State& state, double input,
                                 const ResistanceModel& resistance, double lead_accel) {
    return {state.lead_speed - state.speed, input - resistance(state.speed), lead_accel};
}

namespace {

double piecewise_accel_at(const PiecewiseAccel& profile, double t) {
    const auto& table = profile.table;
    if (table.empty()) return 0.0;
    if (t <= table.front().first) return table.front().second;
    if (t >= table.back().first) return table.back().second;
    auto upper = std::upper_bound(table.begin(), table.end(), t,
                                  [](double value, const auto& row) { return value < row.first; });
    auto lower = std::prev(upper);
    const double span = upper->first - lower->first;
    const double w = (t - lower->first) / span;
    return lower->second + w * (upper->second - lower->second);
}

// Ramp phase follows the schedule in time; the release phase uses the
// state-feedback identity |a| = sqrt(2 j vL), which holds exactly along the
// schedule and drains any leftover integration residue to a true standstill.
double jerk_stop_accel_at(const ConstantJerkStop& profile, double t, double lead_speed) {
    const double tau = t - profile.start_time;
    if (tau <= 0.0 || lead_speed <= 0.0) return 0.0;
    const double half_span = std::sqrt(profile.initial_speed / profile.jerk);
    if (tau < half_span) return -profile.jerk * tau;
    return -std::sqrt((2.0 * profile.jerk) * lead_speed);
}

double jerk_stop_speed_at(const ConstantJerkStop& profile, double t) {
    const double tau = t - profile.start_time;
    if (tau <= 0.0) return profile.initial_speed;
    const double half_span = std::sqrt(profile.initial_speed / profile.jerk);
    if (tau < half_span) return profile.initial_speed - 0.5 * profile.jerk * tau * tau;
    if (tau < 2.0 * half_span) {
        const double remaining = 2.0 * half_span - tau;
        return 0.5 * profile.jerk * remaining * remaining;
    }
    return 0.0;
}

}  // namespace

double lead_acceleration(const LeadProfile& profile, double t, double lead_speed) {
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ConstantSpeed>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, ConstantJerkStop>) {
                return jerk_stop_accel_at(p, t, lead_speed);
            } else {
                // stopped leads stay stopped
                if (lead_speed <= 0.0) return 0.0;
                return piecewise_accel_at(p, t);
            }
        },
        profile);
}

double lead_speed(const LeadProfile& profile, double t) {
    if (const auto* constant = std::get_if<ConstantSpeed>(&profile)) return constant->speed;
    if (const auto* jerk_stop = std::get_if<ConstantJerkStop>(&profile)) {
        return jerk_stop_speed_at(*jerk_stop, t);
    }
    throw std::invalid_argument("lead_speed: PiecewiseAccel has no closed-form speed");
}

double check_brake_bound(const LeadProfile& profile, const BrakeBound& bound, double dt,
                         double horizon, double piecewise_initial_speed) {
    if (!(dt > 0.0) || !(horizon > 0.0)) {
        throw std::invalid_argument("check_brake_bound: dt and horizon must be > 0");
    }
    const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));

    const bool closed_form = !std::holds_alternative<PiecewiseAccel>(profile);
    double speed = closed_form ? lead_speed(profile, 0.0) : std::max(piecewise_initial_speed, 0.0);
    // a standing lead satisfies the bound with equality (gamma(0) = 0), so
    // only samples with the lead in motion carry margin information
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        if (closed_form) speed = lead_speed(profile, t);
        const double accel = lead_acceleration(profile, t, speed);
        if (speed > 0.0) worst = std::min(worst, accel + bound(speed));
        if (!closed_form) {
            // Heun step; the schedule is piecewise linear in t
            const double predicted = std::max(0.0, speed + dt * accel);
            const double accel_next = lead_acceleration(profile, t + dt, predicted);
            speed = std::max(0.0, speed + 0.5 * dt * (accel + accel_next));
        }
    }
    return std::isfinite(worst) ? worst : 0.0;
}

}  // namespace cccsafe
