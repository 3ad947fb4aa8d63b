#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace cccsafe {

/// Longitudinal car-following state: gap to the lead vehicle, ego speed,
/// lead speed. All units SI (m, m/s).
struct State {
    double distance = 0.0;
    double speed = 0.0;
    double lead_speed = 0.0;

    bool operator==(const State&) const = default;
};

inline Eigen::Vector3d to_vector(const State& s) {
    return {s.distance, s.speed, s.lead_speed};
}

inline State state_from(const Eigen::Vector3d& x) {
    return {x[0], x[1], x[2]};
}

/// Rolling/air resistance p(v) = c0 + c2 v^2, nonnegative for v >= 0.
struct ResistanceModel {
    double c0 = 0.0;  // m/s^2
    double c2 = 0.0;  // 1/m

    double operator()(double speed) const { return c0 + c2 * speed * speed; }
    bool operator==(const ResistanceModel&) const = default;
};

/// Lead vehicle holds its initial speed; acceleration is identically zero.
struct ConstantSpeed {
    double speed = 15.0;  // m/s
};

/// Symmetric constant-jerk stop: jerk -j until half the initial speed,
/// then +j until standstill. Stops exactly at start_time + 2*sqrt(v0/j).
/// Requires v0 > 0 and 0 < j <= 10 so that a(t) >= -sqrt(20 v(t)) holds.
struct ConstantJerkStop {
    double initial_speed = 15.0;  // m/s
    double jerk = 2.0;            // m/s^3
    double start_time = 0.0;      // s, cruise at initial_speed before this
};

/// Acceleration schedule given as (time, accel) breakpoints, linearly
/// interpolated, held constant beyond the last breakpoint. Zero once the
/// lead has stopped.
struct PiecewiseAccel {
    std::vector<std::pair<double, double>> table;  // (s, m/s^2), strictly increasing times
};

using LeadProfile = std::variant<ConstantSpeed, ConstantJerkStop, PiecewiseAccel>;

/// Throws std::invalid_argument if the profile violates its invariants.
void validate_lead_profile(const LeadProfile& profile);

/// Class-K bound on how hard the lead brakes: a_L >= -gamma(v_L).
class BrakeBound {
  public:
    enum class Kind { SqrtScaled, Linear };

    /// gamma(r) = sqrt(scale * r); the default scale 20 admits constant-jerk
    /// stops up to jerk 10.
    static BrakeBound sqrt_scaled(double scale = 20.0);
    /// gamma(r) = rate * r.
    static BrakeBound linear(double rate);

    double operator()(double speed) const;

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }

  private:
    BrakeBound(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// Drift and input directions of the control-affine car-following model:
/// xdot = drift + control_direction * u.
struct ControlAffineTerms {
    Eigen::Vector3d drift;              // f(x) = (vL - v, -p(v), aL)
    Eigen::Vector3d control_direction;  // g = (0, 1, 0)
};

ControlAffineTerms control_affine(const State& state, const ResistanceModel& resistance,
                                  double lead_accel);

/// xdot for acceleration command u: (vL - v, u - p(v), aL).
Eigen::Vector3d state_derivative(const State& state, double input,
                                 const ResistanceModel& resistance, double lead_accel);

/// Lead acceleration at time t. The current lead speed is consulted only to
/// clamp the schedule so an integrated lead speed never goes negative.
double lead_acceleration(const LeadProfile& profile, double t, double lead_speed);

/// Closed-form lead speed of the profile's own schedule (ConstantSpeed and
/// ConstantJerkStop only; PiecewiseAccel has no closed form and throws).
double lead_speed(const LeadProfile& profile, double t);

/// Worst sampled margin min_t [ a_L(t) + gamma(v_L(t)) ] over [0, horizon],
/// taken over samples with the lead in motion (at standstill the bound holds
/// with equality and carries no information; 0 is returned if the lead never
/// moves). Nonnegative return certifies the profile against the brake bound.
/// ConstantSpeed / ConstantJerkStop use their closed-form speed; a
/// PiecewiseAccel profile is integrated from piecewise_initial_speed.
double check_brake_bound(const LeadProfile& profile, const BrakeBound& bound, double dt,
                         double horizon, double piecewise_initial_speed = 0.0);

}  // namespace cccsafe
