#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cccsafe/cbf.hpp"
#include "cccsafe/controller.hpp"
#include "cccsafe/measures.hpp"
#include "cccsafe/vehicle.hpp"

namespace cccsafe {

enum class ControlLaw {
    Nominal,   // u = k_d
    Filtered,  // u = min{k_d, k_s}
    SafeOnly,  // u = k_s
};

struct ControllerSpec {
    ControlLaw law = ControlLaw::Nominal;
    Gains gains;
    /// Barrier guarded by the filter (TimeHeadway or TimeToConflict); also
    /// selects which safe input the trajectory records for diagnostics.
    MeasureKind criterion = MeasureKind::TimeHeadway;
    /// alpha for the headway filter, alpha_e for the conflict filter.
    ClassK alpha = ClassK::linear(1.0);
};

struct Scenario {
    State x0{30.0, 15.0, 15.0};
    LeadProfile lead = ConstantSpeed{15.0};
    double duration = 30.0;  // s
    double dt = 0.01;        // s
    ControllerSpec controller;
    ResistanceModel resistance;
    PolicyParams policy;
    SafetyParams safety;
};

/// Emergency-braking scenario: start at the controller equilibrium for the
/// speed limit, cruise 1 s, then the lead performs a constant-jerk stop.
Scenario default_braking_scenario();

struct TrajectoryRecord {
    double t = 0.0;
    double distance = 0.0;
    double speed = 0.0;
    double lead_speed = 0.0;
    double lead_accel = 0.0;
    double input_desired = 0.0;
    double input_applied = 0.0;
    double safe_input = 0.0;
    double h_distance = 0.0;
    double h_headway = 0.0;
    double h_conflict = 0.0;
};

using Trajectory = std::vector<TrajectoryRecord>;

/// Raised when the integration produces a non-finite state.
class IntegrationError : public std::runtime_error {
  public:
    explicit IntegrationError(double t);
    double time() const { return time_; }

  private:
    double time_;
};

/// One classical fourth-order Runge-Kutta step of the closed loop, with the
/// lead acceleration and control law evaluated at every stage.
State step(const State& state, double t, const Scenario& scenario);

/// Integrates over [0, duration] recording every step; floor(duration/dt)+1
/// records at times i*dt. Deterministic.
Trajectory run(const Scenario& scenario);

struct MeasureStats {
    double min_value = 0.0;
    std::optional<double> first_violation_time;  // first sample with h < 0
};

struct MonitorReport {
    MeasureStats distance;
    MeasureStats headway;
    MeasureStats conflict;
    double min_input = 0.0;
    double max_input = 0.0;
    /// Fraction of samples where the applied input differs from the desired.
    double filter_active_fraction = 0.0;

    bool any_violation() const {
        return distance.first_violation_time || headway.first_violation_time ||
               conflict.first_violation_time;
    }
};

MonitorReport monitor(const Trajectory& trajectory);

}  // namespace cccsafe
