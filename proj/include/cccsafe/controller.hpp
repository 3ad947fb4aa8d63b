#pragma once

#include <algorithm>

#include "cccsafe/vehicle.hpp"

namespace cccsafe {

/// Feedback gains of the nominal connected cruise controller. All assumed
/// nonnegative; the chart predicates gate on this rather than the type.
struct Gains {
    double distance_gain = 0.4;  // 1/s, response to range-policy error
    double speed_gain = 0.6;     // 1/s, response to speed difference
    double accel_gain = 0.0;     // -, feedforward on lead acceleration

    bool operator==(const Gains&) const = default;
};

/// Range policy parameters: desired speed is zero at the standstill distance
/// and grows linearly with the gradient up to the speed limit.
struct PolicyParams {
    double standstill_distance = 5.0;  // m
    double gradient = 0.6;             // 1/s
    double speed_limit = 15.0;         // m/s

    bool operator==(const PolicyParams&) const = default;
};

/// V(D) = min{ gradient * (D - D_st), v_max }.
inline double range_policy(double distance, const PolicyParams& p) {
    return std::min(p.gradient * (distance - p.standstill_distance), p.speed_limit);
}

/// W(vL) = min{ vL, v_max }.
inline double speed_policy(double lead_speed, const PolicyParams& p) {
    return std::min(lead_speed, p.speed_limit);
}

/// Nominal CCC acceleration command:
/// k_d = A (V(D) - v) + B (W(vL) - v) + C aL.
inline double ccc_desired(const State& s, double lead_accel, const Gains& gains,
                          const PolicyParams& p) {
    return gains.distance_gain * (range_policy(s.distance, p) - s.speed) +
           gains.speed_gain * (speed_policy(s.lead_speed, p) - s.speed) +
           gains.accel_gain * lead_accel;
}

}  // namespace cccsafe
