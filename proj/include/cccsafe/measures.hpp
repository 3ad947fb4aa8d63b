#pragma once

#include "cccsafe/cbf.hpp"
#include "cccsafe/vehicle.hpp"

namespace cccsafe {

/// Constants of the spatiotemporal separation criteria. The headway and
/// conflict constants are stored as rates 1/T so the barrier formulas and
/// their alpha arguments match the safe-input expressions literally.
struct SafetyParams {
    double safe_distance = 1.0;  // m
    double headway_rate = 0.6;   // 1/s, reciprocal of the safe time headway
    double conflict_rate = 0.6;  // 1/s, reciprocal of the safe time to conflict

    bool operator==(const SafetyParams&) const = default;
};

enum class MeasureKind { Distance, TimeHeadway, TimeToConflict };

/// One of the three barrier candidates h(x) >= 0:
///   Distance        h = D - D_sf
///   TimeHeadway     h = (1/T_h) (D - D_sf) - v
///   TimeToConflict  h = (1/T_c) (D - D_sf) + vL - v
struct SafetyMeasure {
    MeasureKind kind = MeasureKind::TimeHeadway;
    SafetyParams params;
};

inline double evaluate(const SafetyMeasure& m, const State& s) {
    const double gap = s.distance - m.params.safe_distance;
    switch (m.kind) {
        case MeasureKind::Distance:
            return gap;
        case MeasureKind::TimeHeadway:
            return m.params.headway_rate * gap - s.speed;
        case MeasureKind::TimeToConflict:
            return m.params.conflict_rate * gap + (s.lead_speed - s.speed);
    }
    return 0.0;
}

/// Gradient and Lie derivatives of the measure along the car-following
/// dynamics. The gradients are constant; only the headway and conflict
/// measures see the input (lgh = -1), the distance measure never does.
inline BarrierEvaluation lie_derivatives(const SafetyMeasure& m, const State& s,
                                         const ResistanceModel& resistance, double lead_accel) {
    BarrierEvaluation eval;
    eval.value = evaluate(m, s);
    eval.lie.lgh = Eigen::VectorXd(1);
    const double closing = s.lead_speed - s.speed;
    switch (m.kind) {
        case MeasureKind::Distance:
            eval.gradient = {1.0, 0.0, 0.0};
            eval.lie.lfh = closing;
            eval.lie.lgh[0] = 0.0;
            break;
        case MeasureKind::TimeHeadway:
            eval.gradient = {m.params.headway_rate, -1.0, 0.0};
            eval.lie.lfh = m.params.headway_rate * closing + resistance(s.speed);
            eval.lie.lgh[0] = -1.0;
            break;
        case MeasureKind::TimeToConflict:
            eval.gradient = {m.params.conflict_rate, -1.0, 1.0};
            eval.lie.lfh = m.params.conflict_rate * closing + resistance(s.speed) + lead_accel;
            eval.lie.lgh[0] = -1.0;
            break;
    }
    return eval;
}

/// Safe command for the time-headway barrier (lgh = -1):
/// k_s = kap (vL - v) + p(v) + alpha(kap (D - D_sf) - v), kap = 1/T_h.
inline double safe_input_th(const State& s, const SafetyParams& params,
                            const ResistanceModel& resistance, const ClassK& alpha) {
    const double kap = params.headway_rate;
    return kap * (s.lead_speed - s.speed) + resistance(s.speed) +
           alpha(kap * (s.distance - params.safe_distance) - s.speed);
}

/// Safe command for the extended conflict barrier (lgh = -1):
/// k_s = kap (vL - v) + p(v) + aL + alpha_e(kap (D - D_sf) + vL - v), kap = 1/T_c.
inline double safe_input_ttc(const State& s, const SafetyParams& params,
                             const ResistanceModel& resistance, double lead_accel,
                             const ClassK& alpha_e) {
    const double kap = params.conflict_rate;
    return kap * (s.lead_speed - s.speed) + resistance(s.speed) + lead_accel +
           alpha_e(kap * (s.distance - params.safe_distance) + (s.lead_speed - s.speed));
}

}  // namespace cccsafe
