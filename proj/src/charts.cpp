#include "cccsafe/charts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace cccsafe {

bool th_safe(const Gains& gains, const PolicyParams& policy, const SafetyParams& safety,
             double v_bar) {
    if (gains.accel_gain != 0.0) {
        throw std::invalid_argument("th_safe: the headway condition requires accel_gain = 0");
    }
    if (gains.distance_gain < 0.0 || gains.speed_gain < 0.0) return false;
    const double kap = safety.headway_rate;
    if (policy.standstill_distance >= safety.safe_distance && gains.speed_gain == kap &&
        kap >= policy.gradient) {
        return true;
    }
    if (policy.standstill_distance > safety.safe_distance && kap >= policy.gradient) {
        return gains.distance_gain >=
               th_min_safe_distance_gain(gains.speed_gain, policy, safety, v_bar);
    }
    return false;
}

double th_min_safe_distance_gain(double speed_gain, const PolicyParams& policy,
                                 const SafetyParams& safety, double v_bar) {
    if (!(policy.standstill_distance > safety.safe_distance)) {
        throw std::invalid_argument("th_min_safe_distance_gain: requires D_st > D_sf");
    }
    if (!(safety.headway_rate >= policy.gradient)) {
        throw std::invalid_argument("th_min_safe_distance_gain: requires headway rate >= gradient");
    }
    return std::abs(safety.headway_rate - speed_gain) * v_bar /
           (policy.gradient * (policy.standstill_distance - safety.safe_distance));
}

namespace {

// min of phi over [lo, hi] by golden-section search; phi convex near the
// bracketed minimum for the supported brake bounds.
double golden_min(const std::function<double(double)>& phi, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int i = 0; i < 90 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = phi(d);
        }
    }
    return std::min({phi(a), phi(b), fc, fd});
}

}  // namespace

bool ttc_safe(const Gains& gains, const PolicyParams& policy, const SafetyParams& safety,
              double v_bar, const BrakeBound& bound, double lead_speed_step) {
    if (!(lead_speed_step > 0.0)) {
        throw std::invalid_argument("ttc_safe: lead_speed_step must be > 0");
    }
    if (gains.distance_gain < 0.0 || gains.speed_gain < 0.0 || gains.accel_gain < 0.0) {
        return false;
    }
    if (gains.accel_gain > 1.0) return false;
    if (!(policy.standstill_distance > safety.safe_distance)) return false;
    const double kap = safety.conflict_rate;
    if (!(kap >= policy.gradient)) return false;

    const double slope = kap - gains.speed_gain + gains.distance_gain;
    const double brake_weight = 1.0 - gains.accel_gain;
    const auto phi = [&](double lead_speed) {
        return slope * lead_speed - brake_weight * bound(lead_speed);
    };

    // coarse grid over [0, v_bar] plus a finer pass near zero, where the
    // sqrt-type bounds have unbounded slope
    double minimum = std::numeric_limits<double>::infinity();
    double arg_minimum = 0.0;
    const auto consider = [&](double lead_speed) {
        const double value = phi(lead_speed);
        if (value < minimum) {
            minimum = value;
            arg_minimum = lead_speed;
        }
    };
    const auto grid_steps = static_cast<std::size_t>(std::floor(v_bar / lead_speed_step + 1e-9));
    for (std::size_t i = 0; i <= grid_steps; ++i) {
        consider(std::min(static_cast<double>(i) * lead_speed_step, v_bar));
    }
    consider(v_bar);
    const double fine_step = lead_speed_step * lead_speed_step * v_bar;
    if (fine_step > 0.0) {
        const double fine_max = std::min(0.1, v_bar);
        for (double lead_speed = 0.0; lead_speed <= fine_max; lead_speed += fine_step) {
            consider(lead_speed);
        }
    }
    const double bracket = std::max(lead_speed_step, fine_step);
    minimum = std::min(minimum, golden_min(phi, std::max(0.0, arg_minimum - bracket),
                                           std::min(v_bar, arg_minimum + bracket)));

    const double fixed = gains.distance_gain * policy.gradient *
                             (policy.standstill_distance - safety.safe_distance) +
                         std::min(0.0, gains.speed_gain - kap) * v_bar;
    return fixed + minimum >= 0.0;
}

bool plant_stable(const Gains& gains) {
    return gains.distance_gain >= 0.0 && gains.distance_gain >= -gains.speed_gain;
}

bool string_stable(const Gains& gains, double gradient) {
    return gains.distance_gain >= 0.0 &&
           gains.distance_gain >= 2.0 * ((1.0 - gains.accel_gain) * gradient - gains.speed_gain) &&
           gains.accel_gain <= 1.0;
}

std::vector<double> axis_values(const AxisRange& range) {
    if (!(range.step > 0.0)) throw std::invalid_argument("axis_values: step must be > 0");
    if (range.max < range.min) throw std::invalid_argument("axis_values: max must be >= min");
    const auto count = static_cast<std::size_t>(std::floor((range.max - range.min) / range.step + 1e-9)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = range.min + static_cast<double>(i) * range.step;
    }
    return values;
}

RegionGrid rasterize(const ChartSpec& spec) {
    RegionGrid grid;
    grid.b_values = axis_values(spec.b_range);
    grid.a_values = axis_values(spec.a_range);
    grid.member.resize(grid.a_values.size() * grid.b_values.size());

    for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
        for (std::size_t bi = 0; bi < grid.b_values.size(); ++bi) {
            const Gains gains{grid.a_values[ai], grid.b_values[bi], spec.accel_gain};
            bool inside = false;
            switch (spec.criterion) {
                case ChartCriterion::TimeHeadway:
                    inside = th_safe(gains, spec.policy, spec.safety, spec.v_bar);
                    break;
                case ChartCriterion::TimeToConflict:
                    inside = ttc_safe(gains, spec.policy, spec.safety, spec.v_bar,
                                      spec.brake_bound, spec.lead_speed_step);
                    break;
                case ChartCriterion::PlantStable:
                    inside = plant_stable(gains);
                    break;
                case ChartCriterion::StringStable:
                    inside = string_stable(gains, spec.policy.gradient);
                    break;
            }
            grid.member[ai * grid.b_values.size() + bi] = inside ? 1 : 0;
        }
    }
    return grid;
}

CertificationReport certify_boundary(MeasureKind kind, const Gains& gains,
                                     const PolicyParams& policy, const SafetyParams& safety,
                                     const ResistanceModel& resistance, double v_bar,
                                     const BrakeBound& bound, std::size_t samples, unsigned seed,
                                     const ClassK& alpha) {
    if (kind == MeasureKind::Distance) {
        throw std::invalid_argument("certify_boundary: kind must be TimeHeadway or TimeToConflict");
    }
    if (samples == 0) throw std::invalid_argument("certify_boundary: samples must be > 0");

    const bool headway = kind == MeasureKind::TimeHeadway;
    const double kap = headway ? safety.headway_rate : safety.conflict_rate;

    CertificationReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();

    const auto consider = [&](double speed, double lead_speed) {
        State state;
        state.speed = speed;
        state.lead_speed = lead_speed;
        double lead_accel = 0.0;
        if (headway) {
            state.distance = safety.safe_distance + speed / kap;  // h_TH = 0
        } else {
            if (speed < lead_speed) return false;  // would put D below D_sf
            state.distance = safety.safe_distance + (speed - lead_speed) / kap;  // h_TTC = 0
            lead_accel = -bound(lead_speed);  // hardest admissible braking
        }
        const double safe = headway
                                ? safe_input_th(state, safety, resistance, alpha)
                                : safe_input_ttc(state, safety, resistance, lead_accel, alpha);
        const double desired = ccc_desired(state, lead_accel, gains, policy);
        const double margin = safe - desired;
        ++report.samples;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.argmin_state = state;
        }
        return true;
    };

    // the proofs' extremal arguments bind at speed-box corners; always test them
    for (const double speed : {0.0, v_bar}) {
        for (const double lead_speed : {0.0, v_bar}) {
            consider(speed, lead_speed);
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, v_bar);
    std::size_t accepted = 0;
    while (accepted < samples) {
        if (consider(uniform(rng), uniform(rng))) ++accepted;
    }
    return report;
}

}  // namespace cccsafe
