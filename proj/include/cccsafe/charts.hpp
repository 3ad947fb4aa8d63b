#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cccsafe/cbf.hpp"
#include "cccsafe/controller.hpp"
#include "cccsafe/measures.hpp"
#include "cccsafe/vehicle.hpp"

namespace cccsafe {

/// Sufficient condition for time-headway safety of the nominal controller
/// with zero acceleration gain, over speeds in [0, v_bar]:
/// either D_st >= D_sf, B = kap and kap >= gradient, or D_st > D_sf,
/// kap >= gradient and A >= |kap - B| v_bar / (gradient (D_st - D_sf)).
/// Throws std::invalid_argument unless accel_gain is exactly zero.
bool th_safe(const Gains& gains, const PolicyParams& policy, const SafetyParams& safety,
             double v_bar);

/// Smallest distance gain accepted by th_safe at the given speed gain
/// (the second bullet's threshold). Requires D_st > D_sf and kap >= gradient.
double th_min_safe_distance_gain(double speed_gain, const PolicyParams& policy,
                                 const SafetyParams& safety, double v_bar);

/// Sufficient condition for distance plus time-to-conflict safety against
/// leads braking no harder than -gamma(vL). Evaluates
///   A kap_p dDst + min{0, B - kap} v_bar
///     + min_{vL in [0, v_bar]} [(kap - B + A) vL - (1 - C) gamma(vL)] >= 0
/// with the inner minimum taken on a grid of the given step (refined near
/// zero and polished by golden-section search). Gate conditions
/// (A, B, C >= 0, C <= 1, D_st > D_sf, kap >= gradient) failing return false.
bool ttc_safe(const Gains& gains, const PolicyParams& policy, const SafetyParams& safety,
              double v_bar, const BrakeBound& bound, double lead_speed_step);

/// Plant stability region: A >= 0 and A >= -B.
bool plant_stable(const Gains& gains);

/// String stability region: A >= 0, A >= 2 ((1 - C) gradient - B), C <= 1.
bool string_stable(const Gains& gains, double gradient);

struct AxisRange {
    double min = 0.0;
    double max = 1.0;
    double step = 0.01;

    bool operator==(const AxisRange&) const = default;
};

enum class ChartCriterion { TimeHeadway, TimeToConflict, PlantStable, StringStable };

struct ChartSpec {
    ChartCriterion criterion = ChartCriterion::TimeHeadway;
    double accel_gain = 0.0;  // C, fixed per chart
    double v_bar = 15.0;      // m/s speed cap of the safety theorems
    PolicyParams policy;
    SafetyParams safety;
    BrakeBound brake_bound = BrakeBound::sqrt_scaled();
    AxisRange b_range;              // speed gain axis
    AxisRange a_range;              // distance gain axis
    double lead_speed_step = 0.01;  // m/s, conflict-criterion grid
};

/// Membership of each (speed gain, distance gain) node in the selected
/// region. member is row-major over [a_index][b_index].
struct RegionGrid {
    std::vector<double> b_values;
    std::vector<double> a_values;
    std::vector<std::uint8_t> member;

    bool is_member(std::size_t a_index, std::size_t b_index) const {
        return member[a_index * b_values.size() + b_index] != 0;
    }
};

/// Axis nodes min + i * step up to max inclusive (within a half-step slack).
std::vector<double> axis_values(const AxisRange& range);

RegionGrid rasterize(const ChartSpec& spec);

/// Numerical boundary certificate for a controller: worst of k_s - k_d over
/// seeded random boundary states plus the (0, v_bar) speed corners.
struct CertificationReport {
    double worst_margin = 0.0;
    State argmin_state;
    std::size_t samples = 0;
};

/// TimeHeadway: samples have h_TH = 0; TimeToConflict: h_TTC = 0 and
/// h_D >= 0, with the lead at its admissible worst aL = -gamma(vL).
/// Deterministic for a fixed seed. kind must be TimeHeadway/TimeToConflict.
CertificationReport certify_boundary(MeasureKind kind, const Gains& gains,
                                     const PolicyParams& policy, const SafetyParams& safety,
                                     const ResistanceModel& resistance, double v_bar,
                                     const BrakeBound& bound, std::size_t samples, unsigned seed,
                                     const ClassK& alpha);

}  // namespace cccsafe
