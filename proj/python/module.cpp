#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cccsafe/charts.hpp"
#include "cccsafe/sim.hpp"

namespace py = pybind11;
using namespace cccsafe;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Safety-critical connected cruise control: nominal controllers, barrier-based "
              "safety filters, gain-space charts and numerical boundary certification.";

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("distance"), py::arg("speed"),
             py::arg("lead_speed"))
        .def_readwrite("distance", &State::distance)
        .def_readwrite("speed", &State::speed)
        .def_readwrite("lead_speed", &State::lead_speed)
        .def("__repr__", [](const State& s) {
            return "State(distance=" + std::to_string(s.distance) +
                   ", speed=" + std::to_string(s.speed) +
                   ", lead_speed=" + std::to_string(s.lead_speed) + ")";
        });

    py::class_<ResistanceModel>(m, "ResistanceModel")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("c0"), py::arg("c2"))
        .def_readwrite("c0", &ResistanceModel::c0)
        .def_readwrite("c2", &ResistanceModel::c2)
        .def("__call__", &ResistanceModel::operator(), py::arg("speed"));

    py::class_<ConstantSpeed>(m, "ConstantSpeed")
        .def(py::init<double>(), py::arg("speed") = 15.0)
        .def_readwrite("speed", &ConstantSpeed::speed);

    py::class_<ConstantJerkStop>(m, "ConstantJerkStop")
        .def(py::init<double, double, double>(), py::arg("initial_speed") = 15.0,
             py::arg("jerk") = 2.0, py::arg("start_time") = 0.0)
        .def_readwrite("initial_speed", &ConstantJerkStop::initial_speed)
        .def_readwrite("jerk", &ConstantJerkStop::jerk)
        .def_readwrite("start_time", &ConstantJerkStop::start_time);

    py::class_<PiecewiseAccel>(m, "PiecewiseAccel")
        .def(py::init<>())
        .def(py::init([](std::vector<std::pair<double, double>> table) {
                 PiecewiseAccel profile;
                 profile.table = std::move(table);
                 return profile;
             }),
             py::arg("table"))
        .def_readwrite("table", &PiecewiseAccel::table);

    py::class_<BrakeBound>(m, "BrakeBound")
        .def_static("sqrt_scaled", &BrakeBound::sqrt_scaled, py::arg("scale") = 20.0,
                    "gamma(r) = sqrt(scale * r)")
        .def_static("linear", &BrakeBound::linear, py::arg("rate"))
        .def("__call__", &BrakeBound::operator(), py::arg("speed"));

    m.def("validate_lead_profile", &validate_lead_profile, py::arg("profile"));
    m.def("lead_acceleration", &lead_acceleration, py::arg("profile"), py::arg("t"),
          py::arg("lead_speed"));
    m.def("lead_speed", &lead_speed, py::arg("profile"), py::arg("t"),
          "Closed-form schedule speed (constant-speed and constant-jerk profiles only).");
    m.def("check_brake_bound", &check_brake_bound, py::arg("profile"), py::arg("bound"),
          py::arg("dt"), py::arg("horizon"), py::arg("piecewise_initial_speed") = 0.0,
          "Worst margin min_t [aL + gamma(vL)] over moving samples.");

    py::class_<ControlAffineTerms>(m, "ControlAffineTerms")
        .def_readonly("drift", &ControlAffineTerms::drift)
        .def_readonly("control_direction", &ControlAffineTerms::control_direction);
    m.def("control_affine", &control_affine, py::arg("state"), py::arg("resistance"),
          py::arg("lead_accel"));
    m.def("state_derivative", &state_derivative, py::arg("state"), py::arg("input"),
          py::arg("resistance"), py::arg("lead_accel"));

    py::class_<Gains>(m, "Gains")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("distance_gain"), py::arg("speed_gain"),
             py::arg("accel_gain") = 0.0)
        .def_readwrite("distance_gain", &Gains::distance_gain)
        .def_readwrite("speed_gain", &Gains::speed_gain)
        .def_readwrite("accel_gain", &Gains::accel_gain);

    py::class_<PolicyParams>(m, "PolicyParams")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("standstill_distance"),
             py::arg("gradient"), py::arg("speed_limit"))
        .def_readwrite("standstill_distance", &PolicyParams::standstill_distance)
        .def_readwrite("gradient", &PolicyParams::gradient)
        .def_readwrite("speed_limit", &PolicyParams::speed_limit);

    m.def("range_policy", &range_policy, py::arg("distance"), py::arg("policy"));
    m.def("speed_policy", &speed_policy, py::arg("lead_speed"), py::arg("policy"));
    m.def("ccc_desired", &ccc_desired, py::arg("state"), py::arg("lead_accel"), py::arg("gains"),
          py::arg("policy"), "Nominal connected cruise control command.");

    py::class_<ClassK>(m, "ClassK")
        .def_static("linear", &ClassK::linear, py::arg("rate"))
        .def_static("scaled_sqrt", &ClassK::scaled_sqrt, py::arg("coeff"))
        .def_static("custom", &ClassK::custom, py::arg("fn"))
        .def("__call__", &ClassK::operator(), py::arg("r"))
        .def_property_readonly("differentiable", &ClassK::differentiable);
    m.def("is_class_k_on_grid", &is_class_k_on_grid, py::arg("alpha"), py::arg("range"),
          py::arg("samples"));

    py::class_<LieDerivatives>(m, "LieDerivatives")
        .def(py::init<>())
        .def_readwrite("lfh", &LieDerivatives::lfh)
        .def_readwrite("lgh", &LieDerivatives::lgh);

    py::class_<BarrierEvaluation>(m, "BarrierEvaluation")
        .def(py::init<>())
        .def_readwrite("value", &BarrierEvaluation::value)
        .def_readwrite("gradient", &BarrierEvaluation::gradient)
        .def_readwrite("lie", &BarrierEvaluation::lie);

    m.def("h_dot", &h_dot, py::arg("lie"), py::arg("input"));
    m.def("cbf_condition_holds", &cbf_condition_holds, py::arg("eval"), py::arg("alpha"),
          py::arg("tol") = 1e-12);
    m.def("filter_closed_form", &filter_closed_form, py::arg("desired"), py::arg("eval"),
          py::arg("alpha"), py::arg("tol") = 1e-12,
          "Minimum-norm safety filter, closed form of the barrier QP.");
    m.def("scalar_safe_input", &scalar_safe_input, py::arg("lie"), py::arg("h"), py::arg("alpha"));
    m.def("scalar_filter", &scalar_filter, py::arg("desired"), py::arg("safe"),
          py::arg("lgh_sign"));
    m.def("extend_cbf", &extend_cbf, py::arg("h"), py::arg("lfh"), py::arg("alpha"));

    py::enum_<MeasureKind>(m, "MeasureKind")
        .value("Distance", MeasureKind::Distance)
        .value("TimeHeadway", MeasureKind::TimeHeadway)
        .value("TimeToConflict", MeasureKind::TimeToConflict);

    py::class_<SafetyParams>(m, "SafetyParams")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("safe_distance"),
             py::arg("headway_rate"), py::arg("conflict_rate"))
        .def_readwrite("safe_distance", &SafetyParams::safe_distance)
        .def_readwrite("headway_rate", &SafetyParams::headway_rate)
        .def_readwrite("conflict_rate", &SafetyParams::conflict_rate);

    py::class_<SafetyMeasure>(m, "SafetyMeasure")
        .def(py::init<>())
        .def(py::init<MeasureKind, SafetyParams>(), py::arg("kind"), py::arg("params"))
        .def_readwrite("kind", &SafetyMeasure::kind)
        .def_readwrite("params", &SafetyMeasure::params);

    m.def("evaluate", &evaluate, py::arg("measure"), py::arg("state"));
    m.def("lie_derivatives", &lie_derivatives, py::arg("measure"), py::arg("state"),
          py::arg("resistance"), py::arg("lead_accel"));
    m.def("safe_input_th", &safe_input_th, py::arg("state"), py::arg("params"),
          py::arg("resistance"), py::arg("alpha"));
    m.def("safe_input_ttc", &safe_input_ttc, py::arg("state"), py::arg("params"),
          py::arg("resistance"), py::arg("lead_accel"), py::arg("alpha_e"));

    m.def("th_safe", &th_safe, py::arg("gains"), py::arg("policy"), py::arg("safety"),
          py::arg("v_bar"), "Sufficient time-headway safety condition (zero accel gain).");
    m.def("th_min_safe_distance_gain", &th_min_safe_distance_gain, py::arg("speed_gain"),
          py::arg("policy"), py::arg("safety"), py::arg("v_bar"));
    m.def("ttc_safe", &ttc_safe, py::arg("gains"), py::arg("policy"), py::arg("safety"),
          py::arg("v_bar"), py::arg("bound"), py::arg("lead_speed_step") = 0.01,
          "Sufficient distance + time-to-conflict safety condition.");
    m.def("plant_stable", &plant_stable, py::arg("gains"));
    m.def("string_stable", &string_stable, py::arg("gains"), py::arg("gradient"));

    py::class_<AxisRange>(m, "AxisRange")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("min"), py::arg("max"), py::arg("step"))
        .def_readwrite("min", &AxisRange::min)
        .def_readwrite("max", &AxisRange::max)
        .def_readwrite("step", &AxisRange::step);
    m.def("axis_values", &axis_values, py::arg("range"));

    py::enum_<ChartCriterion>(m, "ChartCriterion")
        .value("TimeHeadway", ChartCriterion::TimeHeadway)
        .value("TimeToConflict", ChartCriterion::TimeToConflict)
        .value("PlantStable", ChartCriterion::PlantStable)
        .value("StringStable", ChartCriterion::StringStable);

    py::class_<ChartSpec>(m, "ChartSpec")
        .def(py::init<>())
        .def_readwrite("criterion", &ChartSpec::criterion)
        .def_readwrite("accel_gain", &ChartSpec::accel_gain)
        .def_readwrite("v_bar", &ChartSpec::v_bar)
        .def_readwrite("policy", &ChartSpec::policy)
        .def_readwrite("safety", &ChartSpec::safety)
        .def_readwrite("brake_bound", &ChartSpec::brake_bound)
        .def_readwrite("b_range", &ChartSpec::b_range)
        .def_readwrite("a_range", &ChartSpec::a_range)
        .def_readwrite("lead_speed_step", &ChartSpec::lead_speed_step);

    py::class_<RegionGrid>(m, "RegionGrid")
        .def_readonly("b_values", &RegionGrid::b_values)
        .def_readonly("a_values", &RegionGrid::a_values)
        .def_readonly("member", &RegionGrid::member)
        .def("is_member", &RegionGrid::is_member, py::arg("a_index"), py::arg("b_index"));

    m.def("rasterize", &rasterize, py::arg("spec"));

    py::class_<CertificationReport>(m, "CertificationReport")
        .def_readonly("worst_margin", &CertificationReport::worst_margin)
        .def_readonly("argmin_state", &CertificationReport::argmin_state)
        .def_readonly("samples", &CertificationReport::samples);

    m.def("certify_boundary", &certify_boundary, py::arg("kind"), py::arg("gains"),
          py::arg("policy"), py::arg("safety"), py::arg("resistance"), py::arg("v_bar"),
          py::arg("bound"), py::arg("samples") = std::size_t{10000}, py::arg("seed") = 0u,
          py::arg("alpha") = ClassK::linear(1.0),
          "Worst k_s - k_d over seeded boundary states plus speed-box corners.");

    py::enum_<ControlLaw>(m, "ControlLaw")
        .value("Nominal", ControlLaw::Nominal)
        .value("Filtered", ControlLaw::Filtered)
        .value("SafeOnly", ControlLaw::SafeOnly);

    py::class_<ControllerSpec>(m, "ControllerSpec")
        .def(py::init<>())
        .def_readwrite("law", &ControllerSpec::law)
        .def_readwrite("gains", &ControllerSpec::gains)
        .def_readwrite("criterion", &ControllerSpec::criterion)
        .def_readwrite("alpha", &ControllerSpec::alpha);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("x0", &Scenario::x0)
        .def_readwrite("lead", &Scenario::lead)
        .def_readwrite("duration", &Scenario::duration)
        .def_readwrite("dt", &Scenario::dt)
        .def_readwrite("controller", &Scenario::controller)
        .def_readwrite("resistance", &Scenario::resistance)
        .def_readwrite("policy", &Scenario::policy)
        .def_readwrite("safety", &Scenario::safety);

    m.def("default_braking_scenario", &default_braking_scenario,
          "Emergency-braking scenario at the controller equilibrium.");

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("t", &TrajectoryRecord::t)
        .def_readonly("distance", &TrajectoryRecord::distance)
        .def_readonly("speed", &TrajectoryRecord::speed)
        .def_readonly("lead_speed", &TrajectoryRecord::lead_speed)
        .def_readonly("lead_accel", &TrajectoryRecord::lead_accel)
        .def_readonly("input_desired", &TrajectoryRecord::input_desired)
        .def_readonly("input_applied", &TrajectoryRecord::input_applied)
        .def_readonly("safe_input", &TrajectoryRecord::safe_input)
        .def_readonly("h_distance", &TrajectoryRecord::h_distance)
        .def_readonly("h_headway", &TrajectoryRecord::h_headway)
        .def_readonly("h_conflict", &TrajectoryRecord::h_conflict);

    py::register_exception<IntegrationError>(m, "IntegrationError");

    m.def("step", &step, py::arg("state"), py::arg("t"), py::arg("scenario"),
          "One RK4 step of the closed loop.");
    m.def("run", &run, py::arg("scenario"), "Integrate a scenario into a list of records.");

    py::class_<MeasureStats>(m, "MeasureStats")
        .def_readonly("min_value", &MeasureStats::min_value)
        .def_readonly("first_violation_time", &MeasureStats::first_violation_time);

    py::class_<MonitorReport>(m, "MonitorReport")
        .def_readonly("distance", &MonitorReport::distance)
        .def_readonly("headway", &MonitorReport::headway)
        .def_readonly("conflict", &MonitorReport::conflict)
        .def_readonly("min_input", &MonitorReport::min_input)
        .def_readonly("max_input", &MonitorReport::max_input)
        .def_readonly("filter_active_fraction", &MonitorReport::filter_active_fraction)
        .def("any_violation", &MonitorReport::any_violation);

    m.def("monitor", &monitor, py::arg("trajectory"));

#ifdef CCCSAFE_VERSION
    m.attr("__version__") = CCCSAFE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
