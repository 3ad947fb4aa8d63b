#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cccsafe/charts.hpp"
#include "cccsafe/sim.hpp"

namespace cccsafe {

/// Raised on malformed files, unknown keys or bad values; the message names
/// the offending key.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration covering simulation, chart and
/// certification inputs. Missing keys keep the defaults below; unknown keys
/// are rejected.
struct Config {
    // dynamics.*
    ResistanceModel resistance;

    // policy.* / safety.*
    PolicyParams policy;
    SafetyParams safety;

    // gains.*
    Gains gains;

    // lead.*
    std::string lead_profile = "constant_jerk_stop";  // constant_speed | constant_jerk_stop | piecewise
    double lead_speed = 15.0;
    double lead_jerk = 2.0;
    double lead_start_time = 1.0;
    std::vector<std::pair<double, double>> lead_table;
    std::string lead_brake_bound = "sqrt:20";  // sqrt:<scale> | linear:<rate>

    // sim.*
    State x0{30.0, 15.0, 15.0};
    double duration = 30.0;
    double dt = 0.01;
    std::string controller = "nominal";  // nominal | filtered | safe_only
    std::string criterion = "th";        // th | ttc
    std::string alpha = "linear:1";      // linear:<rate> | sqrt:<coeff>

    // chart.*
    double chart_accel_gain = 0.0;
    double chart_v_bar = 15.0;
    AxisRange chart_b_range{0.0, 1.5, 0.01};
    AxisRange chart_a_range{0.0, 1.5, 0.01};
    double chart_lead_speed_step = 0.01;

    // certify.*
    std::size_t certify_samples = 10000;
    unsigned certify_seed = 0;
    double certify_v_bar = 15.0;
    std::string certify_alpha = "linear:1";

    // sweep.*
    std::vector<Gains> sweep_gains;

    bool operator==(const Config&) const = default;
};

Config parse_config(std::istream& in);
Config parse_config_string(const std::string& text);
Config load_config(const std::string& path);

/// Canonical serialization; parse_config_string(serialize_config(c)) == c.
std::string serialize_config(const Config& config);

/// Builders from a parsed configuration. These validate the string-valued
/// fields and throw ConfigError with the offending key.
Scenario scenario_from_config(const Config& config);
ChartSpec chart_spec_from_config(const Config& config, ChartCriterion criterion);
BrakeBound brake_bound_from_config(const Config& config);
ClassK class_k_from_spec(const std::string& spec, const std::string& key);

/// "A,B,C" triple, e.g. from a --gains flag. Throws ConfigError on bad input.
Gains parse_gains(const std::string& text);

}  // namespace cccsafe
