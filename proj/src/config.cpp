#include "cccsafe/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cccsafe/csv.hpp"

namespace cccsafe {

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

double parse_double(const std::string& value, const std::string& key) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& value, const std::string& key) {
    std::size_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError(key + ": expected a nonnegative integer, got '" + value + "'");
    }
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(trim(std::string_view(text).substr(start)));
            break;
        }
        parts.push_back(trim(std::string_view(text).substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

void expect_one_of(const std::string& value, const std::vector<std::string>& allowed,
                   const std::string& key) {
    for (const auto& option : allowed) {
        if (value == option) return;
    }
    std::string message = key + ": '" + value + "' is not one of {";
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (i > 0) message += ", ";
        message += allowed[i];
    }
    throw ConfigError(message + "}");
}

std::vector<std::pair<double, double>> parse_table(const std::string& value,
                                                   const std::string& key) {
    std::vector<std::pair<double, double>> table;
    if (trim(value).empty()) return table;
    for (const auto& entry : split(value, ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string::npos) {
            throw ConfigError(key + ": expected 'time:accel' pairs, got '" + entry + "'");
        }
        table.emplace_back(parse_double(trim(std::string_view(entry).substr(0, colon)), key),
                           parse_double(trim(std::string_view(entry).substr(colon + 1)), key));
    }
    return table;
}

std::string serialize_table(const std::vector<std::pair<double, double>>& table) {
    std::string out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(table[i].first) + ":" + format_double(table[i].second);
    }
    return out;
}

std::vector<Gains> parse_gain_list(const std::string& value, const std::string& key) {
    std::vector<Gains> list;
    if (trim(value).empty()) return list;
    for (const auto& entry : split(value, ';')) {
        try {
            list.push_back(parse_gains(entry));
        } catch (const ConfigError& err) {
            throw ConfigError(key + ": " + err.what());
        }
    }
    return list;
}

std::string serialize_gain_list(const std::vector<Gains>& list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i > 0) out += "; ";
        out += format_double(list[i].distance_gain) + "," + format_double(list[i].speed_gain) +
               "," + format_double(list[i].accel_gain);
    }
    return out;
}

std::pair<std::string, double> parse_kind_param(const std::string& value, const std::string& key) {
    const auto colon = value.find(':');
    if (colon == std::string::npos) {
        throw ConfigError(key + ": expected '<kind>:<value>', got '" + value + "'");
    }
    return {trim(std::string_view(value).substr(0, colon)),
            parse_double(trim(std::string_view(value).substr(colon + 1)), key)};
}

using Setter = std::function<void(Config&, const std::string&, const std::string&)>;
using Getter = std::function<std::string(const Config&)>;

struct KeyEntry {
    const char* key;
    Setter set;
    Getter get;
};

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = [] {
        std::vector<KeyEntry> keys;
        const auto number = [&keys](const char* key, std::function<double&(Config&)> ref) {
            keys.push_back(KeyEntry{
                key,
                [ref](Config& c, const std::string& value, const std::string& k) {
                    ref(c) = parse_double(value, k);
                },
                [ref](const Config& c) { return format_double(ref(const_cast<Config&>(c))); }});
        };
        const auto string_choice = [&keys](const char* key,
                                           std::function<std::string&(Config&)> ref,
                                           std::vector<std::string> allowed) {
            keys.push_back(KeyEntry{
                key,
                [ref, allowed = std::move(allowed)](Config& c, const std::string& value,
                                                    const std::string& k) {
                    expect_one_of(value, allowed, k);
                    ref(c) = value;
                },
                [ref](const Config& c) { return ref(const_cast<Config&>(c)); }});
        };

        number("dynamics.c0", [](Config& c) -> double& { return c.resistance.c0; });
        number("dynamics.c2", [](Config& c) -> double& { return c.resistance.c2; });

        number("policy.standstill_distance",
               [](Config& c) -> double& { return c.policy.standstill_distance; });
        number("policy.gradient", [](Config& c) -> double& { return c.policy.gradient; });
        number("policy.speed_limit", [](Config& c) -> double& { return c.policy.speed_limit; });

        number("safety.safe_distance", [](Config& c) -> double& { return c.safety.safe_distance; });
        number("safety.headway_rate", [](Config& c) -> double& { return c.safety.headway_rate; });
        number("safety.conflict_rate", [](Config& c) -> double& { return c.safety.conflict_rate; });

        number("gains.distance", [](Config& c) -> double& { return c.gains.distance_gain; });
        number("gains.speed", [](Config& c) -> double& { return c.gains.speed_gain; });
        number("gains.accel", [](Config& c) -> double& { return c.gains.accel_gain; });

        string_choice("lead.profile", [](Config& c) -> std::string& { return c.lead_profile; },
                      {"constant_speed", "constant_jerk_stop", "piecewise"});
        number("lead.speed", [](Config& c) -> double& { return c.lead_speed; });
        number("lead.jerk", [](Config& c) -> double& { return c.lead_jerk; });
        number("lead.start_time", [](Config& c) -> double& { return c.lead_start_time; });
        keys.push_back(
            {"lead.table",
             [](Config& c, const std::string& value, const std::string& k) {
                 c.lead_table = parse_table(value, k);
             },
             [](const Config& c) { return serialize_table(c.lead_table); }});
        keys.push_back(
            {"lead.brake_bound",
             [](Config& c, const std::string& value, const std::string& k) {
                 const auto [kind, param] = parse_kind_param(value, k);
                 expect_one_of(kind, {"sqrt", "linear"}, k);
                 if (!(param > 0.0)) throw ConfigError(k + ": parameter must be > 0");
                 c.lead_brake_bound = kind + ":" + format_double(param);
             },
             [](const Config& c) { return c.lead_brake_bound; }});

        number("sim.x0.distance", [](Config& c) -> double& { return c.x0.distance; });
        number("sim.x0.speed", [](Config& c) -> double& { return c.x0.speed; });
        number("sim.x0.lead_speed", [](Config& c) -> double& { return c.x0.lead_speed; });
        number("sim.duration", [](Config& c) -> double& { return c.duration; });
        number("sim.dt", [](Config& c) -> double& { return c.dt; });
        string_choice("sim.controller", [](Config& c) -> std::string& { return c.controller; },
                      {"nominal", "filtered", "safe_only"});
        string_choice("sim.criterion", [](Config& c) -> std::string& { return c.criterion; },
                      {"th", "ttc"});
        keys.push_back(
            {"sim.alpha",
             [](Config& c, const std::string& value, const std::string& k) {
                 class_k_from_spec(value, k);  // validate only
                 c.alpha = value;
             },
             [](const Config& c) { return c.alpha; }});

        number("chart.c", [](Config& c) -> double& { return c.chart_accel_gain; });
        number("chart.v_bar", [](Config& c) -> double& { return c.chart_v_bar; });
        number("chart.b_min", [](Config& c) -> double& { return c.chart_b_range.min; });
        number("chart.b_max", [](Config& c) -> double& { return c.chart_b_range.max; });
        number("chart.b_step", [](Config& c) -> double& { return c.chart_b_range.step; });
        number("chart.a_min", [](Config& c) -> double& { return c.chart_a_range.min; });
        number("chart.a_max", [](Config& c) -> double& { return c.chart_a_range.max; });
        number("chart.a_step", [](Config& c) -> double& { return c.chart_a_range.step; });
        number("chart.lead_speed_step",
               [](Config& c) -> double& { return c.chart_lead_speed_step; });

        keys.push_back(
            {"certify.samples",
             [](Config& c, const std::string& value, const std::string& k) {
                 c.certify_samples = parse_count(value, k);
             },
             [](const Config& c) { return std::to_string(c.certify_samples); }});
        keys.push_back(
            {"certify.seed",
             [](Config& c, const std::string& value, const std::string& k) {
                 c.certify_seed = static_cast<unsigned>(parse_count(value, k));
             },
             [](const Config& c) { return std::to_string(c.certify_seed); }});
        number("certify.v_bar", [](Config& c) -> double& { return c.certify_v_bar; });
        keys.push_back(
            {"certify.alpha",
             [](Config& c, const std::string& value, const std::string& k) {
                 class_k_from_spec(value, k);  // validate only
                 c.certify_alpha = value;
             },
             [](const Config& c) { return c.certify_alpha; }});

        keys.push_back(
            {"sweep.gains",
             [](Config& c, const std::string& value, const std::string& k) {
                 c.sweep_gains = parse_gain_list(value, k);
             },
             [](const Config& c) { return serialize_gain_list(c.sweep_gains); }});
        return keys;
    }();
    return table;
}

}  // namespace

Config parse_config(std::istream& in) {
    Config config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto equals = stripped.find('=');
        if (equals == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, equals));
        const std::string value = trim(std::string_view(stripped).substr(equals + 1));
        bool known = false;
        for (const auto& entry : key_table()) {
            if (key == entry.key) {
                entry.set(config, value, key);
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + key + "'");
    }
    return config;
}

Config parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const Config& config) {
    std::string out;
    std::string_view section;
    for (const auto& entry : key_table()) {
        const std::string_view key(entry.key);
        const auto prefix = key.substr(0, key.find('.'));
        if (prefix != section) {
            if (!out.empty()) out += "\n";
            section = prefix;
        }
        out += std::string(key) + " = " + entry.get(config) + "\n";
    }
    return out;
}

ClassK class_k_from_spec(const std::string& spec, const std::string& key) {
    const auto [kind, param] = parse_kind_param(spec, key);
    expect_one_of(kind, {"linear", "sqrt"}, key);
    try {
        return kind == "linear" ? ClassK::linear(param) : ClassK::scaled_sqrt(param);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(key + ": " + err.what());
    }
}

BrakeBound brake_bound_from_config(const Config& config) {
    const auto [kind, param] = parse_kind_param(config.lead_brake_bound, "lead.brake_bound");
    try {
        return kind == "sqrt" ? BrakeBound::sqrt_scaled(param) : BrakeBound::linear(param);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("lead.brake_bound: ") + err.what());
    }
}

Scenario scenario_from_config(const Config& config) {
    Scenario scenario;
    scenario.x0 = config.x0;
    scenario.duration = config.duration;
    scenario.dt = config.dt;
    scenario.resistance = config.resistance;
    scenario.policy = config.policy;
    scenario.safety = config.safety;

    if (config.lead_profile == "constant_speed") {
        scenario.lead = ConstantSpeed{config.lead_speed};
    } else if (config.lead_profile == "constant_jerk_stop") {
        scenario.lead = ConstantJerkStop{config.lead_speed, config.lead_jerk,
                                         config.lead_start_time};
    } else {
        scenario.lead = PiecewiseAccel{config.lead_table};
    }
    try {
        validate_lead_profile(scenario.lead);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("lead.*: ") + err.what());
    }

    scenario.controller.gains = config.gains;
    scenario.controller.law = config.controller == "nominal"
                                  ? ControlLaw::Nominal
                                  : (config.controller == "filtered" ? ControlLaw::Filtered
                                                                     : ControlLaw::SafeOnly);
    scenario.controller.criterion =
        config.criterion == "th" ? MeasureKind::TimeHeadway : MeasureKind::TimeToConflict;
    scenario.controller.alpha = class_k_from_spec(config.alpha, "sim.alpha");
    return scenario;
}

ChartSpec chart_spec_from_config(const Config& config, ChartCriterion criterion) {
    ChartSpec spec;
    spec.criterion = criterion;
    spec.accel_gain = config.chart_accel_gain;
    spec.v_bar = config.chart_v_bar;
    spec.policy = config.policy;
    spec.safety = config.safety;
    spec.brake_bound = brake_bound_from_config(config);
    spec.b_range = config.chart_b_range;
    spec.a_range = config.chart_a_range;
    spec.lead_speed_step = config.chart_lead_speed_step;
    return spec;
}

Gains parse_gains(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw ConfigError("gains: expected 'A,B,C', got '" + text + "'");
    }
    return {parse_double(parts[0], "gains"), parse_double(parts[1], "gains"),
            parse_double(parts[2], "gains")};
}

}  // namespace cccsafe
