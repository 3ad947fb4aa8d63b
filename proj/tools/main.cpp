// Command-line front end: simulate | chart | certify | sweep.
// Exit codes: 0 success/safe, 1 usage or config error, 2 safety violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cccsafe/charts.hpp"
#include "cccsafe/config.hpp"
#include "cccsafe/csv.hpp"
#include "cccsafe/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct Options {
    std::string config_path;
    std::string out_path;
    std::string criterion;
    std::optional<std::string> gains;
    std::optional<unsigned> seed;
};

cccsafe::Config load(const Options& options) {
    if (options.config_path.empty()) return cccsafe::Config{};
    return cccsafe::load_config(options.config_path);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw cccsafe::ConfigError("cannot open output file '" + path + "'");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (out) out << text;
}

void print_measure(const char* name, const cccsafe::MeasureStats& stats) {
    std::cout << "min " << name << " = " << cccsafe::format_double(stats.min_value);
    if (stats.first_violation_time) {
        std::cout << "  (first violation at t = "
                  << cccsafe::format_double(*stats.first_violation_time) << " s)";
    } else {
        std::cout << "  (no violation)";
    }
    std::cout << "\n";
}

int cmd_simulate(const Options& options) {
    cccsafe::Config config = load(options);
    if (options.gains) config.gains = cccsafe::parse_gains(*options.gains);
    const cccsafe::Scenario scenario = cccsafe::scenario_from_config(config);
    const cccsafe::Trajectory trajectory = cccsafe::run(scenario);
    const cccsafe::MonitorReport report = cccsafe::monitor(trajectory);

    if (!options.out_path.empty()) {
        auto out = open_output(options.out_path);
        cccsafe::write_trajectory_csv(out, trajectory);
        write_text(options.out_path + ".gnuplot",
                   "set datafile separator ','\n"
                   "set key autotitle columnhead\n"
                   "set xlabel 't [s]'\n"
                   "plot '" + options.out_path + "' using 1:10 with lines title 'hTH', \\\n"
                   "     '" + options.out_path + "' using 1:9 with lines title 'hD', \\\n"
                   "     '" + options.out_path + "' using 1:11 with lines title 'hTTC'\n");
    }

    print_measure("hD", report.distance);
    print_measure("hTH", report.headway);
    print_measure("hTTC", report.conflict);
    std::cout << "u range = [" << cccsafe::format_double(report.min_input) << ", "
              << cccsafe::format_double(report.max_input) << "] m/s^2\n";
    std::cout << "filter active = "
              << cccsafe::format_double(100.0 * report.filter_active_fraction) << " % of samples\n";
    return report.any_violation() ? kExitViolation : kExitOk;
}

int cmd_chart(const Options& options) {
    cccsafe::ChartCriterion criterion;
    if (options.criterion == "th") {
        criterion = cccsafe::ChartCriterion::TimeHeadway;
    } else if (options.criterion == "ttc") {
        criterion = cccsafe::ChartCriterion::TimeToConflict;
    } else if (options.criterion == "plant") {
        criterion = cccsafe::ChartCriterion::PlantStable;
    } else if (options.criterion == "string") {
        criterion = cccsafe::ChartCriterion::StringStable;
    } else {
        throw cccsafe::ConfigError("--criterion must be th|ttc|plant|string");
    }

    const cccsafe::Config config = load(options);
    const cccsafe::ChartSpec spec = cccsafe::chart_spec_from_config(config, criterion);
    const cccsafe::RegionGrid grid = cccsafe::rasterize(spec);

    if (!options.out_path.empty()) {
        auto out = open_output(options.out_path);
        cccsafe::write_chart_csv(out, grid);
        write_text(options.out_path + ".gnuplot",
                   "set datafile separator ','\n"
                   "set xlabel 'B [1/s]'\n"
                   "set ylabel 'A [1/s]'\n"
                   "plot '" + options.out_path + "' using 1:($3 > 0 ? $2 : 1/0) with dots title 'safe'\n");
    } else {
        cccsafe::write_chart_csv(std::cout, grid);
    }
    return kExitOk;
}

int cmd_certify(const Options& options) {
    cccsafe::MeasureKind kind;
    if (options.criterion == "th") {
        kind = cccsafe::MeasureKind::TimeHeadway;
    } else if (options.criterion == "ttc") {
        kind = cccsafe::MeasureKind::TimeToConflict;
    } else {
        throw cccsafe::ConfigError("--criterion must be th or ttc");
    }

    cccsafe::Config config = load(options);
    if (options.gains) config.gains = cccsafe::parse_gains(*options.gains);
    if (options.seed) config.certify_seed = *options.seed;

    const cccsafe::CertificationReport report = cccsafe::certify_boundary(
        kind, config.gains, config.policy, config.safety, config.resistance, config.certify_v_bar,
        cccsafe::brake_bound_from_config(config), config.certify_samples, config.certify_seed,
        cccsafe::class_k_from_spec(config.certify_alpha, "certify.alpha"));

    std::cout << "criterion = " << options.criterion << "\n"
              << "gains = " << cccsafe::format_double(config.gains.distance_gain) << ","
              << cccsafe::format_double(config.gains.speed_gain) << ","
              << cccsafe::format_double(config.gains.accel_gain) << "\n"
              << "samples = " << report.samples << "\n"
              << "worst_margin = " << cccsafe::format_double(report.worst_margin) << " m/s^2\n"
              << "argmin state: D = " << cccsafe::format_double(report.argmin_state.distance)
              << ", v = " << cccsafe::format_double(report.argmin_state.speed)
              << ", vL = " << cccsafe::format_double(report.argmin_state.lead_speed) << "\n";
    return report.worst_margin >= -1e-9 ? kExitOk : kExitViolation;
}

int cmd_sweep(const Options& options) {
    const cccsafe::Config config = load(options);
    const cccsafe::Scenario base = cccsafe::scenario_from_config(config);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!options.out_path.empty()) {
        file = open_output(options.out_path);
        out = &file;
    }

    *out << "A,B,C,min_hD,min_hTH,min_hTTC,violation,error\n";
    bool any_violation = false;
    for (const cccsafe::Gains& gains : config.sweep_gains) {
        cccsafe::Scenario scenario = base;
        scenario.controller.gains = gains;
        *out << cccsafe::format_double(gains.distance_gain) << ','
             << cccsafe::format_double(gains.speed_gain) << ','
             << cccsafe::format_double(gains.accel_gain) << ',';
        try {
            const cccsafe::MonitorReport report = cccsafe::monitor(cccsafe::run(scenario));
            const bool violation = report.any_violation();
            any_violation = any_violation || violation;
            *out << cccsafe::format_double(report.distance.min_value) << ','
                 << cccsafe::format_double(report.headway.min_value) << ','
                 << cccsafe::format_double(report.conflict.min_value) << ','
                 << (violation ? '1' : '0') << ",\n";
        } catch (const std::exception& err) {
            std::string message = err.what();
            for (char& ch : message) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            *out << ",,,," << message << "\n";
        }
    }
    return any_violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safety-critical connected cruise control: simulation, safety filters,\n"
                 "gain-space charts and numerical boundary certification."};
    app.require_subcommand(1);

    Options options;
    const auto add_common = [&options](CLI::App* cmd, bool needs_criterion) {
        cmd->add_option("--config", options.config_path, "key = value configuration file");
        cmd->add_option("--out", options.out_path, "output CSV path");
        auto* criterion = cmd->add_option("--criterion", options.criterion,
                                          "th|ttc (charts also: plant|string)");
        if (needs_criterion) criterion->required();
        cmd->add_option_function<std::string>(
            "--gains", [&options](const std::string& value) { options.gains = value; },
            "override gains as 'A,B,C'");
        cmd->add_option_function<unsigned>(
            "--seed", [&options](unsigned value) { options.seed = value; },
            "certification sample seed");
    };

    auto* simulate = app.add_subcommand("simulate", "integrate a scenario and monitor safety");
    add_common(simulate, false);
    auto* chart = app.add_subcommand("chart", "rasterize a safety or stability region");
    add_common(chart, true);
    auto* certify = app.add_subcommand("certify", "numerical boundary certification of gains");
    add_common(certify, true);
    auto* sweep = app.add_subcommand("sweep", "simulate each configured gain tuple");
    add_common(sweep, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(options);
        if (chart->parsed()) return cmd_chart(options);
        if (certify->parsed()) return cmd_certify(options);
        return cmd_sweep(options);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    }
}
