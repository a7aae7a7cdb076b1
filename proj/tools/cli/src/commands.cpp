#include "pneumo_cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pneumo/dataset_csv.hpp>
#include <pneumo/dimensioning.hpp>
#include <pneumo/errors.hpp>
#include <pneumo/number_format.hpp>
#include <pneumo/report_io.hpp>

#include "pneumo_cli/run_config.hpp"

namespace pneumo::cli {

namespace {

struct Globals {
    std::string config;
    std::string out;
    bool quiet = false;
    std::vector<std::string> sets;
};

// Flag values that map straight onto configuration keys.
struct Overrides {
    std::vector<std::pair<std::string, std::string*>> slots;
    std::vector<std::unique_ptr<std::string>> storage;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        storage.push_back(std::make_unique<std::string>());
        app->add_option(flag, *storage.back(), help);
        slots.emplace_back(key, storage.back().get());
    }

    void apply(RunConfig& cfg) const {
        for (const auto& [key, value] : slots) {
            if (!value->empty()) cfg.set(key, *value);
        }
    }
};

RunConfig load_config(const Globals& g, const Overrides& flags) {
    RunConfig cfg;
    if (!g.config.empty()) cfg.load_file(g.config);
    for (const auto& s : g.sets) cfg.set(s);
    flags.apply(cfg);
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << content;
    f.close();
    if (!f) throw ConfigError("error while writing '" + path + "'");
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

int cmd_simulate(const Globals& g, const Overrides& flags, std::ostream& out) {
    const RunConfig cfg = load_config(g, flags);
    const auto model = cfg.model();
    const auto sim = cfg.simulation();
    const auto profile = cfg.force_profile();
    sim.validate(model.geometry);

    const auto traj = simulate(profile, model, sim);
    if (!g.out.empty()) {
        std::ostringstream csv;
        write_trajectory_csv(csv, traj);
        write_file(g.out, csv.str());
    }
    if (!g.quiet) {
        const auto s = summarize(traj, model, sim);
        const auto& f = s.final_sample;
        out << "profile: " << profile.describe() << '\n'
            << "samples: " << traj.samples.size() << " (dt " << format_shortest(sim.dt)
            << " s, decimation " << sim.decimation << ")\n"
            << "final:   t = " << format_shortest(f.t) << " s, x = " << fmt("%.6e", f.x)
            << " m, v = " << fmt("%.3e", f.v) << " m/s, p = " << fmt("%.6e", f.p)
            << " Pa, V_out = " << fmt("%.6f", f.v_out) << " V\n"
            << "p V^gamma drift: " << fmt("%.3e", s.invariant_drift) << " (relative)\n"
            << "settle time: "
            << (s.settled ? fmt("%.4f", s.settle_time) + " s" : std::string("not settled")) << '\n';
        if (!g.out.empty()) out << "wrote " << g.out << '\n';
    }
    return kOk;
}

int cmd_dimension(const std::string& force, const std::string& pressure, const std::string& diameter,
                  const Globals& g, std::ostream& out, std::ostream& err) {
    // only validates the configuration; sizing needs no model parameters
    (void)load_config(g, Overrides{});
    const auto value = [](const std::string& text, const char* name) -> std::optional<double> {
        if (text.empty()) return std::nullopt;
        const auto v = parse_double(text);
        if (!v) throw ConfigError(std::string(name) + ": '" + text + "' is not a number");
        return v;
    };
    const auto f = value(force, "--force");
    const auto p = value(pressure, "--pressure");
    const auto d = value(diameter, "--diameter");
    const int given = f.has_value() + p.has_value() + d.has_value();
    if (given != 2) {
        err << "pneumo: error: dimension needs exactly two of --force N, --pressure Pa, --diameter m\n"
            << "usage: pneumo dimension --force N --pressure Pa | --force N --diameter m | "
               "--pressure Pa --diameter m\n";
        return kConfigError;
    }
    double F = 0, P = 0, D = 0;
    std::string line;
    if (!d) {
        F = *f;
        P = *p;
        D = solve_diameter(F, P);
        line = "diameter = " + fmt("%.2f", D * 1e3) + " mm";
    } else if (!f) {
        P = *p;
        D = *d;
        F = solve_force(P, D);
        line = "force = " + fmt("%.2f", F) + " N";
    } else {
        F = *f;
        D = *d;
        P = solve_pressure(F, D);
        line = "pressure = " + fmt("%.2f", P / 1e3) + " kPa";
    }
    out << line << '\n';
    if (!g.quiet) {
        out << "F = " << format_shortest(F) << " N, p = " << format_shortest(P)
            << " Pa (gauge), d = " << format_shortest(D) << " m\n";
    }
    return kOk;
}

int cmd_synth(const Globals& g, const Overrides& flags, std::ostream& out) {
    const RunConfig cfg = load_config(g, flags);
    const auto schedule = cfg.schedule();
    const auto synth = cfg.synthesis();
    if (g.out.empty()) throw ConfigError("synth needs --out <dataset.csv>");
    const auto ds = run_synthetic_calibration(schedule, synth);
    write_file(g.out, serialize_dataset(ds));
    if (!g.quiet) {
        out << "synthetic calibration: " << ds.force_levels.size() << " levels up to "
            << format_shortest(schedule.f_max) << " kgf, 6 series, noise "
            << format_shortest(synth.noise_sigma) << " V (seed " << synth.seed << ")\n"
            << "wrote " << g.out << '\n';
    }
    return kOk;
}

int cmd_analyze(const std::string& dataset_path, const std::string& csv_path, const Globals& g,
                const Overrides& flags, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_config(g, flags);
    const auto acfg = cfg.analysis();
    CalibrationDataset ds;
    try {
        ds = parse_dataset(read_file(dataset_path));
    } catch (const ParseError& e) {
        throw ParseError(dataset_path + ": " + e.message(), e.line(), e.column());
    }
    const auto result = analyze(ds, acfg);
    if (!g.out.empty()) write_file(g.out, report_json(result));
    if (!csv_path.empty()) {
        std::ostringstream csv;
        write_report_csv(csv, result);
        write_file(csv_path, csv.str());
    }
    if (!g.quiet) out << report_summary(result);
    if (!result.complete()) {
        for (const auto& why : result.incomplete) err << "pneumo: incomplete: " << why << '\n';
        return kIncompleteAnalysis;
    }
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sealed-chamber pneumatic force sensor: simulation, sizing and calibration analysis",
                 "pneumo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pneumo 0.3.0");

    Globals g;
    app.add_option("--config", g.config, "key=value configuration file");
    app.add_option("--out", g.out, "output file (trajectory CSV, dataset CSV or report JSON)");
    app.add_flag("--quiet", g.quiet, "suppress the summary on standard output");
    app.add_option("--set", g.sets, "override a configuration key, key=value (repeatable)")
        ->take_last()
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    Overrides sim_flags;
    auto* sim = app.add_subcommand("simulate", "integrate the sensor under a force profile");
    sim->fallthrough();
    sim_flags.add(sim, "--force", "force",
                  "constant:F | step:F@t | ramp:F@t0:t1 | staircase:F@t,... | table:t/F,...");
    sim_flags.add(sim, "--t-end", "t_end", "simulated duration, s");
    sim_flags.add(sim, "--dt", "dt", "integrator step, s");
    sim_flags.add(sim, "--tau", "input_filter_tau", "input low-pass time constant, s (0 disables)");
    sim_flags.add(sim, "--decimation", "decimation", "record every n-th step");

    std::string dim_force, dim_pressure, dim_diameter;
    auto* dim = app.add_subcommand("dimension", "solve F = p pi (d/2)^2 for the missing quantity");
    dim->fallthrough();
    dim->add_option("--force", dim_force, "force, N");
    dim->add_option("--pressure", dim_pressure, "gauge pressure, Pa");
    dim->add_option("--diameter", dim_diameter, "piston diameter, m");

    Overrides synth_flags;
    auto* synth = app.add_subcommand("synth", "simulate a full calibration and write its dataset CSV");
    synth->fallthrough();
    synth_flags.add(synth, "--seed", "seed", "noise seed");
    synth_flags.add(synth, "--noise", "noise", "reading noise sigma, V");
    synth_flags.add(synth, "--f-max", "f_max", "full-scale force, kgf");
    synth_flags.add(synth, "--steps", "n_steps", "number of nonzero force levels (>= 8)");

    Overrides an_flags;
    std::string dataset_path, csv_path;
    auto* an = app.add_subcommand("analyze", "error metrics, uncertainty budget and class of a dataset");
    an->fallthrough();
    an->add_option("dataset", dataset_path, "dataset CSV")->required();
    an_flags.add(an, "--mode", "mode", "raw | zero");
    an_flags.add(an, "--case", "case", "A (interpolation) | B (specific forces)");
    an_flags.add(an, "--degree", "degree", "interpolation degree 1..3");
    an->add_option("--csv", csv_path, "flat per-level CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) return cmd_simulate(g, sim_flags, out);
        if (*dim) return cmd_dimension(dim_force, dim_pressure, dim_diameter, g, out, err);
        if (*synth) return cmd_synth(g, synth_flags, out);
        if (*an) return cmd_analyze(dataset_path, csv_path, g, an_flags, out, err);
    } catch (const NumericInstability& e) {
        err << "pneumo: numeric error: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        err << "pneumo: error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace pneumo::cli
