#include "pneumo_cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <pneumo/number_format.hpp>

namespace pneumo::cli {

namespace {

struct Default {
    const char* key;
    const char* value;
};

// Reference parametrization of the sensor and the default procedure inputs.
constexpr Default kDefaults[] = {
    // gas
    {"gamma", "1.4"}, {"R", "287"}, {"T0", "293.15"}, {"p_atm", "1.013e5"},
    // geometry
    {"d_piston", "10e-3"}, {"stroke_max", "4e-3"}, {"d_dead", "4e-3"}, {"l_dead", "3e-3"},
    // piston
    {"mass", "8e-3"}, {"f_viscous", "190"}, {"f_coulomb", "10"}, {"alpha", "0"},
    {"g", "9.80665"},
    // transducer
    {"v_offset", "0.2"}, {"sensitivity", "9e-6"}, {"p_max", "5e5"}, {"v_full_scale", "4.7"},
    // simulation
    {"dt", "1e-5"}, {"t_end", "5"}, {"qm", "0"}, {"v_stick", "1e-4"}, {"p0", "2.37e5"},
    {"x0", "4e-3"}, {"input_filter_tau", "0.05"}, {"decimation", "1"},
    {"force", "step:39.24@1"},
    // schedule
    {"f_max", "4"}, {"n_steps", "8"}, {"preloads", "3"}, {"preload_hold", "60"},
    {"preload_gap", "180"},
    // synthetic calibration
    {"ramp_time", "0.1"}, {"settle_window", "0.01"}, {"settle_dp_tol", "1e-5"},
    {"settle_timeout", "30"}, {"noise", "0"}, {"seed", "0"},
    // analysis; empty means "not given"
    {"mode", "zero"}, {"case", "B"}, {"degree", "1"}, {"u_fit_degree", "1"}, {"k", "2"},
    {"machine_error_rel", "0.0005"}, {"k_machine", "2"}, {"resolution", ""},
    {"k_temp", "0.00027"}, {"delta_t", ""}, {"nominal_max", ""}, {"creep_i30", ""},
    {"creep_i300", ""},
};

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

RunConfig::RunConfig() {
    for (const auto& d : kDefaults) values_[d.key] = d.value;
}

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> k = [] {
        std::vector<std::string> out;
        for (const auto& d : kDefaults) out.emplace_back(d.key);
        return out;
    }();
    return k;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second = value;
}

void RunConfig::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    }
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void RunConfig::load_text(std::string_view text, const std::string& origin) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            set(line);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), path);
}

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
    return it->second;
}

double RunConfig::number(const std::string& key) const {
    const auto& text = get(key);
    const auto v = parse_double(text);
    if (!v) throw ConfigError(key + ": '" + text + "' is not a number");
    return *v;
}

long long RunConfig::integer(const std::string& key) const {
    const auto& text = get(key);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(key + ": '" + text + "' is not an integer");
    }
    return v;
}

SensorModel RunConfig::model() const {
    SensorModel m{
        GasProperties{number("gamma"), number("R"), number("T0"), number("p_atm")},
        make_geometry(number("d_piston"), number("stroke_max"), number("d_dead"), number("l_dead")),
        PistonParams{number("mass"), number("f_viscous"), number("f_coulomb"), number("alpha"),
                     number("g")},
        TransducerParams{number("v_offset"), number("sensitivity"), number("p_max"),
                         number("v_full_scale")},
    };
    m.validate();
    return m;
}

SimulationConfig RunConfig::simulation() const {
    SimulationConfig c;
    c.dt = number("dt");
    c.t_end = number("t_end");
    c.qm = number("qm");
    c.v_stick = number("v_stick");
    c.p0 = number("p0");
    c.x0 = number("x0");
    c.input_filter_tau = number("input_filter_tau");
    const auto dec = integer("decimation");
    if (dec < 1 || dec > 1'000'000'000) throw DomainError("decimation must be >= 1");
    c.decimation = static_cast<int>(dec);
    return c;
}

ForceProfile RunConfig::force_profile() const { return ForceProfile::parse(get("force")); }

LoadSchedule RunConfig::schedule() const {
    const auto n = integer("n_steps");
    if (n > 100000) throw ScheduleError("n_steps is unreasonably large");
    LoadSchedule s = build_schedule(number("f_max"), static_cast<int>(n));
    const auto preloads = integer("preloads");
    if (preloads < 0 || preloads > 1000) throw ScheduleError("preloads must be in [0, 1000]");
    s.preloads = static_cast<int>(preloads);
    s.preload_hold = number("preload_hold");
    s.preload_gap = number("preload_gap");
    s.validate();
    return s;
}

SynthesisConfig RunConfig::synthesis() const {
    SynthesisConfig c;
    c.model = model();
    c.sim = simulation();
    c.ramp_time = number("ramp_time");
    c.settle_window = number("settle_window");
    c.settle_dp_tol = number("settle_dp_tol");
    c.settle_timeout = number("settle_timeout");
    c.noise_sigma = number("noise");
    const auto seed = integer("seed");
    if (seed < 0) throw ConfigError("seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
    c.validate();
    return c;
}

AnalysisConfig RunConfig::analysis() const {
    AnalysisConfig c;
    const auto& mode = get("mode");
    if (mode == "raw") c.mode = DeflectionMode::raw;
    else if (mode == "zero") c.mode = DeflectionMode::zero_referenced;
    else throw ConfigError("mode must be raw or zero, got '" + mode + "'");
    const auto& kase = get("case");
    if (kase == "A") c.kase = CalibrationCase::A_interpolation;
    else if (kase == "B") c.kase = CalibrationCase::B_specific_forces;
    else throw ConfigError("case must be A or B, got '" + kase + "'");
    const auto small = [this](const char* key) {
        const auto v = integer(key);
        if (v < 0 || v > 16) throw ConfigError(std::string(key) + " is out of range");
        return static_cast<int>(v);
    };
    c.degree = small("degree");
    c.u_fit_degree = small("u_fit_degree");
    c.k = number("k");
    c.inputs.machine_error_rel = number("machine_error_rel");
    c.inputs.k_machine = number("k_machine");
    c.inputs.k_temp = number("k_temp");
    const auto optional = [this](const char* key) -> std::optional<double> {
        if (get(key).empty()) return std::nullopt;
        return number(key);
    };
    c.resolution = optional("resolution");
    c.delta_t = optional("delta_t");
    c.nominal_max = optional("nominal_max");
    const auto i30 = optional("creep_i30");
    const auto i300 = optional("creep_i300");
    if (i30.has_value() != i300.has_value()) {
        throw ConfigError("creep_i30 and creep_i300 must be given together");
    }
    if (i30) c.creep = std::make_pair(*i30, *i300);
    c.validate();
    return c;
}

}  // namespace pneumo::cli
