#include "pneumo/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pneumo/errors.hpp"
#include "pneumo/number_format.hpp"

namespace pneumo {

namespace {

const std::vector<SeriesPlan>& standard_plan() {
    static const std::vector<SeriesPlan> plan{
        {0, LegPlan::increasing},
        {0, LegPlan::increasing},
        {360, LegPlan::increasing_then_decreasing},
        {180, LegPlan::increasing_then_decreasing},
    };
    return plan;
}

double smoothstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * (3.0 - 2.0 * s);
}

// Drives one mounted sensor through quasi-static force changes.
class Rig {
public:
    Rig(const SensorModel& model, const SynthesisConfig& cfg, SimulationConfig sim)
        : model_(model), cfg_(cfg), sim_(model, sim), dt_(sim.dt) {}

    void move_to(double target) {
        const double from = force_;
        const double t_start = sim_.state().t;
        const double ramp = cfg_.ramp_time;
        if (ramp > 0.0) {
            const auto n = static_cast<long long>(std::ceil(ramp / dt_));
            const Simulator::ForceFn f = [=](double t) {
                return from + (target - from) * smoothstep((t - t_start) / ramp);
            };
            for (long long i = 0; i < n; ++i) sim_.step(f);
        }
        force_ = target;
        hold();
    }

    double reading() const {
        return transducer_voltage(sim_.state().p - model_.gas.p_atm, model_.transducer).volts;
    }

private:
    void hold() {
        const auto window = static_cast<long long>(std::ceil(cfg_.settle_window / dt_));
        const auto limit = static_cast<long long>(std::ceil(cfg_.settle_timeout / dt_));
        long long quiet = 0;
        for (long long i = 0; i < limit; ++i) {
            quiet = std::abs(sim_.state().v) < cfg_.sim.v_stick ? quiet + 1 : 0;
            if (quiet >= window && std::abs(sim_.derivative(force_).dp) < cfg_.settle_dp_tol) return;
            sim_.step_constant(force_);
        }
        throw NumericInstability("did not settle within " + format_shortest(cfg_.settle_timeout)
                                     + " s (|dp/dt| = "
                                     + format_shortest(std::abs(sim_.derivative(force_).dp))
                                     + " Pa/s)",
                                 sim_.state().t);
    }

    const SensorModel& model_;
    const SynthesisConfig& cfg_;
    Simulator sim_;
    double dt_;
    double force_ = 0.0;
};

template <class F>
void with_context(const char* series, double level_kgf, F&& body) {
    try {
        body();
    } catch (const NumericInstability& e) {
        throw NumericInstability("series " + std::string(series) + " at "
                                     + format_shortest(level_kgf) + " kgf: " + e.what(),
                                 e.time());
    }
}

}  // namespace

void LoadSchedule::validate() const {
    if (!(f_max > 0.0) || !std::isfinite(f_max)) throw ScheduleError("f_max must be > 0");
    if (steps.size() < static_cast<std::size_t>(kMinForceLevels)) {
        throw ScheduleError("at least " + std::to_string(kMinForceLevels)
                            + " nonzero force levels are required (got "
                            + std::to_string(steps.size()) + ")");
    }
    if (!(steps.front() > 0.0)) throw ScheduleError("first force level must be > 0");
    for (std::size_t i = 1; i < steps.size(); ++i) {
        if (!(steps[i] > steps[i - 1])) throw ScheduleError("force levels must be strictly increasing");
    }
    if (std::abs(steps.back() - f_max) > 1e-12 * f_max) {
        throw ScheduleError("last force level must equal f_max");
    }
    if (preloads < 0) throw ScheduleError("preloads must be >= 0");
    if (!(preload_hold >= 0.0) || !(preload_gap >= 0.0)) {
        throw ScheduleError("preload hold and gap must be >= 0");
    }
    if (series_plan != standard_plan()) {
        throw ScheduleError("series plan must be 0 deg up, 0 deg up, 360 deg up/down, 180 deg up/down");
    }
}

LoadSchedule build_schedule(double f_max, int n_steps) {
    if (n_steps < kMinForceLevels) {
        throw ScheduleError("at least " + std::to_string(kMinForceLevels)
                            + " nonzero force levels are required (got " + std::to_string(n_steps)
                            + ")");
    }
    if (!(f_max > 0.0) || !std::isfinite(f_max)) throw ScheduleError("f_max must be > 0");
    LoadSchedule s;
    s.f_max = f_max;
    s.steps.reserve(static_cast<std::size_t>(n_steps));
    for (int i = 1; i < n_steps; ++i) s.steps.push_back(f_max * i / n_steps);
    s.steps.push_back(f_max);
    s.series_plan = standard_plan();
    return s;
}

const std::array<SeriesLayout, kSeriesCount>& series_layout() {
    static const std::array<SeriesLayout, kSeriesCount> layout{{
        {"X1", "X1_0", 0, Direction::increasing},
        {"X2", "X2_0", 0, Direction::increasing},
        {"X3", "X3_360", 360, Direction::increasing},
        {"X4", "X4_360", 360, Direction::decreasing},
        {"X5", "X5_180", 180, Direction::increasing},
        {"X6", "X6_180", 180, Direction::decreasing},
    }};
    return layout;
}

void CalibrationDataset::validate() const {
    if (force_levels.size() < static_cast<std::size_t>(kMinForceLevels)) {
        throw DomainError("dataset needs at least " + std::to_string(kMinForceLevels)
                          + " nonzero force levels");
    }
    for (std::size_t i = 0; i < force_levels.size(); ++i) {
        if (!std::isfinite(force_levels[i]) || !(force_levels[i] > 0.0)
            || (i > 0 && !(force_levels[i] > force_levels[i - 1]))) {
            throw DomainError("force levels must be positive and strictly increasing");
        }
    }
    for (std::size_t k = 0; k < kSeriesCount; ++k) {
        const auto& s = series[k];
        const std::string id = series_layout()[k].id;
        if (s.readings.size() != force_levels.size()) {
            throw DomainError("series " + id + " must have one reading per force level");
        }
        const bool finite = std::all_of(s.readings.begin(), s.readings.end(),
                                        [](double r) { return std::isfinite(r); })
                         && std::isfinite(s.zero_lead)
                         && (!s.zero_trail || std::isfinite(*s.zero_trail));
        if (!finite) throw DomainError("series " + id + " has a non-finite reading");
    }
}

void SynthesisConfig::validate() const {
    model.validate();
    sim.validate(model.geometry);
    if (!(ramp_time >= 0.0)) throw DomainError("ramp_time must be >= 0");
    if (!(settle_window > 0.0)) throw DomainError("settle_window must be > 0");
    if (!(settle_dp_tol > 0.0)) throw DomainError("settle_dp_tol must be > 0");
    if (!(settle_timeout > settle_window)) throw DomainError("settle_timeout must exceed settle_window");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw DomainError("noise_sigma must be >= 0");
    }
}

CalibrationDataset run_synthetic_calibration(const LoadSchedule& schedule,
                                             const SynthesisConfig& cfg) {
    schedule.validate();
    cfg.validate();

    SimulationConfig sim = cfg.sim;
    sim.input_filter_tau = 0.0;

    CalibrationDataset ds;
    ds.force_levels = schedule.steps;
    ds.zero_indication = transducer_voltage(sim.p0 - cfg.model.gas.p_atm, cfg.model.transducer).volts;

    std::size_t slot = 0;
    for (const auto& plan : schedule.series_plan) {
        SensorModel model = cfg.model;
        if (plan.orientation_deg == 180) model.piston.alpha = -model.piston.alpha;

        const char* up_id = series_layout()[slot].id;
        Series& up = ds.series[slot++];
        Rig rig(model, cfg, sim);

        with_context(up_id, schedule.f_max, [&] {
            for (int i = 0; i < schedule.preloads; ++i) {
                rig.move_to(kgf_to_newton(schedule.f_max));
                rig.move_to(0.0);
            }
        });
        up.zero_lead = rig.reading();
        for (double level : schedule.steps) {
            with_context(up_id, level, [&] { rig.move_to(kgf_to_newton(level)); });
            up.readings.push_back(rig.reading());
        }

        if (plan.legs == LegPlan::increasing) {
            with_context(up_id, 0.0, [&] { rig.move_to(0.0); });
            up.zero_trail = rig.reading();
            continue;
        }

        const char* down_id = series_layout()[slot].id;
        Series& down = ds.series[slot++];
        down.readings.assign(schedule.steps.size(), 0.0);
        down.readings.back() = rig.reading();
        for (std::size_t i = schedule.steps.size() - 1; i-- > 0;) {
            const double level = schedule.steps[i];
            with_context(down_id, level, [&] { rig.move_to(kgf_to_newton(level)); });
            down.readings[i] = rig.reading();
        }
        with_context(down_id, 0.0, [&] { rig.move_to(0.0); });
        down.zero_lead = rig.reading();
    }

    if (cfg.noise_sigma > 0.0) {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
        *ds.zero_indication += noise(rng);
        for (auto& s : ds.series) {
            s.zero_lead += noise(rng);
            for (auto& r : s.readings) r += noise(rng);
            if (s.zero_trail) *s.zero_trail += noise(rng);
        }
    }
    return ds;
}

std::array<std::vector<double>, kSeriesCount> deflections(const CalibrationDataset& ds,
                                                         DeflectionMode mode) {
    std::array<std::vector<double>, kSeriesCount> out;
    for (std::size_t k = 0; k < kSeriesCount; ++k) {
        out[k] = ds.series[k].readings;
        if (mode == DeflectionMode::zero_referenced) {
            for (auto& r : out[k]) r -= ds.series[k].zero_lead;
        }
    }
    return out;
}

}  // namespace pneumo
