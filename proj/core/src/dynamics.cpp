#include "pneumo/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "pneumo/errors.hpp"
#include "pneumo/number_format.hpp"

namespace pneumo {

namespace {

// Unchecked volume; RK4 stages may poke slightly past the stops.
double raw_volume(const SensorGeometry& geom, double x) {
    return geom.area() * x + geom.v_dead();
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

struct Augmented {
    SensorState s;
    double filt = 0.0;
};

struct AugmentedRate {
    StateDerivative d;
    double dfilt = 0.0;
};

AugmentedRate augmented_rate(const Augmented& y, double t, const Simulator::ForceFn& raw_force,
                             const SensorModel& model, const SimulationConfig& cfg) {
    AugmentedRate r;
    const double raw = raw_force(t);
    double applied = raw;
    if (cfg.input_filter_tau > 0.0) {
        applied = y.filt;
        r.dfilt = (raw - y.filt) / cfg.input_filter_tau;
    }
    SensorState s = y.s;
    s.t = t;
    r.d = state_derivative(s, applied, model, cfg);
    return r;
}

Augmented axpy(const Augmented& y, const AugmentedRate& k, double h) {
    Augmented out = y;
    out.s.x += h * k.d.dx;
    out.s.v += h * k.d.dv;
    out.s.p += h * k.d.dp;
    out.filt += h * k.dfilt;
    return out;
}

// Clamp into the stroke, keep p on the adiabat through the clamp, then apply
// the stiction snap with the force acting at the end of the step.
void post_step(SensorState& s, double f_end, const SensorModel& model, const SimulationConfig& cfg) {
    const auto& geom = model.geometry;
    double x_clamped = s.x;
    if (s.x < 0.0) x_clamped = 0.0;
    if (s.x > geom.stroke_max()) x_clamped = geom.stroke_max();
    if (x_clamped != s.x) {
        const double v_raw = raw_volume(geom, s.x);
        if (!(v_raw > 0.0)) {
            throw NumericInstability("piston overran the dead volume at t=" + std::to_string(s.t)
                                         + " s; reduce dt",
                                     s.t);
        }
        s.p *= std::pow(v_raw / raw_volume(geom, x_clamped), model.gas.gamma);
        s.x = x_clamped;
        s.v = 0.0;
    }
    if (std::abs(s.v) < cfg.v_stick
        && std::abs(net_drive(s, f_end, model)) <= model.piston.f_coulomb) {
        s.v = 0.0;
    }
}

void check_finite(const SensorState& s) {
    if (!std::isfinite(s.x) || !std::isfinite(s.v) || !std::isfinite(s.p) || !(s.p > 0.0)) {
        throw NumericInstability("non-finite or non-positive state at t=" + format_g17(s.t)
                                     + " s; reduce dt",
                                 s.t);
    }
}

Augmented rk4(const Augmented& y, double t, double dt, const Simulator::ForceFn& raw_force,
              const SensorModel& model, const SimulationConfig& cfg) {
    const auto k1 = augmented_rate(y, t, raw_force, model, cfg);
    const auto k2 = augmented_rate(axpy(y, k1, dt / 2), t + dt / 2, raw_force, model, cfg);
    const auto k3 = augmented_rate(axpy(y, k2, dt / 2), t + dt / 2, raw_force, model, cfg);
    const auto k4 = augmented_rate(axpy(y, k3, dt), t + dt, raw_force, model, cfg);

    Augmented out = y;
    out.s.x += dt / 6 * (k1.d.dx + 2 * k2.d.dx + 2 * k3.d.dx + k4.d.dx);
    out.s.v += dt / 6 * (k1.d.dv + 2 * k2.d.dv + 2 * k3.d.dv + k4.d.dv);
    out.s.p += dt / 6 * (k1.d.dp + 2 * k2.d.dp + 2 * k3.d.dp + k4.d.dp);
    out.filt += dt / 6 * (k1.dfilt + 2 * k2.dfilt + 2 * k3.dfilt + k4.dfilt);
    out.s.t = t + dt;
    check_finite(out.s);
    return out;
}

}  // namespace

void SimulationConfig::validate(const SensorGeometry& geom) const {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    if (!(t_end >= dt)) throw DomainError("t_end must be >= dt");
    if (!(v_stick > 0.0)) throw DomainError("v_stick must be > 0");
    if (!(p0 > 0.0)) throw DomainError("p0 must be > 0");
    if (!(x0 >= 0.0 && x0 <= geom.stroke_max())) throw DomainError("x0 must lie in [0, stroke_max]");
    if (!(input_filter_tau >= 0.0)) throw DomainError("input_filter_tau must be >= 0");
    if (!std::isfinite(qm)) throw DomainError("qm must be finite");
    if (decimation < 1) throw DomainError("decimation must be >= 1");
}

double pressure_rate(const SensorState& state, const SensorGeometry& geom,
                     const GasProperties& gas, double qm) {
    const double volume = raw_volume(geom, state.x);
    return (gas.R * gas.T0 * gas.gamma * qm - gas.gamma * state.p * geom.area() * state.v) / volume;
}

double net_drive(const SensorState& state, double f_ext, const SensorModel& model) {
    const auto& pp = model.piston;
    return (state.p - model.gas.p_atm) * model.geometry.area()
         - pp.mass * pp.g * std::sin(pp.alpha) - f_ext;
}

double friction_force(double v, double drive, const PistonParams& piston, double v_stick) {
    if (std::abs(v) >= v_stick) {
        return piston.f_coulomb * sgn(v) + piston.f_viscous * v;
    }
    if (std::abs(drive) <= piston.f_coulomb) {
        return drive;
    }
    return piston.f_coulomb * sgn(drive) + piston.f_viscous * v;
}

StateDerivative state_derivative(const SensorState& state, double f_ext,
                                 const SensorModel& model, const SimulationConfig& cfg) {
    const auto& geom = model.geometry;
    const double drive = net_drive(state, f_ext, model);
    const double friction = friction_force(state.v, drive, model.piston, cfg.v_stick);

    StateDerivative d;
    d.dx = state.v;
    d.dv = (drive - friction) / model.piston.mass;

    const bool at_floor = state.x <= 0.0 && state.v <= 0.0 && d.dv <= 0.0;
    const bool at_ceiling = state.x >= geom.stroke_max() && state.v >= 0.0 && d.dv >= 0.0;
    if (at_floor || at_ceiling) {
        d.dx = 0.0;
        d.dv = 0.0;
    }

    SensorState moving = state;
    moving.v = d.dx;
    d.dp = pressure_rate(moving, geom, model.gas, cfg.qm);
    return d;
}

SensorState integrate_step(const SensorState& state, double f_ext, const SensorModel& model,
                           const SimulationConfig& cfg, double dt) {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    SimulationConfig unfiltered = cfg;
    unfiltered.input_filter_tau = 0.0;
    const Simulator::ForceFn constant = [f_ext](double) { return f_ext; };
    Augmented y{state, f_ext};
    Augmented out = rk4(y, state.t, dt, constant, model, unfiltered);
    post_step(out.s, f_ext, model, unfiltered);
    return out.s;
}

double adiabatic_invariant(const SensorState& state, const SensorModel& model) {
    return state.p * std::pow(raw_volume(model.geometry, state.x), model.gas.gamma);
}

Simulator::Simulator(const SensorModel& model, const SimulationConfig& cfg)
    : Simulator(model, cfg, SensorState{cfg.x0, 0.0, cfg.p0, 0.0}, 0.0) {}

Simulator::Simulator(const SensorModel& model, const SimulationConfig& cfg,
                     const SensorState& initial, double initial_force)
    : model_(model), cfg_(cfg), state_(initial), filtered_(initial_force), t0_(initial.t) {
    model_.validate();
    cfg_.validate(model_.geometry);
}

void Simulator::step(const ForceFn& raw_force) {
    const double t = t0_ + static_cast<double>(steps_) * cfg_.dt;
    Augmented y{state_, filtered_};
    Augmented out = rk4(y, t, cfg_.dt, raw_force, model_, cfg_);
    ++steps_;
    out.s.t = t0_ + static_cast<double>(steps_) * cfg_.dt;
    const double f_end = cfg_.input_filter_tau > 0.0 ? out.filt : raw_force(out.s.t);
    post_step(out.s, f_end, model_, cfg_);
    check_finite(out.s);
    state_ = out.s;
    filtered_ = cfg_.input_filter_tau > 0.0 ? out.filt : f_end;
}

void Simulator::step_constant(double force) {
    step([force](double) { return force; });
}

double Simulator::applied_force_at(const ForceFn& raw_force) const {
    return cfg_.input_filter_tau > 0.0 ? filtered_ : raw_force(state_.t);
}

StateDerivative Simulator::derivative(double force) const {
    return state_derivative(state_, force, model_, cfg_);
}

Trajectory simulate(const ForceProfile& profile, const SensorModel& model,
                    const SimulationConfig& cfg) {
    model.validate();
    cfg.validate(model.geometry);

    const Simulator::ForceFn raw = [&profile](double t) { return profile.at(t); };
    Simulator sim(model, cfg, SensorState{cfg.x0, 0.0, cfg.p0, 0.0}, profile.at(0.0));

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.decimation = cfg.decimation;

    const auto record = [&] {
        const auto& s = sim.state();
        const double f = sim.applied_force_at(raw);
        traj.samples.push_back({s.t, s.x, s.v, s.p, f,
                                transducer_voltage(s.p - model.gas.p_atm, model.transducer).volts});
    };

    const auto n_steps = static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
    traj.samples.reserve(static_cast<std::size_t>(n_steps / cfg.decimation + 1));
    record();
    for (long long i = 1; i <= n_steps; ++i) {
        sim.step(raw);
        if (i % cfg.decimation == 0) record();
    }
    return traj;
}

TrajectorySummary summarize(const Trajectory& traj, const SensorModel& model,
                            const SimulationConfig& cfg) {
    TrajectorySummary sum;
    if (traj.samples.empty()) return sum;
    sum.final_sample = traj.samples.back();

    const auto invariant = [&](const TrajectorySample& s) {
        return adiabatic_invariant(SensorState{s.x, s.v, s.p, s.t}, model);
    };
    const double i0 = invariant(traj.samples.front());
    for (const auto& s : traj.samples) {
        sum.invariant_drift = std::max(sum.invariant_drift, std::abs(invariant(s) - i0) / i0);
    }

    sum.settled = std::abs(traj.samples.back().v) < cfg.v_stick;
    sum.settle_time = traj.samples.front().t;
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
        if (std::abs(it->v) >= cfg.v_stick) {
            sum.settle_time = it == traj.samples.rbegin() ? it->t : std::prev(it)->t;
            break;
        }
    }
    return sum;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x,v,p,F_in,V_out\n";
    for (const auto& s : traj.samples) {
        os << format_g17(s.t) << ',' << format_g17(s.x) << ',' << format_g17(s.v) << ','
           << format_g17(s.p) << ',' << format_g17(s.f_in) << ',' << format_g17(s.v_out) << '\n';
    }
}

}  // namespace pneumo
