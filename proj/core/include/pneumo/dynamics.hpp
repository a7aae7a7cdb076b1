#pragma once

// Continuous dynamics of the sealed chamber and piston, a fixed-step RK4
// integrator with Karnopp stiction and inelastic hard stops, and trajectory
// export.
//
// State: x (chamber length, m), v (m/s), p (absolute pressure, Pa).
//   dx/dt = v
//   dv/dt = [(p - p_atm) A - m g sin(alpha) - F_fr - F_ext] / m
//   dp/dt = (R T0 gamma qm - gamma p A v) / (A x + V_dead)
// Positive F_ext compresses the chamber (pushes x toward 0).

#include <functional>
#include <iosfwd>
#include <vector>

#include "pneumo/core_model.hpp"
#include "pneumo/force_profile.hpp"

namespace pneumo {

struct SimulationConfig {
    double dt = 1e-5;                // s
    double t_end = 5.0;              // s
    double qm = 0.0;                 // chamber mass flow, kg/s; 0 = sealed
    double v_stick = 1e-4;           // stiction velocity band, m/s
    double p0 = 2.37e5;              // initial absolute pressure, Pa
    double x0 = 4e-3;                // initial position, m
    double input_filter_tau = 0.05;  // first-order input lag, s; 0 disables
    int decimation = 1;              // record every n-th step

    void validate(const SensorGeometry& geom) const;
};

struct StateDerivative {
    double dx = 0.0;
    double dv = 0.0;
    double dp = 0.0;
};

double pressure_rate(const SensorState& state, const SensorGeometry& geom,
                     const GasProperties& gas, double qm);

// Every force on the piston except friction: (p - p_atm) A - m g sin(alpha) - F_ext.
double net_drive(const SensorState& state, double f_ext, const SensorModel& model);

// Coulomb + viscous friction with a Karnopp stiction band. Outside the band:
// f_cf sgn(v) + f_vf v. Inside it the piston sticks when |drive| <= f_cf
// (friction equals the drive exactly); otherwise it breaks away with
// f_cf sgn(drive) + f_vf v.
double friction_force(double v, double drive, const PistonParams& piston, double v_stick);

// Right-hand side with stop projection: at x <= 0 pushing inward, or at
// x >= stroke_max pushing outward, dx and dv are zero (and so is the
// motion-driven part of dp).
StateDerivative state_derivative(const SensorState& state, double f_ext,
                                 const SensorModel& model, const SimulationConfig& cfg);

// One classical RK4 step under a constant external force, followed by stop
// clamping (v reset to 0, p moved along p V^gamma = const to the clamped
// volume) and the stiction snap. Throws NumericInstability on a non-finite
// result.
SensorState integrate_step(const SensorState& state, double f_ext, const SensorModel& model,
                           const SimulationConfig& cfg, double dt);

// p (A x + V_dead)^gamma, the first integral of the sealed chamber.
double adiabatic_invariant(const SensorState& state, const SensorModel& model);

// Stateful stepper used by simulate() and by the synthetic calibration. The
// optional input filter is part of the integrated state so it shares the RK4
// step with the mechanics.
class Simulator {
public:
    using ForceFn = std::function<double(double)>;

    Simulator(const SensorModel& model, const SimulationConfig& cfg);
    Simulator(const SensorModel& model, const SimulationConfig& cfg, const SensorState& initial,
              double initial_force);

    void step(const ForceFn& raw_force);
    void step_constant(double force);

    const SensorState& state() const noexcept { return state_; }
    // Force currently seen by the model (filtered when the filter is on).
    double applied_force() const noexcept { return filtered_; }
    double applied_force_at(const ForceFn& raw_force) const;
    StateDerivative derivative(double force) const;
    long long steps() const noexcept { return steps_; }

private:
    SensorModel model_;
    SimulationConfig cfg_;
    SensorState state_;
    double filtered_ = 0.0;
    double t0_ = 0.0;
    long long steps_ = 0;
};

struct TrajectorySample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
    double p = 0.0;
    double f_in = 0.0;   // force entering the model, N
    double v_out = 0.0;  // transducer output for p - p_atm, V
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double dt = 0.0;
    int decimation = 1;
};

Trajectory simulate(const ForceProfile& profile, const SensorModel& model,
                    const SimulationConfig& cfg);

struct TrajectorySummary {
    TrajectorySample final_sample;
    double invariant_drift = 0.0;  // max |I(t) - I(0)| / I(0)
    double settle_time = 0.0;      // first t after which |v| < v_stick holds to the end
    bool settled = false;
};

TrajectorySummary summarize(const Trajectory& traj, const SensorModel& model,
                            const SimulationConfig& cfg);

// CSV with header t,x,v,p,F_in,V_out; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace pneumo
