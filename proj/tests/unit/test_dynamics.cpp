#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <pneumo/dynamics.hpp>
#include <pneumo/errors.hpp>

using namespace pneumo;

namespace {

SensorModel frictionless(double gamma) {
    auto m = default_sensor_model();
    m.piston.f_coulomb = 0.0;
    m.piston.f_viscous = 0.0;
    m.gas.gamma = gamma;
    return m;
}

}  // namespace

TEST(PressureRate, Examples) {
    const auto m = default_sensor_model();
    const double area = 3.141592653589793 * 0.01 * 0.01 / 4;
    const double vol = area * 4e-3 + 3.141592653589793 * 0.002 * 0.002 * 0.003;
    const SensorState s{4e-3, -0.01, 2.37e5, 0.0};
    const double oracle = 1.4 * 2.37e5 * area * 0.01 / vol;
    EXPECT_NEAR(pressure_rate(s, m.geometry, m.gas, 0.0), 7.4074e5, 2e-4 * 7.4074e5);
    EXPECT_NEAR(pressure_rate(s, m.geometry, m.gas, 0.0), oracle, 1e-9 * oracle);

    GasProperties iso = m.gas;
    iso.gamma = 1.0;
    EXPECT_NEAR(pressure_rate(s, m.geometry, iso, 0.0), 5.2910e5, 1e2);
    EXPECT_EQ(pressure_rate({2e-3, 0.0, 3e5, 0.0}, m.geometry, m.gas, 0.0), 0.0);
}

TEST(PressureRate, MassInflowRaisesPressure) {
    const auto m = default_sensor_model();
    EXPECT_GT(pressure_rate({2e-3, 0.0, 3e5, 0.0}, m.geometry, m.gas, 1e-6), 0.0);
}

TEST(Friction, SlidingStuckAndBreakaway) {
    const PistonParams p;
    EXPECT_DOUBLE_EQ(friction_force(0.1, 123.0, p, 1e-4), 29.0);
    EXPECT_DOUBLE_EQ(friction_force(-0.1, 123.0, p, 1e-4), -29.0);
    EXPECT_DOUBLE_EQ(friction_force(0.0, 5.0, p, 1e-4), 5.0);
    EXPECT_DOUBLE_EQ(friction_force(0.0, -10.0, p, 1e-4), -10.0);
    EXPECT_DOUBLE_EQ(friction_force(0.0, 25.0, p, 1e-4), 10.0);
    EXPECT_DOUBLE_EQ(friction_force(0.0, -25.0, p, 1e-4), -10.0);
}

TEST(Friction, ContinuousAtBandEdgeDuringBreakaway) {
    const PistonParams p;
    const double inside = friction_force(-0.999999e-4, -30.0, p, 1e-4);
    const double outside = friction_force(-1.0e-4, -30.0, p, 1e-4);
    EXPECT_NEAR(inside, outside, 1e-6);
}

TEST(StateDerivative, StaticBalanceIsAFixedPoint) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    const double f = 39.24;
    const SensorState s{2e-3, 0.0, m.gas.p_atm + f / m.geometry.area(), 0.0};
    const auto d = state_derivative(s, f, m, cfg);
    EXPECT_EQ(d.dx, 0.0);
    EXPECT_EQ(d.dv, 0.0);
    EXPECT_EQ(d.dp, 0.0);

    const auto rest = state_derivative({2e-3, 0.0, m.gas.p_atm, 0.0}, 0.0, m, cfg);
    EXPECT_EQ(rest.dx, 0.0);
    EXPECT_EQ(rest.dv, 0.0);
    EXPECT_EQ(rest.dp, 0.0);
}

TEST(StateDerivative, NewtonWithCompressiveForce) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    const SensorState s{2e-3, -0.05, 3e5, 0.0};
    const double f = 30.0;
    const auto d = state_derivative(s, f, m, cfg);
    const double drive = (3e5 - m.gas.p_atm) * m.geometry.area() - f;
    const double fr = -10.0 + 190.0 * -0.05;
    EXPECT_DOUBLE_EQ(d.dx, -0.05);
    EXPECT_NEAR(d.dv, (drive - fr) / 8e-3, 1e-9);
}

TEST(StateDerivative, GravityTermUsesInclination) {
    auto m = frictionless(1.4);
    m.piston.alpha = 3.141592653589793 / 2;
    const SimulationConfig cfg;
    const auto d = state_derivative({2e-3, 0.0, m.gas.p_atm, 0.0}, 0.0, m, cfg);
    EXPECT_NEAR(d.dv, -m.piston.g, 1e-12);
}

TEST(StateDerivative, StopsProjectMotion) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    const auto floor = state_derivative({0.0, 0.0, m.gas.p_atm, 0.0}, 200.0, m, cfg);
    EXPECT_EQ(floor.dx, 0.0);
    EXPECT_EQ(floor.dv, 0.0);
    EXPECT_EQ(floor.dp, 0.0);
    const auto ceiling = state_derivative({4e-3, 0.0, 5e5, 0.0}, 0.0, m, cfg);
    EXPECT_EQ(ceiling.dv, 0.0);
    EXPECT_EQ(ceiling.dp, 0.0);
    // leaving the stop is not blocked
    const auto leave = state_derivative({4e-3, 0.0, 2.37e5, 0.0}, 60.0, m, cfg);
    EXPECT_LT(leave.dv, 0.0);
}

TEST(IntegrateStep, RestIsAFixedPoint) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    const SensorState s{2e-3, 0.0, m.gas.p_atm, 0.25};
    const auto n = integrate_step(s, 0.0, m, cfg, 1e-5);
    EXPECT_EQ(n.x, s.x);
    EXPECT_EQ(n.v, 0.0);
    EXPECT_EQ(n.p, s.p);
    EXPECT_DOUBLE_EQ(n.t, 0.25 + 1e-5);
}

TEST(IntegrateStep, HardStopHolds) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    SensorState s{0.0, 0.0, 3e5, 0.0};
    for (int i = 0; i < 100; ++i) {
        s = integrate_step(s, 500.0, m, cfg, 1e-5);
        ASSERT_EQ(s.x, 0.0);
        ASSERT_EQ(s.v, 0.0);
    }
    EXPECT_THROW(integrate_step(s, 0.0, m, cfg, 0.0), DomainError);
}

TEST(IntegrateStep, ClampKeepsPressureOnTheAdiabat) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    // fast approach to the upper stop overshoots within one step
    SensorState s{3.999e-3, 0.5, 2.5e5, 0.0};
    const double i0 = adiabatic_invariant(s, m);
    s = integrate_step(s, 0.0, m, cfg, 1e-5);
    EXPECT_EQ(s.x, m.geometry.stroke_max());
    EXPECT_EQ(s.v, 0.0);
    EXPECT_NEAR(adiabatic_invariant(s, m), i0, 1e-8 * i0);
}

TEST(IntegrateStep, StictionConsistency) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> x(0.5e-3, 3.5e-3), v(-2e-4, 2e-4), p(1.5e5, 5e5),
        f(0.0, 45.0);
    int snapped = 0;
    for (int i = 0; i < 2000; ++i) {
        const SensorState s{x(rng), v(rng), p(rng), 0.0};
        const double force = f(rng);
        const auto n = integrate_step(s, force, m, cfg, 1e-5);
        const double drive = net_drive(n, force, m);
        if (n.v != 0.0) {
            EXPECT_TRUE(std::abs(n.v) >= cfg.v_stick || std::abs(drive) > m.piston.f_coulomb)
                << "v=" << n.v << " drive=" << drive;
        } else {
            ++snapped;
        }
    }
    EXPECT_GT(snapped, 0);
}

TEST(IntegrateStep, StuckPistonStaysStuck) {
    const auto m = default_sensor_model();
    const SimulationConfig cfg;
    const double f = 30.0;
    const double p = m.gas.p_atm + (f + 4.0) / m.geometry.area();
    SensorState s{2e-3, 0.0, p, 0.0};
    for (int i = 0; i < 1000; ++i) s = integrate_step(s, f, m, cfg, 1e-5);
    EXPECT_EQ(s.v, 0.0);
    EXPECT_EQ(s.x, 2e-3);
    EXPECT_EQ(s.p, p);
}

TEST(Simulate, ConstantZeroKeepsRestState) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = 0.2;
    const auto traj = simulate(ForceProfile::constant(0.0), m, cfg);
    for (const auto& s : traj.samples) {
        ASSERT_EQ(s.x, cfg.x0);
        ASSERT_EQ(s.v, 0.0);
        ASSERT_EQ(s.p, cfg.p0);
    }
}

TEST(Simulate, TimeGridAndDecimation) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = 0.01;
    cfg.decimation = 7;
    const auto traj = simulate(ForceProfile::step(20.0, 0.0), m, cfg);
    ASSERT_GE(traj.samples.size(), 2u);
    EXPECT_EQ(traj.samples.size(), 1000u / 7 + 1);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        EXPECT_NEAR(traj.samples[i].t - traj.samples[i - 1].t, 7e-5, 1e-15);
        EXPECT_GE(traj.samples[i].x, 0.0);
        EXPECT_LE(traj.samples[i].x, m.geometry.stroke_max());
        EXPECT_GT(traj.samples[i].p, 0.0);
    }
}

TEST(Simulate, StepConservesInvariantAndSettlesInBand) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = 3.0;
    const auto traj = simulate(ForceProfile::step(39.24, 0.5), m, cfg);
    const auto sum = summarize(traj, m, cfg);
    EXPECT_LT(sum.invariant_drift, 1e-6);
    EXPECT_TRUE(sum.settled);
    const double centre = m.gas.p_atm + 39.24 / m.geometry.area();
    const double half = m.piston.f_coulomb / m.geometry.area();
    EXPECT_LE(std::abs(sum.final_sample.p - centre), half * (1 + 1e-9));
}

TEST(Simulate, FilterLagsTheRawInput) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = 0.2;
    cfg.input_filter_tau = 0.05;
    const auto traj = simulate(ForceProfile::step(30.0, 0.05), m, cfg);
    EXPECT_EQ(traj.samples[4000].f_in, 0.0);
    // first-order lag: 1 - exp(-t/tau) one tau after the step
    const auto& at_tau = traj.samples[10000];
    // the RK4 stage that samples the jump shifts the onset by up to dt/6
    EXPECT_NEAR(at_tau.f_in, 30.0 * (1.0 - std::exp(-1.0)), 30.0 * 1e-5 / 0.05);
}

TEST(Simulate, QuasiStaticCompressionIsMonotone) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = 2.0;
    cfg.decimation = 10;
    const auto traj = simulate(ForceProfile::ramp(39.0, 0.1, 1.9), m, cfg);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        ASSERT_GE(traj.samples[i].p, traj.samples[i - 1].p * (1 - 1e-12)) << "t=" << traj.samples[i].t;
    }
}

TEST(Simulate, EnergyOfFrictionlessIsothermalOscillator) {
    const auto m = frictionless(1.0);
    SimulationConfig cfg;
    cfg.dt = 1e-5;
    cfg.input_filter_tau = 0.0;
    const double f = 20.0;
    const SensorState start{2e-3, 0.0, 3.3e5, 0.0};
    Simulator sim(m, cfg, start, f);

    const double area = m.geometry.area();
    const double c = start.p * (area * start.x + m.geometry.v_dead());
    const auto energy = [&](const SensorState& s) {
        const double vol = area * s.x + m.geometry.v_dead();
        return 0.5 * m.piston.mass * s.v * s.v - c * std::log(vol) + m.gas.p_atm * area * s.x + f * s.x;
    };
    const double e0 = energy(start);
    double kinetic_max = 0.0;
    double drift = 0.0;
    // period is about 5 ms; run ten of them
    for (int i = 0; i < 5200; ++i) {
        sim.step_constant(f);
        const auto& s = sim.state();
        ASSERT_GT(s.x, 0.0);
        ASSERT_LT(s.x, m.geometry.stroke_max());
        kinetic_max = std::max(kinetic_max, 0.5 * m.piston.mass * s.v * s.v);
        drift = std::max(drift, std::abs(energy(s) - e0));
    }
    EXPECT_GT(kinetic_max, 0.0);
    EXPECT_LT(drift, 1e-3 * kinetic_max);
}

TEST(Simulate, RK4OrderOnNonStiffOscillator) {
    const auto m = frictionless(1.4);
    const auto run = [&](double dt) {
        SimulationConfig cfg;
        cfg.dt = dt;
        cfg.input_filter_tau = 0.0;
        Simulator sim(m, cfg, {2e-3, 0.0, 3.3e5, 0.0}, 20.0);
        const auto n = std::llround(4e-3 / dt);
        for (long long i = 0; i < n; ++i) sim.step_constant(20.0);
        return sim.state();
    };
    const auto a = run(4e-5), b = run(2e-5), c = run(1e-5);
    const double e1 = std::abs(a.x - b.x), e2 = std::abs(b.x - c.x);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(Simulate, BlowUpReportsNumericInstability) {
    auto m = frictionless(1.4);
    SimulationConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    cfg.input_filter_tau = 0.0;
    EXPECT_THROW(simulate(ForceProfile::constant(39.0), m, cfg), NumericInstability);
}

TEST(Simulate, ConfigValidation) {
    const auto m = default_sensor_model();
    SimulationConfig cfg;
    cfg.dt = -1;
    try {
        simulate(ForceProfile::constant(0.0), m, cfg);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "dt must be > 0");
    }
    cfg = SimulationConfig{};
    cfg.x0 = 5e-3;
    EXPECT_THROW(simulate(ForceProfile::constant(0.0), m, cfg), DomainError);
}

TEST(TrajectoryCsv, HeaderAndPrecision) {
    Trajectory t;
    t.samples.push_back({0.1, 1.0 / 3.0, 0.0, 2.37e5, 0.0, 1.4213});
    std::ostringstream os;
    write_trajectory_csv(os, t);
    EXPECT_EQ(os.str(), "t,x,v,p,F_in,V_out\n0.10000000000000001,0.33333333333333331,0,237000,0,1.4213\n");
}

TEST(ForceProfileText, ParsesEveryKind) {
    EXPECT_EQ(ForceProfile::parse("constant:5").at(3.0), 5.0);
    const auto step = ForceProfile::parse("step:39.24@1.0");
    EXPECT_EQ(step.at(0.999), 0.0);
    EXPECT_EQ(step.at(1.0), 39.24);
    const auto ramp = ForceProfile::parse("ramp:10@1:3");
    EXPECT_DOUBLE_EQ(ramp.at(2.0), 5.0);
    EXPECT_EQ(ramp.at(4.0), 10.0);
    const auto stairs = ForceProfile::parse("staircase:1@0.5,2@1.5");
    EXPECT_EQ(stairs.at(0.2), 0.0);
    EXPECT_EQ(stairs.at(1.0), 1.0);
    EXPECT_EQ(stairs.at(2.0), 2.0);
    const auto table = ForceProfile::parse("table:0/0,1/10,2/0");
    EXPECT_DOUBLE_EQ(table.at(0.5), 5.0);
    EXPECT_DOUBLE_EQ(table.at(1.5), 5.0);
}

TEST(ForceProfileText, RejectsMalformed) {
    EXPECT_THROW(ForceProfile::parse("pulse:3"), DomainError);
    EXPECT_THROW(ForceProfile::parse("step:3"), DomainError);
    EXPECT_THROW(ForceProfile::parse("constant:abc"), DomainError);
    EXPECT_THROW(ForceProfile::parse("staircase:1@2,2@1"), DomainError);
    EXPECT_THROW(ForceProfile::parse("staircase:-1@1"), DomainError);
    EXPECT_THROW(ForceProfile::parse("table:1/1,1/2"), DomainError);
    EXPECT_THROW(ForceProfile::parse("ramp:1@2:1"), DomainError);
}
