#pragma once

// Physical types of the sealed-chamber pneumatic force sensor and the pure
// conversions between pressure, force, chamber volume and transducer output.
// Everything here is SI: Pa, N, m, kg, s, K. Pressures named p_gauge/p_diff
// are relative to atmosphere; SensorState::p is absolute.

#include <numbers>

namespace pneumo {

inline constexpr double kStandardGravity = 9.80665;  // m/s^2, exact

// Thermodynamic constants of the encapsulated air.
struct GasProperties {
    double gamma = 1.4;      // polytropic exponent; 1 isothermal, 1.4 adiabatic
    double R = 287.0;        // specific gas constant, J/(kg K)
    double T0 = 293.15;      // reference temperature, K
    double p_atm = 1.013e5;  // atmospheric pressure, Pa

    void validate() const;
};

class SensorGeometry {
public:
    double d_piston() const noexcept { return d_piston_; }
    double area() const noexcept { return area_; }
    double stroke_max() const noexcept { return stroke_max_; }
    double d_dead() const noexcept { return d_dead_; }
    double l_dead() const noexcept { return l_dead_; }
    double v_dead() const noexcept { return v_dead_; }

    friend SensorGeometry make_geometry(double d_piston, double stroke_max,
                                        double d_dead, double l_dead);

private:
    SensorGeometry() = default;

    double d_piston_ = 0.0;
    double area_ = 0.0;
    double stroke_max_ = 0.0;
    double d_dead_ = 0.0;
    double l_dead_ = 0.0;
    double v_dead_ = 0.0;
};

// Builds a geometry and derives the piston area pi d^2/4 and the dead volume
// pi (d_dead/2)^2 l_dead. Throws DomainError naming the first non-positive
// dimension.
SensorGeometry make_geometry(double d_piston, double stroke_max, double d_dead, double l_dead);

struct PistonParams {
    double mass = 8e-3;        // kg
    double f_viscous = 190.0;  // N s/m
    double f_coulomb = 10.0;   // N
    double alpha = 0.0;        // inclination, rad, in [-pi/2, pi/2]
    double g = kStandardGravity;

    void validate() const;
};

struct SensorState {
    double x = 0.0;  // piston position == chamber length, m
    double v = 0.0;  // m/s, positive extends the chamber
    double p = 0.0;  // absolute chamber pressure, Pa
    double t = 0.0;  // s
};

// Linear ratiometric pressure transducer (MPX5500-class defaults).
struct TransducerParams {
    double v_offset = 0.2;        // V at zero differential pressure
    double sensitivity = 9.0e-6;  // V/Pa
    double p_max = 5.0e5;         // Pa, differential full scale
    double v_full_scale = 4.7;    // V

    void validate() const;
};

struct TransducerReading {
    double volts = 0.0;
    bool saturated = false;
};

// The full parameter set of one sensor. default_sensor_model() carries the
// reference parametrization (10 mm piston, 4 mm stroke, 4x3 mm dead bore).
struct SensorModel {
    GasProperties gas;
    SensorGeometry geometry;
    PistonParams piston;
    TransducerParams transducer;

    void validate() const;
};

SensorModel default_sensor_model();

// A*x + V_dead. Throws DomainError when x is outside [0, stroke_max].
double chamber_volume(const SensorGeometry& geom, double x);

// F = p_gauge * A. Negative gauge pressure gives a negative force.
double pressure_to_force(double p_gauge, const SensorGeometry& geom);

// Clamps to [v_offset, v_full_scale] and flags saturation instead of failing,
// so overload tests can drive the sensor past full scale.
TransducerReading transducer_voltage(double p_diff, const TransducerParams& t);

// Inverse of the linear law. Throws RangeError outside [v_offset, v_full_scale].
double voltage_to_pressure(double volts, const TransducerParams& t);

double kgf_to_newton(double kgf, double g = kStandardGravity);
double newton_to_kgf(double newton, double g = kStandardGravity);

}  // namespace pneumo
