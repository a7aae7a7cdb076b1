#include "pneumo/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pneumo/errors.hpp"

namespace pneumo {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be > 0 (got " + std::to_string(value) + ")");
    }
}

}  // namespace

void GasProperties::validate() const {
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
        throw DomainError("gamma must be >= 1 (got " + std::to_string(gamma) + ")");
    }
    require_positive(R, "R");
    require_positive(T0, "T0");
    require_positive(p_atm, "p_atm");
}

SensorGeometry make_geometry(double d_piston, double stroke_max, double d_dead, double l_dead) {
    require_positive(d_piston, "d_piston");
    require_positive(stroke_max, "stroke_max");
    require_positive(d_dead, "d_dead");
    require_positive(l_dead, "l_dead");

    SensorGeometry g;
    g.d_piston_ = d_piston;
    g.stroke_max_ = stroke_max;
    g.d_dead_ = d_dead;
    g.l_dead_ = l_dead;
    g.area_ = std::numbers::pi * d_piston * d_piston / 4.0;
    const double r = d_dead / 2.0;
    g.v_dead_ = std::numbers::pi * r * r * l_dead;
    return g;
}

void PistonParams::validate() const {
    require_positive(mass, "mass");
    if (!(f_viscous >= 0.0)) throw DomainError("f_viscous must be >= 0");
    if (!(f_coulomb >= 0.0)) throw DomainError("f_coulomb must be >= 0");
    if (!(std::abs(alpha) <= std::numbers::pi / 2.0)) {
        throw DomainError("alpha must lie in [-pi/2, pi/2] rad (got " + std::to_string(alpha) + ")");
    }
    require_positive(g, "g");
}

void TransducerParams::validate() const {
    require_positive(sensitivity, "sensitivity");
    require_positive(p_max, "p_max");
    if (!std::isfinite(v_offset)) throw DomainError("v_offset must be finite");
    const double mismatch = v_offset + sensitivity * p_max - v_full_scale;
    if (!(std::abs(mismatch) <= 1e-9)) {
        throw DomainError("transducer law inconsistent: v_offset + sensitivity*p_max != v_full_scale");
    }
}

void SensorModel::validate() const {
    gas.validate();
    piston.validate();
    transducer.validate();
    if (geometry.area() <= 0.0) throw DomainError("geometry not initialised");
}

SensorModel default_sensor_model() {
    return SensorModel{
        GasProperties{},
        make_geometry(10e-3, 4e-3, 4e-3, 3e-3),
        PistonParams{},
        TransducerParams{},
    };
}

double chamber_volume(const SensorGeometry& geom, double x) {
    if (!(x >= 0.0 && x <= geom.stroke_max())) {
        throw DomainError("position x=" + std::to_string(x) + " m outside [0, stroke_max]");
    }
    return geom.area() * x + geom.v_dead();
}

double pressure_to_force(double p_gauge, const SensorGeometry& geom) {
    return p_gauge * geom.area();
}

TransducerReading transducer_voltage(double p_diff, const TransducerParams& t) {
    const double raw = t.v_offset + t.sensitivity * p_diff;
    TransducerReading r;
    r.volts = std::clamp(raw, t.v_offset, t.v_full_scale);
    r.saturated = p_diff < 0.0 || p_diff > t.p_max;
    return r;
}

double voltage_to_pressure(double volts, const TransducerParams& t) {
    if (!(volts >= t.v_offset && volts <= t.v_full_scale)) {
        throw RangeError("voltage " + std::to_string(volts) + " V outside transducer span ["
                             + std::to_string(t.v_offset) + ", " + std::to_string(t.v_full_scale) + "] V",
                         volts);
    }
    return (volts - t.v_offset) / t.sensitivity;
}

double kgf_to_newton(double kgf, double g) { return kgf * g; }

double newton_to_kgf(double newton, double g) { return newton / g; }

}  // namespace pneumo
