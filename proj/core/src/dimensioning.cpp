#include "pneumo/dimensioning.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pneumo/errors.hpp"

namespace pneumo {

namespace {

void positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be > 0");
    }
}

}  // namespace

double solve_diameter(double f_max, double p_max_gauge) {
    positive(f_max, "force");
    positive(p_max_gauge, "pressure");
    return 2.0 * std::sqrt(f_max / (std::numbers::pi * p_max_gauge));
}

double solve_force(double p_gauge, double d) {
    positive(d, "diameter");
    const double r = d / 2.0;
    return p_gauge * std::numbers::pi * r * r;
}

double solve_pressure(double force, double d) {
    positive(d, "diameter");
    const double r = d / 2.0;
    return force / (std::numbers::pi * r * r);
}

double boyle(double p1, double v1, double v2) {
    positive(p1, "p1");
    positive(v1, "v1");
    positive(v2, "v2");
    return p1 * v1 / v2;
}

double charles(double v1, double t1, double t2) {
    positive(v1, "v1");
    positive(t1, "t1");
    positive(t2, "t2");
    return v1 * t2 / t1;
}

double amonton(double p1, double t1, double t2) {
    positive(p1, "p1");
    positive(t1, "t1");
    positive(t2, "t2");
    return p1 * t2 / t1;
}

}  // namespace pneumo
