#pragma once

// Closed-form sizing relations. Pressures are gauge (relative to atmosphere)
// for the force/diameter triangle and absolute for the gas laws.

namespace pneumo {

// F = p * pi * (d/2)^2 rearranged three ways. All throw DomainError on
// non-positive inputs (pressure and force may be zero where noted).
double solve_diameter(double f_max, double p_max_gauge);
double solve_force(double p_gauge, double d);
double solve_pressure(double force, double d);

// p1 v1 = p2 v2
double boyle(double p1, double v1, double v2);
// v2 = v1 t2 / t1 (constant pressure)
double charles(double v1, double t1, double t2);
// p2 = p1 t2 / t1 (constant volume)
double amonton(double p1, double t1, double t2);

}  // namespace pneumo
