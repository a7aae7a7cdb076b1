#pragma once

#include <array>

#include "pneumo/report.hpp"

namespace pneumo {

// Limits in percent. U is compared against the upper end of the band.
struct ClassLimits {
    double cls;
    double b;
    double b_prime;
    double f0;
    double v;
    double f_c;
    double u_max;
};

const std::array<ClassLimits, 4>& class_limits();

// Walks each class from the maximum force downward and stops at the first
// failing level. The best class whose range reaches down to half of
// nominal_max wins. Throws ClassificationError for an empty report, a report
// that stops short of nominal_max, or a missing zero error.
ClassificationResult classify(const ErrorReport& report, const UncertaintyBudget& budget,
                              CalibrationCase kase, double nominal_max);

}  // namespace pneumo
