#pragma once

// Error metrics and uncertainty components of the ISO 376 style procedure.
// Percentages are returned as percent; uncertainty components are relative
// (dimensionless). Every relative metric throws DegenerateScaleError when its
// reference reading is zero.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "pneumo/least_squares.hpp"

namespace pneumo {

// (i_f - i0) / X_N * 100, sign preserved.
double zero_error_f0(double i0, double i_f, double x_n);

// |x2 - x1| / mean(x1, x2) * 100
double repeatability_b_prime(double x1, double x2);

struct Reproducibility {
    double b = 0.0;        // (max - min) / mean * 100
    double x_bar_r = 0.0;  // mean(x1, x3, x5)
};
Reproducibility reproducibility_b(double x1, double x3, double x5);

// |x4 - x3| / x3 * 50 + |x6 - x5| / x5 * 50
double reversibility_v(double x3, double x4, double x5, double x6);

// |i300 - i30| / X_N * 100
double creep_c(double i30, double i300, double x_n);

struct InterpolationFit {
    Polynomial poly;             // X_a(F)
    std::vector<double> x_a;     // fitted value per level
    std::vector<double> f_c;     // (X_r - X_a) / X_a * 100 per level
};

// degree in {1, 2, 3}; intercept is free. FitError when points <= degree.
InterpolationFit interpolation_fit(std::span<const double> forces,
                                   std::span<const double> x_bar_r, int degree);

// Least-squares slope of deflection against force.
double sensitivity(std::span<const double> forces, std::span<const double> deflections);

struct UncertaintyInputs {
    double machine_error_rel = 0.0005;  // relative error of the calibration machine
    double k_machine = 2.0;             // its coverage factor
    double resolution_r = 1e-6;         // indicator resolution, V
    double k_temp = 0.00027;            // temperature coefficient, 1/degC
    double delta_t = 0.0;               // temperature span during calibration, degC
    bool creep_available = false;

    void validate() const;
};

// What one force level contributes to its budget row.
struct LevelUncertaintyInputs {
    double x1 = 0.0;
    double x3 = 0.0;
    double x5 = 0.0;
    std::optional<double> b_prime;    // percent
    std::optional<double> v;          // percent, used when creep is unavailable
    std::optional<double> c;          // percent, used when creep is available
    std::optional<double> max_abs_f0; // percent, largest |f0| over all series
    std::optional<double> x_a;        // interpolated deflection; absent gives w8 = 0
};

using Components = std::array<double, 8>;  // w1..w8

struct BudgetRow {
    Components w{};
    double wc = 0.0;
};

// Throws BudgetError listing every absent input the row needs.
BudgetRow uncertainty_components(const LevelUncertaintyInputs& level,
                                 const UncertaintyInputs& inputs);

double combine_wc(const Components& w);

struct ExpandedUncertainty {
    std::vector<double> u;  // k * wc per level
    Polynomial fit;         // least-squares U(F) before the shift
    double shift = 0.0;     // raise applied so the curve never sits below a measured U

    double at(double force) const { return fit(force) + shift; }
};

// fit_degree in {0, 1, 2}; k > 0. FitError with too few levels.
ExpandedUncertainty expanded_uncertainty(std::span<const double> forces,
                                         std::span<const double> wc, double k, int fit_degree);

}  // namespace pneumo
