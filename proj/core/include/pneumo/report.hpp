#pragma once

// Result records shared by the analysis pipeline, the classifier and the
// exporters.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pneumo/calibration.hpp"
#include "pneumo/metrology.hpp"

namespace pneumo {

struct LevelErrors {
    double force = 0.0;  // kgf
    double x_bar_r = 0.0;
    // X1 minus its own zero; the tabulated "mean with rotation" column of the
    // reference data equals this rather than the three-series mean.
    double x1_zero_referenced = 0.0;
    // Absent when the metric's reference reading is zero.
    std::optional<double> b;
    std::optional<double> b_prime;
    std::optional<double> v;
    std::optional<double> f_c;
};

struct ZeroError {
    std::string label;  // "X1", "X2", "X3-X4", "X5-X6"
    double i0 = 0.0;
    std::optional<double> i_f;
    double x_n = 0.0;  // max-force deflection of the increasing leg
    std::optional<double> f0;
    // Up/down pairs only: X_N taken from the decreasing leg instead.
    std::optional<double> x_n_decreasing;
    std::optional<double> f0_decreasing_xn;
};

struct ErrorReport {
    DeflectionMode mode = DeflectionMode::zero_referenced;
    std::vector<LevelErrors> levels;
    std::vector<ZeroError> zero_errors;
    std::optional<double> c;
    std::optional<InterpolationFit> fit;

    std::optional<double> max_abs_f0() const;  // absent if any f0 is missing
};

struct UncertaintyBudget {
    UncertaintyInputs inputs;
    double k = 2.0;
    int u_fit_degree = 1;
    std::vector<std::optional<BudgetRow>> rows;  // one per level
    std::optional<ExpandedUncertainty> expanded; // over the levels that have a row

    // k * wc at a level, percent.
    std::optional<double> u_percent(std::size_t level) const;
};

enum class CalibrationCase { A_interpolation, B_specific_forces };

struct LevelCheck {
    double force = 0.0;
    bool b = false;
    bool b_prime = false;
    bool v = false;
    std::optional<bool> f_c;  // case A only
    std::optional<bool> u;    // case A only

    bool pass() const { return b && b_prime && v && f_c.value_or(true) && u.value_or(true); }
};

struct ClassOutcome {
    double cls = 0.0;
    bool f0 = false;
    std::vector<LevelCheck> levels;  // ascending force
    std::optional<std::pair<double, double>> range;
    bool covers = false;  // range spans at least 50 % .. 100 % of nominal
};

struct ClassificationResult {
    CalibrationCase kase = CalibrationCase::B_specific_forces;
    double nominal_max = 0.0;
    std::optional<double> assigned_class;  // none when absent
    std::optional<std::pair<double, double>> classified_range;
    std::vector<ClassOutcome> classes;
};

}  // namespace pneumo
