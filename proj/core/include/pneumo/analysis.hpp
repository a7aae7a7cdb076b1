#pragma once

// Dataset -> error report -> uncertainty budget -> class, in one call.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pneumo/calibration.hpp"
#include "pneumo/classification.hpp"
#include "pneumo/report.hpp"

namespace pneumo {

struct AnalysisConfig {
    DeflectionMode mode = DeflectionMode::zero_referenced;
    CalibrationCase kase = CalibrationCase::B_specific_forces;
    int degree = 1;        // interpolation polynomial, case A
    int u_fit_degree = 1;  // U(F) fit
    double k = 2.0;        // coverage factor for U
    UncertaintyInputs inputs;
    // Overrides; otherwise taken from the dataset metadata, then defaults.
    std::optional<double> delta_t;
    std::optional<double> resolution;
    std::optional<double> nominal_max;  // kgf; defaults to the top level
    std::optional<std::pair<double, double>> creep;  // (i30, i300), V

    void validate() const;
};

struct AnalysisResult {
    ErrorReport report;
    UncertaintyBudget budget;
    std::optional<ClassificationResult> classification;
    std::vector<std::string> notes;
    // Reasons the budget or the classification could not be completed.
    std::vector<std::string> incomplete;

    bool complete() const { return incomplete.empty(); }
};

// Never throws for data-dependent gaps: those land in `incomplete`. Throws
// DomainError for an invalid dataset or configuration.
AnalysisResult analyze(const CalibrationDataset& ds, const AnalysisConfig& cfg);

}  // namespace pneumo
