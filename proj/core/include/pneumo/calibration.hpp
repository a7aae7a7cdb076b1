#pragma once

// Load schedules, calibration datasets in the six-series layout, the
// simulator-driven synthetic calibration and deflection extraction.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pneumo/core_model.hpp"
#include "pneumo/dynamics.hpp"

namespace pneumo {

enum class Direction { increasing, decreasing };
enum class LegPlan { increasing, increasing_then_decreasing };

struct SeriesPlan {
    int orientation_deg = 0;  // 0, 360 or 180
    LegPlan legs = LegPlan::increasing;

    bool operator==(const SeriesPlan&) const = default;
};

struct LoadSchedule {
    double f_max = 0.0;         // kgf
    std::vector<double> steps;  // kgf, ascending, last == f_max
    int preloads = 3;
    double preload_hold = 60.0;  // s, documented only
    double preload_gap = 180.0;  // s, documented only
    std::vector<SeriesPlan> series_plan;

    void validate() const;  // throws ScheduleError
};

inline constexpr int kMinForceLevels = 8;

// Uniform levels f_max/n * {1..n} and the standard four-entry plan:
// 0 deg up, 0 deg up, 360 deg up/down, 180 deg up/down.
LoadSchedule build_schedule(double f_max, int n_steps);

// Series slots in file order.
enum SeriesIndex : std::size_t { X1 = 0, X2, X3, X4, X5, X6 };
inline constexpr std::size_t kSeriesCount = 6;

struct SeriesLayout {
    const char* id;      // "X1" ...
    const char* column;  // "X1_0" ...
    int orientation_deg;
    Direction direction;
};

const std::array<SeriesLayout, kSeriesCount>& series_layout();

struct Series {
    // Reading in the leading force-0 row. For a decreasing leg this is the
    // zero taken when the force returns to 0 at the end of the cycle.
    double zero_lead = 0.0;
    // Reading in the trailing force-0 row, when one was taken.
    std::optional<double> zero_trail;
    std::vector<double> readings;  // V, one per force level

    bool operator==(const Series&) const = default;
};

struct CalibrationDataset {
    std::optional<double> zero_indication;  // V, before any loading
    std::optional<double> temp_start_C;
    std::optional<double> temp_end_C;
    std::optional<double> resolution_V;
    std::vector<double> force_levels;  // kgf, nonzero, ascending
    std::array<Series, kSeriesCount> series;

    const Series& operator[](SeriesIndex i) const { return series[i]; }
    void validate() const;  // throws DomainError

    bool operator==(const CalibrationDataset&) const = default;
};

struct SynthesisConfig {
    SensorModel model = default_sensor_model();
    SimulationConfig sim;            // dt, v_stick, p0, x0, qm; the input filter is not used
    double ramp_time = 0.1;          // s, smooth transition between levels
    double settle_window = 0.01;     // s with |v| < v_stick
    double settle_dp_tol = 1e-5;     // Pa/s
    double settle_timeout = 30.0;    // s per level before giving up
    double noise_sigma = 0.0;        // V, additive Gaussian on every reading
    std::uint64_t seed = 0;

    void validate() const;
};

// Simulates every series from the rest state (p0, x0): preloads at f_max,
// the zero reading, then each level reached by a smooth ramp and held until
// settled. The 180 deg orientation reverses the gravity term. Throws
// NumericInstability naming the series and level on failure.
CalibrationDataset run_synthetic_calibration(const LoadSchedule& schedule,
                                             const SynthesisConfig& cfg);

enum class DeflectionMode { raw, zero_referenced };

// Per-series readings, either unchanged or minus the series' own leading
// zero cell.
std::array<std::vector<double>, kSeriesCount> deflections(const CalibrationDataset& ds,
                                                         DeflectionMode mode);

}  // namespace pneumo
