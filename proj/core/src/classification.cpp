#include "pneumo/classification.hpp"

#include <cmath>

#include "pneumo/errors.hpp"

namespace pneumo {

namespace {

bool within(const std::optional<double>& value, double limit) {
    return value && std::abs(*value) <= limit;
}

}  // namespace

const std::array<ClassLimits, 4>& class_limits() {
    static const std::array<ClassLimits, 4> limits{{
        {0.0, 0.05, 0.03, 0.0025, 0.07, 0.025, 0.06},
        {0.5, 0.10, 0.05, 0.05, 0.15, 0.05, 0.12},
        {1.0, 0.20, 0.10, 0.10, 0.30, 0.10, 0.24},
        {2.0, 0.40, 0.20, 0.20, 0.50, 0.20, 0.45},
    }};
    return limits;
}

std::optional<double> ErrorReport::max_abs_f0() const {
    if (zero_errors.empty()) return std::nullopt;
    double m = 0.0;
    for (const auto& z : zero_errors) {
        if (!z.f0) return std::nullopt;
        m = std::max(m, std::abs(*z.f0));
    }
    return m;
}

std::optional<double> UncertaintyBudget::u_percent(std::size_t level) const {
    if (level >= rows.size() || !rows[level]) return std::nullopt;
    return 100.0 * k * rows[level]->wc;
}

ClassificationResult classify(const ErrorReport& report, const UncertaintyBudget& budget,
                              CalibrationCase kase, double nominal_max) {
    if (report.levels.empty()) throw ClassificationError("cannot classify an empty report");
    if (!(nominal_max > 0.0)) throw ClassificationError("nominal range must be > 0");
    const double top = report.levels.back().force;
    if (top < nominal_max * (1.0 - 1e-9)) {
        throw ClassificationError("report stops at " + std::to_string(top)
                                  + " kgf, short of the nominal range");
    }
    for (const auto& z : report.zero_errors) {
        if (!z.f0) throw ClassificationError("zero error for " + z.label + " is not available");
    }
    if (report.zero_errors.empty()) throw ClassificationError("no zero errors in report");

    const bool case_a = kase == CalibrationCase::A_interpolation;
    ClassificationResult result;
    result.kase = kase;
    result.nominal_max = nominal_max;

    for (const auto& lim : class_limits()) {
        ClassOutcome out;
        out.cls = lim.cls;
        out.f0 = true;
        for (const auto& z : report.zero_errors) out.f0 = out.f0 && std::abs(*z.f0) <= lim.f0;

        for (std::size_t i = 0; i < report.levels.size(); ++i) {
            const auto& lv = report.levels[i];
            LevelCheck chk;
            chk.force = lv.force;
            chk.b = within(lv.b, lim.b);
            chk.b_prime = within(lv.b_prime, lim.b_prime);
            chk.v = within(lv.v, lim.v);
            if (case_a) {
                chk.f_c = within(lv.f_c, lim.f_c);
                const auto u = budget.u_percent(i);
                chk.u = u && *u <= lim.u_max;
            }
            out.levels.push_back(chk);
        }

        if (out.f0) {
            std::size_t lowest = out.levels.size();
            while (lowest > 0 && out.levels[lowest - 1].pass()) --lowest;
            if (lowest < out.levels.size()) {
                out.range = std::make_pair(out.levels[lowest].force, top);
                out.covers = out.levels[lowest].force <= 0.5 * nominal_max * (1.0 + 1e-12);
            }
        }
        if (out.covers && !result.assigned_class) {
            result.assigned_class = lim.cls;
            result.classified_range = out.range;
        }
        result.classes.push_back(std::move(out));
    }
    return result;
}

}  // namespace pneumo
