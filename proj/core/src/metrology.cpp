#include "pneumo/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pneumo/errors.hpp"

namespace pneumo {

namespace {

void nonzero(double denom, const char* what) {
    if (denom == 0.0 || !std::isfinite(denom)) {
        throw DegenerateScaleError(std::string(what) + " is zero; relative error undefined");
    }
}

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

}  // namespace

double zero_error_f0(double i0, double i_f, double x_n) {
    nonzero(x_n, "X_N");
    return (i_f - i0) / x_n * 100.0;
}

double repeatability_b_prime(double x1, double x2) {
    const double mean = (x1 + x2) / 2.0;
    nonzero(mean, "mean of X1 and X2");
    return 100.0 * std::abs(x2 - x1) / mean;
}

Reproducibility reproducibility_b(double x1, double x3, double x5) {
    Reproducibility r;
    r.x_bar_r = (x1 + x3 + x5) / 3.0;
    nonzero(r.x_bar_r, "mean rotated deflection");
    const auto [lo, hi] = std::minmax({x1, x3, x5});
    r.b = 100.0 * (hi - lo) / r.x_bar_r;
    return r;
}

double reversibility_v(double x3, double x4, double x5, double x6) {
    nonzero(x3, "X3");
    nonzero(x5, "X5");
    return std::abs(x4 - x3) / x3 * 50.0 + std::abs(x6 - x5) / x5 * 50.0;
}

double creep_c(double i30, double i300, double x_n) {
    nonzero(x_n, "X_N");
    return std::abs(i300 - i30) / x_n * 100.0;
}

InterpolationFit interpolation_fit(std::span<const double> forces,
                                   std::span<const double> x_bar_r, int degree) {
    if (degree < 1 || degree > 3) throw DomainError("interpolation degree must be 1, 2 or 3");
    if (forces.size() <= static_cast<std::size_t>(degree)) {
        throw FitError("degree " + std::to_string(degree) + " interpolation needs more than "
                       + std::to_string(degree) + " levels");
    }
    InterpolationFit fit;
    fit.poly = fit_polynomial(forces, x_bar_r, degree);
    for (std::size_t i = 0; i < forces.size(); ++i) {
        const double xa = fit.poly(forces[i]);
        fit.x_a.push_back(xa);
        nonzero(xa, "interpolated deflection");
        fit.f_c.push_back((x_bar_r[i] - xa) / xa * 100.0);
    }
    return fit;
}

double sensitivity(std::span<const double> forces, std::span<const double> deflections) {
    if (forces.size() < 2 || forces.size() != deflections.size()) {
        throw DomainError("sensitivity needs at least 2 matching points");
    }
    try {
        return fit_polynomial(forces, deflections, 1).coeffs[1];
    } catch (const FitError&) {
        throw DomainError("sensitivity needs at least 2 distinct forces");
    }
}

void UncertaintyInputs::validate() const {
    if (!(machine_error_rel >= 0.0)) throw DomainError("machine_error_rel must be >= 0");
    if (!(k_machine > 0.0)) throw DomainError("k_machine must be > 0");
    if (!(resolution_r >= 0.0)) throw DomainError("resolution_r must be >= 0");
    if (!(k_temp >= 0.0)) throw DomainError("k_temp must be >= 0");
    if (!(delta_t >= 0.0)) throw DomainError("delta_t must be >= 0");
}

BudgetRow uncertainty_components(const LevelUncertaintyInputs& level,
                                 const UncertaintyInputs& inputs) {
    inputs.validate();
    std::string missing;
    const auto need = [&missing](bool present, const char* name) {
        if (present) return;
        if (!missing.empty()) missing += ", ";
        missing += name;
    };
    need(level.b_prime.has_value(), "b_prime");
    need(level.max_abs_f0.has_value(), "f0");
    if (inputs.creep_available) {
        need(level.c.has_value(), "c");
    } else {
        need(level.v.has_value(), "v");
    }
    if (!missing.empty()) throw BudgetError("uncertainty budget missing: " + missing);

    const double x_bar = (level.x1 + level.x3 + level.x5) / 3.0;
    nonzero(x_bar, "mean rotated deflection");
    const double abs_x = std::abs(x_bar);

    BudgetRow row;
    auto& w = row.w;
    w[0] = inputs.machine_error_rel / inputs.k_machine;
    double ss = 0.0;
    for (double xi : {level.x1, level.x3, level.x5}) ss += (xi - x_bar) * (xi - x_bar);
    w[1] = std::sqrt(ss / 6.0) / abs_x;
    w[2] = *level.b_prime / (100.0 * kSqrt3);
    w[3] = inputs.resolution_r / abs_x / kSqrt6;
    w[4] = inputs.creep_available ? *level.c / (100.0 * kSqrt3) : (*level.v / 100.0) / 3.0;
    w[5] = std::abs(*level.max_abs_f0) / 100.0;
    w[6] = inputs.k_temp * inputs.delta_t / 2.0 / kSqrt3;
    w[7] = level.x_a ? std::abs(x_bar - *level.x_a) / abs_x : 0.0;
    row.wc = combine_wc(w);
    return row;
}

double combine_wc(const Components& w) {
    double ss = 0.0;
    for (double wi : w) ss += wi * wi;
    return std::sqrt(ss);
}

ExpandedUncertainty expanded_uncertainty(std::span<const double> forces,
                                         std::span<const double> wc, double k, int fit_degree) {
    if (!(k > 0.0)) throw DomainError("coverage factor k must be > 0");
    if (fit_degree < 0 || fit_degree > 2) throw DomainError("U fit degree must be 0, 1 or 2");
    if (forces.size() != wc.size()) throw DomainError("forces and wc must have the same length");
    if (forces.size() < 2) throw FitError("expanded uncertainty fit needs at least 2 levels");

    ExpandedUncertainty out;
    for (double w : wc) out.u.push_back(k * w);
    out.fit = fit_polynomial(forces, out.u, fit_degree);
    for (std::size_t i = 0; i < forces.size(); ++i) {
        out.shift = std::max(out.shift, out.u[i] - out.fit(forces[i]));
    }
    return out;
}

}  // namespace pneumo
