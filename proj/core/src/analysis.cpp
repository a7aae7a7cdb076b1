#include "pneumo/analysis.hpp"

#include <cmath>

#include "pneumo/errors.hpp"
#include "pneumo/number_format.hpp"

namespace pneumo {

namespace {

template <class F>
auto guarded(F&& f, std::vector<std::string>& notes, const std::string& what)
    -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const DegenerateScaleError& e) {
        notes.push_back(what + ": " + e.what());
        return std::nullopt;
    }
}

ZeroError zero_error(const std::string& label, double i0, std::optional<double> i_f, double x_n,
                     std::vector<std::string>& notes) {
    ZeroError z;
    z.label = label;
    z.i0 = i0;
    z.i_f = i_f;
    z.x_n = x_n;
    if (!i_f) {
        notes.push_back("no final zero reading for " + label);
        return z;
    }
    z.f0 = guarded([&] { return zero_error_f0(i0, *i_f, x_n); }, notes, "f0 " + label);
    return z;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (degree < 1 || degree > 3) throw DomainError("degree must be 1, 2 or 3");
    if (u_fit_degree < 0 || u_fit_degree > 2) throw DomainError("u_fit_degree must be 0, 1 or 2");
    if (!(k > 0.0)) throw DomainError("k must be > 0");
    inputs.validate();
    if (delta_t && !(*delta_t >= 0.0)) throw DomainError("delta_t must be >= 0");
    if (resolution && !(*resolution >= 0.0)) throw DomainError("resolution must be >= 0");
    if (nominal_max && !(*nominal_max > 0.0)) throw DomainError("nominal_max must be > 0");
}

AnalysisResult analyze(const CalibrationDataset& ds, const AnalysisConfig& cfg) {
    ds.validate();
    cfg.validate();

    AnalysisResult res;
    auto& notes = res.notes;
    auto& rep = res.report;
    rep.mode = cfg.mode;

    const auto d = deflections(ds, cfg.mode);
    const auto zr = deflections(ds, DeflectionMode::zero_referenced);
    const std::size_t n = ds.force_levels.size();

    for (std::size_t i = 0; i < n; ++i) {
        LevelErrors lv;
        lv.force = ds.force_levels[i];
        lv.x_bar_r = (d[X1][i] + d[X3][i] + d[X5][i]) / 3.0;
        lv.x1_zero_referenced = zr[X1][i];
        const std::string at = " at " + format_shortest(lv.force) + " kgf";
        lv.b = guarded([&] { return reproducibility_b(d[X1][i], d[X3][i], d[X5][i]).b; }, notes,
                       "b" + at);
        lv.b_prime = guarded([&] { return repeatability_b_prime(d[X1][i], d[X2][i]); }, notes,
                             "b'" + at);
        lv.v = guarded([&] { return reversibility_v(d[X3][i], d[X4][i], d[X5][i], d[X6][i]); },
                       notes, "v" + at);
        rep.levels.push_back(lv);
    }

    const auto& s = ds.series;
    rep.zero_errors.push_back(zero_error("X1", s[X1].zero_lead, s[X1].zero_trail, d[X1].back(), notes));
    rep.zero_errors.push_back(zero_error("X2", s[X2].zero_lead, s[X2].zero_trail, d[X2].back(), notes));
    const auto pair = [&](const char* label, SeriesIndex up, SeriesIndex down) {
        // a missing trailing cell means the final zero is the decreasing leg's force-0 reading
        const double i_f = s[up].zero_trail.value_or(s[down].zero_lead);
        ZeroError z = zero_error(label, s[up].zero_lead, i_f, d[up].back(), notes);
        z.x_n_decreasing = d[down].back();
        z.f0_decreasing_xn = guarded([&] { return zero_error_f0(z.i0, i_f, d[down].back()); },
                                     notes, std::string("f0 ") + label);
        if (z.f0 && z.f0_decreasing_xn) {
            notes.push_back(std::string("f0 ") + label + " uses X_N of the increasing leg ("
                            + format_shortest(*z.f0) + " %); with the decreasing leg's X_N it is "
                            + format_shortest(*z.f0_decreasing_xn) + " %");
        }
        rep.zero_errors.push_back(z);
    };
    pair("X3-X4", X3, X4);
    pair("X5-X6", X5, X6);

    UncertaintyInputs inputs = cfg.inputs;
    if (cfg.delta_t) {
        inputs.delta_t = *cfg.delta_t;
    } else if (ds.temp_start_C && ds.temp_end_C) {
        inputs.delta_t = std::abs(*ds.temp_end_C - *ds.temp_start_C);
    }
    if (cfg.resolution) {
        inputs.resolution_r = *cfg.resolution;
    } else if (ds.resolution_V) {
        inputs.resolution_r = *ds.resolution_V;
    }
    if (cfg.creep) {
        rep.c = guarded([&] { return creep_c(cfg.creep->first, cfg.creep->second, d[X1].back()); },
                        notes, "creep");
        inputs.creep_available = rep.c.has_value();
    }

    std::vector<double> forces = ds.force_levels;
    std::vector<double> xbar;
    for (const auto& lv : rep.levels) xbar.push_back(lv.x_bar_r);

    if (cfg.kase == CalibrationCase::A_interpolation) {
        try {
            rep.fit = interpolation_fit(forces, xbar, cfg.degree);
            for (std::size_t i = 0; i < n; ++i) rep.levels[i].f_c = rep.fit->f_c[i];
        } catch (const FitError& e) {
            res.incomplete.push_back(std::string("interpolation fit: ") + e.what());
        } catch (const DegenerateScaleError& e) {
            res.incomplete.push_back(std::string("interpolation fit: ") + e.what());
        }
    }

    auto& budget = res.budget;
    budget.inputs = inputs;
    budget.k = cfg.k;
    budget.u_fit_degree = cfg.u_fit_degree;
    const auto f0_max = rep.max_abs_f0();
    std::vector<double> row_forces;
    std::vector<double> row_wc;
    bool budget_failed = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& lv = rep.levels[i];
        LevelUncertaintyInputs li;
        li.x1 = d[X1][i];
        li.x3 = d[X3][i];
        li.x5 = d[X5][i];
        li.b_prime = lv.b_prime;
        li.v = lv.v;
        if (rep.c) li.c = rep.c;
        li.max_abs_f0 = f0_max;
        if (rep.fit) li.x_a = rep.fit->x_a[i];
        std::optional<BudgetRow> row;
        try {
            row = uncertainty_components(li, inputs);
        } catch (const BudgetError& e) {
            if (!budget_failed) res.incomplete.push_back(e.what());
            budget_failed = true;
        } catch (const DegenerateScaleError& e) {
            notes.push_back("budget at " + format_shortest(lv.force) + " kgf: " + e.what());
        }
        if (row) {
            row_forces.push_back(lv.force);
            row_wc.push_back(row->wc);
        }
        budget.rows.push_back(row);
    }
    if (row_forces.size() > static_cast<std::size_t>(cfg.u_fit_degree) && row_forces.size() >= 2) {
        budget.expanded = expanded_uncertainty(row_forces, row_wc, cfg.k, cfg.u_fit_degree);
    } else if (!budget_failed) {
        res.incomplete.push_back("too few budget rows to fit U(F)");
    }
    if (!rep.fit) notes.push_back("no interpolation fit: w8 = 0 and f_c is not reported");

    try {
        res.classification = classify(rep, budget, cfg.kase, cfg.nominal_max.value_or(forces.back()));
    } catch (const ClassificationError& e) {
        res.incomplete.push_back(std::string("classification: ") + e.what());
    }
    return res;
}

}  // namespace pneumo
