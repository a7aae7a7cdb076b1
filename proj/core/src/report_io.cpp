#include "pneumo/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pneumo/number_format.hpp"

namespace pneumo {

namespace {

using Json = nlohmann::ordered_json;

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

Json coeffs(const Polynomial& p) {
    Json a = Json::array();
    for (double c : p.coeffs) a.push_back(c);
    return a;
}

const char* mode_name(DeflectionMode m) {
    return m == DeflectionMode::raw ? "raw" : "zero_referenced";
}

const char* case_name(CalibrationCase c) {
    return c == CalibrationCase::A_interpolation ? "A" : "B";
}

Json range_json(const std::optional<std::pair<double, double>>& r) {
    if (!r) return nullptr;
    return Json::array({r->first, r->second});
}

// nlohmann prints the shortest representation; the report wants %.17g.
void emit(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << inner << Json(it.key()).dump() << ": ";
                emit(os, it.value(), indent + 1);
            }
            os << '\n' << pad << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (flat) {
                os << '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    emit(os, j[i], indent + 1);
                }
                os << ']';
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << inner;
                emit(os, j[i], indent + 1);
            }
            os << '\n' << pad << ']';
            return;
        }
        case Json::value_t::number_float:
            os << format_g17(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

Json build(const AnalysisResult& r) {
    const auto& rep = r.report;
    Json doc;
    doc["mode"] = mode_name(rep.mode);

    Json levels = Json::array();
    for (const auto& lv : rep.levels) {
        levels.push_back({{"force_kgf", lv.force},
                          {"x_bar_r", lv.x_bar_r},
                          {"x1_zero_referenced", lv.x1_zero_referenced},
                          {"b", opt(lv.b)},
                          {"b_prime", opt(lv.b_prime)},
                          {"v", opt(lv.v)},
                          {"f_c", opt(lv.f_c)}});
    }
    Json zeros = Json::array();
    for (const auto& z : rep.zero_errors) {
        Json e{{"series", z.label}, {"i0", z.i0}, {"i_f", opt(z.i_f)}, {"x_n", z.x_n}, {"f0", opt(z.f0)}};
        if (z.x_n_decreasing) {
            e["x_n_decreasing"] = *z.x_n_decreasing;
            e["f0_decreasing_xn"] = opt(z.f0_decreasing_xn);
        }
        zeros.push_back(e);
    }
    Json fit = nullptr;
    if (rep.fit) fit = {{"degree", rep.fit->poly.degree()}, {"coefficients", coeffs(rep.fit->poly)}};
    doc["error_report"] = {{"levels", levels}, {"zero_errors", zeros}, {"c", opt(rep.c)},
                           {"interpolation", fit}};

    const auto& b = r.budget;
    Json rows = Json::array();
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
        const double force = rep.levels[i].force;
        if (!b.rows[i]) {
            rows.push_back({{"force_kgf", force}, {"w", nullptr}, {"wc", nullptr}, {"U", nullptr}});
            continue;
        }
        Json w = Json::array();
        for (double wi : b.rows[i]->w) w.push_back(wi);
        rows.push_back({{"force_kgf", force},
                        {"w", w},
                        {"wc", b.rows[i]->wc},
                        {"U", b.k * b.rows[i]->wc},
                        {"U_fitted", b.expanded ? Json(b.expanded->at(force)) : Json(nullptr)}});
    }
    Json ufit = nullptr;
    if (b.expanded) {
        ufit = {{"degree", b.expanded->fit.degree()},
                {"coefficients", coeffs(b.expanded->fit)},
                {"shift", b.expanded->shift}};
    }
    doc["uncertainty_budget"] = {
        {"inputs",
         {{"machine_error_rel", b.inputs.machine_error_rel},
          {"k_machine", b.inputs.k_machine},
          {"resolution_r", b.inputs.resolution_r},
          {"k_temp", b.inputs.k_temp},
          {"delta_t", b.inputs.delta_t},
          {"creep_available", b.inputs.creep_available}}},
        {"k", b.k},
        {"rows", rows},
        {"u_fit", ufit}};

    Json cls = nullptr;
    if (r.classification) {
        const auto& c = *r.classification;
        Json classes = Json::array();
        for (const auto& o : c.classes) {
            Json lv = Json::array();
            for (const auto& l : o.levels) {
                lv.push_back({{"force_kgf", l.force}, {"b", l.b}, {"b_prime", l.b_prime}, {"v", l.v},
                              {"f_c", opt(l.f_c)}, {"U", opt(l.u)}, {"pass", l.pass()}});
            }
            classes.push_back({{"class", o.cls}, {"f0_pass", o.f0}, {"range_kgf", range_json(o.range)},
                               {"covers_half_range", o.covers}, {"levels", lv}});
        }
        Json assigned = c.assigned_class ? Json(*c.assigned_class) : Json("none");
        cls = {{"case", case_name(c.kase)},
               {"nominal_max_kgf", c.nominal_max},
               {"assigned_class", assigned},
               {"classified_range_kgf", range_json(c.classified_range)},
               {"classes", classes}};
    }
    doc["classification"] = cls;
    doc["notes"] = r.notes;
    doc["incomplete"] = r.incomplete;
    return doc;
}

std::string cell(const std::optional<double>& v) { return v ? format_g17(*v) : std::string(); }

std::string fixed(const std::optional<double>& v, int width, int prec) {
    char buf[64];
    if (!v) {
        std::snprintf(buf, sizeof buf, "%*s", width, "-");
    } else {
        std::snprintf(buf, sizeof buf, "%*.*f", width, prec, *v);
    }
    return buf;
}

}  // namespace

std::string class_label(const std::optional<double>& cls) {
    return cls ? format_shortest(*cls) : "none";
}

std::string report_json(const AnalysisResult& result) {
    std::ostringstream os;
    emit(os, build(result), 0);
    os << '\n';
    return os.str();
}

void write_report_csv(std::ostream& os, const AnalysisResult& r) {
    os << "force_kgf,x_bar_r,b,b_prime,v,f_c,w1,w2,w3,w4,w5,w6,w7,w8,wc,U\n";
    for (std::size_t i = 0; i < r.report.levels.size(); ++i) {
        const auto& lv = r.report.levels[i];
        os << format_g17(lv.force) << ',' << format_g17(lv.x_bar_r) << ',' << cell(lv.b) << ','
           << cell(lv.b_prime) << ',' << cell(lv.v) << ',' << cell(lv.f_c);
        const auto& row = i < r.budget.rows.size() ? r.budget.rows[i] : std::nullopt;
        for (std::size_t k = 0; k < 8; ++k) {
            os << ',' << (row ? format_g17(row->w[k]) : std::string());
        }
        os << ',' << (row ? format_g17(row->wc) : std::string()) << ','
           << (row ? format_g17(r.budget.k * row->wc) : std::string()) << '\n';
    }
}

std::string report_summary(const AnalysisResult& r) {
    std::ostringstream os;
    const auto& rep = r.report;
    os << "deflections: " << mode_name(rep.mode) << "\n\n";
    os << "  F [kgf]      X_r        b [%]     b' [%]     v [%]     f_c [%]    U [%]\n";
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& lv = rep.levels[i];
        os << fixed(lv.force, 7, 3) << fixed(lv.x_bar_r, 12, 6) << fixed(lv.b, 11, 6)
           << fixed(lv.b_prime, 11, 6) << fixed(lv.v, 11, 6) << fixed(lv.f_c, 11, 6)
           << fixed(r.budget.u_percent(i), 10, 5) << '\n';
    }
    os << '\n';
    for (const auto& z : rep.zero_errors) {
        os << "  f0 " << z.label << ": " << (z.f0 ? format_shortest(*z.f0) + " %" : std::string("n/a"))
           << '\n';
    }
    if (r.classification) {
        const auto& c = *r.classification;
        os << "\ncase " << case_name(c.kase) << ", class " << class_label(c.assigned_class);
        if (c.classified_range) {
            os << " over " << format_shortest(c.classified_range->first) << " .. "
               << format_shortest(c.classified_range->second) << " kgf";
        }
        os << '\n';
    }
    for (const auto& why : r.incomplete) os << "incomplete: " << why << '\n';
    return os.str();
}

}  // namespace pneumo
