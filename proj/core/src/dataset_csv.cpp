#include "pneumo/dataset_csv.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <vector>

#include "pneumo/errors.hpp"
#include "pneumo/number_format.hpp"

namespace pneumo {

namespace {

constexpr const char* kForceColumn = "force_kgf";

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++number;
        if (!line.empty()) lines.push_back({number, line});
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double number_at(std::string_view cell, std::size_t line, std::size_t column) {
    const auto value = parse_double(trim(cell));
    if (!value) {
        throw ParseError("non-numeric cell '" + std::string(cell) + "'", line, column);
    }
    return *value;
}

void apply_metadata(CalibrationDataset& ds, const Line& line) {
    auto body = trim(line.text.substr(1));
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
        throw ParseError("metadata line must be '# key=value'", line.number, 0);
    }
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key == "force_unit") {
        if (value != "kgf") throw ParseError("force_unit must be kgf", line.number, 0);
        return;
    }
    std::optional<double>* slot = nullptr;
    if (key == "zero_indication") slot = &ds.zero_indication;
    else if (key == "temp_start_C") slot = &ds.temp_start_C;
    else if (key == "temp_end_C") slot = &ds.temp_end_C;
    else if (key == "resolution_V") slot = &ds.resolution_V;
    if (slot == nullptr) {
        throw ParseError("unknown metadata key '" + std::string(key) + "'", line.number, 0);
    }
    const auto parsed = parse_double(value);
    if (!parsed) {
        throw ParseError("metadata " + std::string(key) + " is not a number", line.number, 0);
    }
    *slot = *parsed;
}

}  // namespace

CalibrationDataset parse_dataset(std::string_view text) {
    const auto lines = split_lines(text);
    CalibrationDataset ds;

    std::size_t i = 0;
    for (; i < lines.size() && lines[i].text.front() == '#'; ++i) apply_metadata(ds, lines[i]);
    if (i == lines.size()) {
        throw ParseError("missing header", lines.empty() ? 1 : lines.back().number + 1, 0);
    }

    // column index in the file for force and each series slot
    const auto& header_line = lines[i++];
    const auto header = split_fields(header_line.text);
    std::optional<std::size_t> force_col;
    std::array<std::optional<std::size_t>, kSeriesCount> series_col;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto name = trim(header[c]);
        bool known = false;
        if (name == kForceColumn) {
            known = !force_col;
            force_col = c;
        }
        for (std::size_t k = 0; k < kSeriesCount; ++k) {
            if (name == series_layout()[k].column) {
                known = !series_col[k];
                series_col[k] = c;
            }
        }
        if (!known) {
            throw ParseError("unexpected or duplicate column '" + std::string(name) + "'",
                             header_line.number, c + 1);
        }
    }
    if (!force_col) throw ParseError("missing column force_kgf", header_line.number, 0);
    for (std::size_t k = 0; k < kSeriesCount; ++k) {
        if (!series_col[k]) {
            throw ParseError(std::string("missing column ") + series_layout()[k].column,
                             header_line.number, 0);
        }
    }

    struct Row {
        std::size_t line;
        double force;
        std::array<std::optional<double>, kSeriesCount> cells;
    };
    std::vector<Row> rows;
    for (; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.text.front() == '#') {
            throw ParseError("metadata must precede the header", line.number, 0);
        }
        const auto fields = split_fields(line.text);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found "
                                 + std::to_string(fields.size()),
                             line.number, 0);
        }
        Row row{line.number, number_at(fields[*force_col], line.number, *force_col + 1), {}};
        for (std::size_t k = 0; k < kSeriesCount; ++k) {
            const auto cell = trim(fields[*series_col[k]]);
            if (!cell.empty()) row.cells[k] = number_at(cell, line.number, *series_col[k] + 1);
        }
        rows.push_back(row);
    }

    const std::size_t after_header = header_line.number + 1;
    if (rows.empty() || rows.front().force != 0.0) {
        throw ParseError("missing leading zero row", rows.empty() ? after_header : rows.front().line, 0);
    }
    if (rows.size() < 2 || rows.back().force != 0.0) {
        throw ParseError("missing trailing zero row", rows.back().line, 0);
    }

    const auto& lead = rows.front();
    for (std::size_t k = 0; k < kSeriesCount; ++k) {
        if (!lead.cells[k]) {
            throw ParseError("empty cell in leading zero row", lead.line, *series_col[k] + 1);
        }
        ds.series[k].zero_lead = *lead.cells[k];
        ds.series[k].zero_trail = rows.back().cells[k];
    }

    for (std::size_t r = 1; r + 1 < rows.size(); ++r) {
        const auto& row = rows[r];
        const bool ascending = row.force > 0.0 && (ds.force_levels.empty() || row.force > ds.force_levels.back());
        if (!ascending) throw ParseError("non-monotonic force levels", row.line, *force_col + 1);
        ds.force_levels.push_back(row.force);
        for (std::size_t k = 0; k < kSeriesCount; ++k) {
            if (!row.cells[k]) throw ParseError("empty cell", row.line, *series_col[k] + 1);
            ds.series[k].readings.push_back(*row.cells[k]);
        }
    }
    if (ds.force_levels.size() < static_cast<std::size_t>(kMinForceLevels)) {
        throw ParseError("at least " + std::to_string(kMinForceLevels)
                             + " nonzero force levels are required (found "
                             + std::to_string(ds.force_levels.size()) + ")",
                         rows.back().line, 0);
    }
    return ds;
}

std::string serialize_dataset(const CalibrationDataset& ds) {
    ds.validate();
    std::ostringstream os;
    const auto meta = [&os](const char* key, const std::optional<double>& v) {
        if (v) os << "# " << key << '=' << format_shortest(*v) << '\n';
    };
    meta("zero_indication", ds.zero_indication);
    meta("temp_start_C", ds.temp_start_C);
    meta("temp_end_C", ds.temp_end_C);
    meta("resolution_V", ds.resolution_V);
    os << "# force_unit=kgf\n";

    os << kForceColumn;
    for (const auto& l : series_layout()) os << ',' << l.column;
    os << "\n0";
    for (const auto& s : ds.series) os << ',' << format_shortest(s.zero_lead);
    os << '\n';
    for (std::size_t i = 0; i < ds.force_levels.size(); ++i) {
        os << format_shortest(ds.force_levels[i]);
        for (const auto& s : ds.series) os << ',' << format_shortest(s.readings[i]);
        os << '\n';
    }
    os << '0';
    for (const auto& s : ds.series) {
        os << ',';
        if (s.zero_trail) os << format_shortest(*s.zero_trail);
    }
    os << '\n';
    return os.str();
}

}  // namespace pneumo
