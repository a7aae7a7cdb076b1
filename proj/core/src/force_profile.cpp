#include "pneumo/force_profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pneumo/errors.hpp"

namespace pneumo {

namespace {

double parse_number(std::string_view s, std::string_view what) {
    double value = 0.0;
    // from_chars rejects a leading '+', accept it for convenience
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw DomainError("force profile: invalid " + std::string(what) + " '" + std::string(s) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

void require_increasing(const std::vector<ForceProfile::Point>& pts, const char* what) {
    if (pts.empty()) throw DomainError(std::string(what) + " needs at least one point");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].t > pts[i - 1].t)) {
            throw DomainError(std::string(what) + " times must be strictly increasing");
        }
    }
}

}  // namespace

ForceProfile ForceProfile::constant(double force) {
    return ForceProfile(Kind::constant, {{0.0, force}});
}

ForceProfile ForceProfile::step(double force, double t_step) {
    return ForceProfile(Kind::step, {{t_step, force}});
}

ForceProfile ForceProfile::ramp(double force, double t_start, double t_end) {
    if (!(t_end > t_start)) throw DomainError("ramp end time must follow its start time");
    return ForceProfile(Kind::ramp, {{t_start, 0.0}, {t_end, force}});
}

ForceProfile ForceProfile::staircase(std::vector<Point> levels) {
    require_increasing(levels, "staircase");
    for (const auto& p : levels) {
        if (p.force < 0.0) throw DomainError("staircase levels must be non-negative");
    }
    return ForceProfile(Kind::staircase, std::move(levels));
}

ForceProfile ForceProfile::table(std::vector<Point> samples) {
    require_increasing(samples, "table");
    return ForceProfile(Kind::table, std::move(samples));
}

double ForceProfile::at(double t) const {
    switch (kind_) {
        case Kind::constant:
            return points_.front().force;
        case Kind::step:
            return t >= points_.front().t ? points_.front().force : 0.0;
        case Kind::ramp: {
            const auto& a = points_[0];
            const auto& b = points_[1];
            if (t <= a.t) return 0.0;
            if (t >= b.t) return b.force;
            return b.force * (t - a.t) / (b.t - a.t);
        }
        case Kind::staircase: {
            auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                       [](double tt, const Point& p) { return tt < p.t; });
            if (it == points_.begin()) return 0.0;
            return std::prev(it)->force;
        }
        case Kind::table: {
            if (t <= points_.front().t) return points_.front().force;
            if (t >= points_.back().t) return points_.back().force;
            auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                                       [](double tt, const Point& p) { return tt < p.t; });
            auto lo = std::prev(hi);
            const double s = (t - lo->t) / (hi->t - lo->t);
            return lo->force + s * (hi->force - lo->force);
        }
    }
    return 0.0;
}

ForceProfile ForceProfile::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw DomainError("force profile '" + std::string(text) + "' must look like kind:parameters");
    }
    const auto kind = text.substr(0, colon);
    const auto body = text.substr(colon + 1);

    if (kind == "constant") {
        return constant(parse_number(body, "force"));
    }
    if (kind == "step") {
        const auto parts = split(body, '@');
        if (parts.size() != 2) throw DomainError("step profile must be step:F@t");
        return step(parse_number(parts[0], "force"), parse_number(parts[1], "time"));
    }
    if (kind == "ramp") {
        const auto at = split(body, '@');
        if (at.size() != 2) throw DomainError("ramp profile must be ramp:F@t0:t1");
        const auto times = split(at[1], ':');
        if (times.size() != 2) throw DomainError("ramp profile must be ramp:F@t0:t1");
        return ramp(parse_number(at[0], "force"), parse_number(times[0], "time"),
                    parse_number(times[1], "time"));
    }
    if (kind == "staircase" || kind == "table") {
        const bool stairs = kind == "staircase";
        std::vector<Point> pts;
        for (auto item : split(body, ',')) {
            const auto parts = split(item, stairs ? '@' : '/');
            if (parts.size() != 2) {
                throw DomainError(stairs ? "staircase entries must be F@t" : "table entries must be t/F");
            }
            if (stairs) {
                pts.push_back({parse_number(parts[1], "time"), parse_number(parts[0], "force")});
            } else {
                pts.push_back({parse_number(parts[0], "time"), parse_number(parts[1], "force")});
            }
        }
        return stairs ? staircase(std::move(pts)) : table(std::move(pts));
    }
    throw DomainError("unknown force profile kind '" + std::string(kind) + "'");
}

std::string ForceProfile::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::constant: os << "constant " << points_[0].force << " N"; break;
        case Kind::step: os << "step to " << points_[0].force << " N at " << points_[0].t << " s"; break;
        case Kind::ramp:
            os << "ramp to " << points_[1].force << " N over [" << points_[0].t << ", " << points_[1].t << "] s";
            break;
        case Kind::staircase: os << "staircase with " << points_.size() << " levels"; break;
        case Kind::table: os << "table with " << points_.size() << " samples"; break;
    }
    return os.str();
}

}  // namespace pneumo
