#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pneumo {

// External force applied to the piston as a function of time (N, s).
// Positive force compresses the chamber.
class ForceProfile {
public:
    enum class Kind { constant, step, ramp, staircase, table };

    struct Point {
        double t = 0.0;
        double force = 0.0;
    };

    static ForceProfile constant(double force);
    // 0 before t_step, `force` from t_step on.
    static ForceProfile step(double force, double t_step);
    // 0 until t_start, linear to `force` at t_end, held afterwards.
    static ForceProfile ramp(double force, double t_start, double t_end);
    // Level i applies on [t_i, t_{i+1}); 0 before the first time.
    static ForceProfile staircase(std::vector<Point> levels);
    // Piecewise-linear through the samples, held flat outside them.
    static ForceProfile table(std::vector<Point> samples);

    // Textual form used by the CLI:
    //   constant:F | step:F@t | ramp:F@t0:t1 | staircase:F1@t1,F2@t2,...
    //   table:t1/F1,t2/F2,...
    static ForceProfile parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    const std::vector<Point>& points() const noexcept { return points_; }

    double at(double t) const;

    std::string describe() const;

private:
    ForceProfile(Kind kind, std::vector<Point> points)
        : kind_(kind), points_(std::move(points)) {}

    Kind kind_;
    std::vector<Point> points_;
};

}  // namespace pneumo
