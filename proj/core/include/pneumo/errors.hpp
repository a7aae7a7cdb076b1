#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pneumo {

// Base of every error the library throws. Callers that only care about
// "something went wrong in pneumo" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter violates the invariant of the type that owns it.
class DomainError : public Error {
public:
    using Error::Error;
};

// An input lies outside the valid range of a conversion (e.g. a voltage
// outside the transducer's output span).
class RangeError : public Error {
public:
    RangeError(const std::string& what, double value)
        : Error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

// The integrator produced a non-finite state, or a quasi-static hold never
// settled.
class NumericInstability : public Error {
public:
    NumericInstability(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class ScheduleError : public Error {
public:
    using Error::Error;
};

// Dataset CSV ingestion failure. line/column are 1-based; column 0 means the
// error concerns the whole line.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(format(message, line, column)),
          message_(message), line_(line), column_(column) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& m, std::size_t line, std::size_t column) {
        std::string s = "line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        return s + ": " + m;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// Least-squares fit cannot be formed (too few points, rank deficiency).
class FitError : public Error {
public:
    using Error::Error;
};

// A relative error would divide by a zero (or vanishing) reference reading.
class DegenerateScaleError : public Error {
public:
    using Error::Error;
};

// Uncertainty budget is missing inputs; what() lists the absent fields.
class BudgetError : public Error {
public:
    using Error::Error;
};

class ClassificationError : public Error {
public:
    using Error::Error;
};

}  // namespace pneumo
