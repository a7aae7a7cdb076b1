#pragma once

// key=value run configuration. Defaults < config file < command-line flags.
// Every key is known up front; anything else is rejected.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <pneumo/analysis.hpp>
#include <pneumo/calibration.hpp>
#include <pneumo/dynamics.hpp>
#include <pneumo/errors.hpp>
#include <pneumo/force_profile.hpp>

namespace pneumo::cli {

class ConfigError : public pneumo::Error {
public:
    using Error::Error;
};

class RunConfig {
public:
    RunConfig();

    // Lines of key=value; '#' starts a comment, blank lines are skipped.
    void load_text(std::string_view text, const std::string& origin);
    void load_file(const std::string& path);
    // "key=value"
    void set(std::string_view assignment);
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    static const std::vector<std::string>& keys();

    double number(const std::string& key) const;
    long long integer(const std::string& key) const;

    SensorModel model() const;
    SimulationConfig simulation() const;
    ForceProfile force_profile() const;
    LoadSchedule schedule() const;
    SynthesisConfig synthesis() const;
    AnalysisConfig analysis() const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace pneumo::cli
