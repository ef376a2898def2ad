#pragma once

#include <map>
#include <string>
#include <vector>

namespace rlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SeriesPoint {
    double param = 0.0;
    double raw = 0.0;
    double compensated = 0.0;
    double error_estimate = 0.0;
};

// Serializable outcome of one experiment run: parameters, constants used,
// the (param, raw, compensated) series and named pass/fail checks.
struct ExperimentReport {
    std::string experiment;
    std::map<std::string, double> params;
    std::map<std::string, std::string> text_params;
    std::map<std::string, double> constants;
    std::string prediction;  // formula behind the compensated column
    std::vector<SeriesPoint> series;
    std::vector<CheckResult> checks;

    bool all_checks_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Alias used by the correlation-ladder experiments.
using CorrelationReport = ExperimentReport;

// JSON schema: {"experiment", "params", "constants", "series": [[param, raw,
// compensated, error_estimate]...], "checks": [{"name","pass","detail"}...]}
// plus "prediction" and, when requested, a "timestamp" field.
std::string report_to_json(const ExperimentReport& report, bool include_timestamp);

// Flat (param, raw, compensated, error_estimate) rows for plotting.
std::string report_to_csv(const ExperimentReport& report);

}  // namespace rlab
