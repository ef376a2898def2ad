#include "rlab/report.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"

namespace rlab {

std::string report_to_json(const ExperimentReport& report, bool include_timestamp) {
    nlohmann::json j;
    j["experiment"] = report.experiment;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : report.params) params[k] = v;
    for (const auto& [k, v] : report.text_params) params[k] = v;
    j["params"] = params;
    nlohmann::json constants = nlohmann::json::object();
    for (const auto& [k, v] : report.constants) constants[k] = v;
    j["constants"] = constants;
    j["prediction"] = report.prediction;
    nlohmann::json series = nlohmann::json::array();
    for (const auto& pt : report.series)
        series.push_back({pt.param, pt.raw, pt.compensated, pt.error_estimate});
    j["series"] = series;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    if (include_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        j["timestamp"] = buf;
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
    std::string out = "param,raw,compensated,error_estimate\n";
    char line[160];
    for (const auto& pt : report.series) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", pt.param, pt.raw,
                      pt.compensated, pt.error_estimate);
        out += line;
    }
    return out;
}

}  // namespace rlab
