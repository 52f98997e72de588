#include "weylflow/report.hpp"

#include <algorithm>

namespace weylflow {

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "fail";
}

} // namespace

void VerificationReport::add(std::string identity, std::string residual, bool ok) {
    details.push_back({std::move(identity), std::move(residual), ok});
    if (!ok) status = CheckStatus::fail;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["check_id"] = check_id;
    j["status"] = status_name(status);
    j["mode"] = mode;
    j["seed"] = seed;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : details) {
        arr.push_back({{"identity", d.identity}, {"residual", d.residual}});
    }
    j["details"] = std::move(arr);
    return j;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const VerificationReport& r) { return r.passed(); });
}

nlohmann::ordered_json reports_to_json(std::vector<VerificationReport> reports) {
    std::sort(reports.begin(), reports.end(),
              [](const VerificationReport& a, const VerificationReport& b) {
                  return a.check_id < b.check_id;
              });
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr;
}

} // namespace weylflow
