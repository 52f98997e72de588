#ifndef WEYLFLOW_REPORT_HPP
#define WEYLFLOW_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace weylflow {

enum class CheckStatus { pass, fail, skipped };

struct IdentityResult {
    std::string identity;
    std::string residual; // "0" or a canonical residual / sample tally
    bool ok = true;
};

// One named check with a list of identity-level outcomes. Serializes to
// {check_id, status, mode, seed, details:[{identity, residual}]}.
struct VerificationReport {
    std::string check_id;
    CheckStatus status = CheckStatus::pass;
    std::string mode = "symbolic"; // "symbolic" | "sampled"
    std::uint64_t seed = 0;
    std::vector<IdentityResult> details;

    bool passed() const { return status == CheckStatus::pass; }
    void add(std::string identity, std::string residual, bool ok);

    nlohmann::ordered_json to_json() const;
};

bool all_passed(const std::vector<VerificationReport>& reports);

// Canonical serialization: one JSON array, sorted by check_id.
nlohmann::ordered_json reports_to_json(std::vector<VerificationReport> reports);

} // namespace weylflow

#endif
