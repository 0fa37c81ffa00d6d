#include "cyv/report.hpp"

#include <nlohmann/json.hpp>

namespace cyv {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::FlaggedDiscrepancy: return "flagged-discrepancy";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

CheckReport CheckReport::make(std::string check, std::string citation, std::string provenance) {
    CheckReport r;
    r.check = std::move(check);
    r.citation = std::move(citation);
    r.provenance = std::move(provenance);
    return r;
}

CheckReport& CheckReport::expect(const std::string& e) {
    expected = e;
    return *this;
}

CheckReport& CheckReport::got(const std::string& c) {
    computed = c;
    return *this;
}

CheckReport& CheckReport::outcome(bool pass) {
    status = pass ? CheckStatus::Pass : CheckStatus::Fail;
    return *this;
}

static nlohmann::json jrow(const CheckReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["citation"] = r.citation;
    j["expected"] = r.expected;
    j["provenance"] = r.provenance;
    j["computed"] = r.computed;
    j["status"] = to_string(r.status);
    j["ms"] = r.ms;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string to_json(const CheckReport& r) { return jrow(r).dump(2); }

std::string to_json(const std::vector<CheckReport>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(jrow(r));
    return arr.dump(2);
}

bool all_passed(const std::vector<CheckReport>& rs) {
    for (const auto& r : rs)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

}  // namespace cyv
