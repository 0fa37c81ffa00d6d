#pragma once

#include <string>
#include <vector>

namespace cyv {

enum class CheckStatus { Pass, Fail, FlaggedDiscrepancy, Skipped };

const char* to_string(CheckStatus s);

// One named verification with its expected value, provenance and outcome.
// `citation` is a stable key naming the claim being checked; `provenance`
// records whether the expected value is an external claim, trivially forced,
// or derived by an independent computation in this toolkit.
struct CheckReport {
    std::string check;
    std::string citation;
    std::string expected;
    std::string provenance;  // "paper" | "trivial" | "derived"
    std::string computed;
    CheckStatus status = CheckStatus::Skipped;
    long long ms = 0;
    std::string note;

    static CheckReport make(std::string check, std::string citation, std::string provenance);
    CheckReport& expect(const std::string& e);
    CheckReport& got(const std::string& c);
    CheckReport& outcome(bool pass);
};

std::string to_json(const CheckReport& r);
std::string to_json(const std::vector<CheckReport>& rs);

// Exit-status rule: failures fail a run, flagged discrepancies do not.
bool all_passed(const std::vector<CheckReport>& rs);

}  // namespace cyv
