#pragma once

// Claim-by-claim reports: every pipeline output is tied to a stable claim
// identifier, with computed and (when pinned) expected values.

#include <json.hpp>
#include <string>
#include <vector>

namespace ramlab {

struct Claim {
    std::string id;         // stable anchor, e.g. "good-reduction/root-valuation"
    std::string statement;  // the mathematical statement being checked
    std::string computed;
    std::string expected;   // empty for unpinned/advisory claims
    std::string status;     // "match" | "mismatch" | "unverified-advisory"
};

struct Report {
    int schema_version = 1;
    std::string scenario;
    std::vector<Claim> claims;
    std::vector<std::string> notes;

    void add(const std::string& id, const std::string& statement, const std::string& computed,
             const std::string& expected);
    void add_advisory(const std::string& id, const std::string& statement,
                      const std::string& computed);
    bool ok() const;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

}  // namespace ramlab
