#include "ramlab/report.hpp"

#include <sstream>

namespace ramlab {

void Report::add(const std::string& id, const std::string& statement, const std::string& computed,
                 const std::string& expected) {
    claims.push_back({id, statement, computed, expected,
                      computed == expected ? "match" : "mismatch"});
}

void Report::add_advisory(const std::string& id, const std::string& statement,
                          const std::string& computed) {
    claims.push_back({id, statement, computed, "", "unverified-advisory"});
}

bool Report::ok() const {
    for (const auto& c : claims)
        if (c.status == "mismatch") return false;
    return true;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["scenario"] = scenario;
    j["claims"] = nlohmann::ordered_json::array();
    for (const auto& c : claims) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["statement"] = c.statement;
        jc["computed"] = c.computed;
        if (!c.expected.empty()) jc["expected"] = c.expected;
        jc["status"] = c.status;
        j["claims"].push_back(jc);
    }
    j["notes"] = notes;
    j["ok"] = ok();
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "== " << scenario << " ==\n";
    for (const auto& c : claims) {
        os << "[" << (c.status == "match" ? "ok" : (c.status == "mismatch" ? "XX" : "ad")) << "] "
           << c.id << ": " << c.statement << "\n     computed: " << c.computed;
        if (!c.expected.empty()) os << "   expected: " << c.expected;
        os << "\n";
    }
    for (const auto& n : notes) os << "  note: " << n << "\n";
    os << (ok() ? "-- all claims match --" : "-- MISMATCH PRESENT --") << "\n";
    return os.str();
}

}  // namespace ramlab
