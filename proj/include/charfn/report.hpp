#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace charfn {

// One verified assertion.  A failing check carries a witness: enough
// concrete data to reproduce the falsification in isolation.
struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
    double elapsed_ms = 0.0;
};

// Outcome of a verification suite.  JSON output is deterministic except
// for the elapsed-time fields.
struct VerificationReport {
    std::string suite;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Check> checks;

    void add(const std::string& name, bool pass, const std::string& witness = "");
    // runs the body, records its duration; the body returns pass + witness
    void add_timed(const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body);
    bool all_pass() const;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

} // namespace charfn
