#include "charfn/report.hpp"

#include <chrono>
#include <sstream>

namespace charfn {

void VerificationReport::add(const std::string& name, bool pass, const std::string& witness) {
    checks.push_back({name, pass, witness, 0.0});
}

void VerificationReport::add_timed(const std::string& name,
                                   const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::pair<bool, std::string> r = body();
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    checks.push_back({name, r.first, r.second, ms});
}

bool VerificationReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["params"] = params;
    j["pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (const Check& c : checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["status"] = c.pass ? "pass" : "fail";
        if (!c.witness.empty()) cj["witness"] = c.witness;
        cj["elapsed_ms"] = c.elapsed_ms;
        j["checks"].push_back(cj);
    }
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "suite: " << suite;
    if (!params.empty()) os << "  params: " << params.dump();
    os << "\n";
    for (const Check& c : checks) {
        os << "  " << (c.pass ? "pass  " : "FAIL  ") << c.name;
        if (!c.witness.empty()) os << "  [" << c.witness << "]";
        os << "\n";
    }
    os << "result: " << (all_pass() ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
    return os.str();
}

} // namespace charfn
