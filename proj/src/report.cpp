#include "crv/report.hpp"

#include <sstream>

namespace crv {

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["report"] = name_;
    j["passed"] = all_passed();
    auto arr = nlohmann::ordered_json::array();
    for (auto& c : checks_) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["description"] = c.description;
        e["expected"] = c.expected;
        e["computed"] = c.computed;
        e["provenance"] = c.provenance;
        e["passed"] = c.passed;
        e["informational"] = c.informational;
        e["note"] = c.note;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
    VerificationReport r(j.at("report").get<std::string>());
    for (auto& e : j.at("checks")) {
        Check c;
        c.id = e.at("id").get<std::string>();
        c.description = e.at("description").get<std::string>();
        c.expected = e.at("expected").get<std::string>();
        c.computed = e.at("computed").get<std::string>();
        c.provenance = e.at("provenance").get<std::string>();
        c.passed = e.at("passed").get<bool>();
        c.informational = e.at("informational").get<bool>();
        c.note = e.at("note").get<std::string>();
        r.add(std::move(c));
    }
    return r;
}

std::string VerificationReport::text() const {
    std::ostringstream os;
    os << "== " << name_ << " ==\n";
    for (auto& c : checks_) {
        const char* tag = c.passed ? "PASS" : (c.informational ? "INFO" : "FAIL");
        os << "[" << tag << "] " << c.id << ": " << c.description << "\n";
        os << "       expected (" << c.provenance << "): " << c.expected << "\n";
        os << "       computed: " << c.computed << "\n";
        if (!c.note.empty()) os << "       note: " << c.note << "\n";
    }
    os << (all_passed() ? "all checks passed" : "FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace crv
