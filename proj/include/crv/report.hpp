#ifndef CRV_REPORT_HPP
#define CRV_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace crv {

// One verified identity. `expected`/`computed` are rendered values (exact
// polynomial strings or formatted numbers); `provenance` records where the
// expected side comes from: "reference" (published value), "derived"
// (independent oracle), "exact" (trivial/assertable).
struct Check {
    std::string id;
    std::string description;
    std::string expected;
    std::string computed;
    std::string provenance;
    bool passed = false;
    // informational entries report a known discrepancy without failing a run
    bool informational = false;
    std::string note;
};

class VerificationReport {
public:
    explicit VerificationReport(std::string name) : name_(std::move(name)) {}

    Check& add(Check c) {
        checks_.push_back(std::move(c));
        return checks_.back();
    }
    void merge(const VerificationReport& other) {
        for (auto& c : other.checks_) checks_.push_back(c);
    }

    const std::string& name() const { return name_; }
    const std::vector<Check>& checks() const { return checks_; }

    bool all_passed() const {
        for (auto& c : checks_)
            if (!c.passed && !c.informational) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (auto& c : checks_)
            if (!c.passed && !c.informational) ++n;
        return n;
    }

    nlohmann::ordered_json to_json() const;
    static VerificationReport from_json(const nlohmann::ordered_json& j);
    std::string text() const;

private:
    std::string name_;
    std::vector<Check> checks_;
};

}  // namespace crv

#endif
