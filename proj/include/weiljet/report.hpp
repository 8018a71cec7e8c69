#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace weiljet {

// One named check with its verdict; the witness carries a human-readable
// counterexample (offending monomial, dimension count, ...) when it fails.
struct CheckItem {
    std::string name;
    bool pass = false;
    std::string witness;
};

class CheckReport {
public:
    CheckReport() = default;
    explicit CheckReport(std::string subject) : subject_(std::move(subject)) {}

    void add(std::string name, bool pass, std::string witness = std::string()) {
        items_.push_back({std::move(name), pass, std::move(witness)});
    }
    void merge(const CheckReport& other);

    const std::string& subject() const { return subject_; }
    const std::vector<CheckItem>& items() const { return items_; }
    bool overall() const;
    const CheckItem* find(const std::string& name) const;

private:
    std::string subject_;
    std::vector<CheckItem> items_;
};

nlohmann::json report_to_json(const CheckReport& report);
std::string report_to_text(const CheckReport& report);

} // namespace weiljet
