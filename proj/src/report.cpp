#include "weiljet/report.hpp"

#include <sstream>

namespace weiljet {

void CheckReport::merge(const CheckReport& other) {
    for (const auto& item : other.items()) {
        std::string name = other.subject().empty() ? item.name : other.subject() + ": " + item.name;
        items_.push_back({std::move(name), item.pass, item.witness});
    }
}

bool CheckReport::overall() const {
    for (const auto& item : items_) {
        if (!item.pass) return false;
    }
    return true;
}

const CheckItem* CheckReport::find(const std::string& name) const {
    for (const auto& item : items_) {
        if (item.name == name) return &item;
    }
    return nullptr;
}

nlohmann::json report_to_json(const CheckReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& item : report.items()) {
        nlohmann::json entry = {{"name", item.name}, {"verdict", item.pass ? "pass" : "fail"}};
        if (!item.witness.empty()) entry["witness"] = item.witness;
        checks.push_back(std::move(entry));
    }
    return {{"subject", report.subject()}, {"checks", checks}, {"pass", report.overall()}};
}

std::string report_to_text(const CheckReport& report) {
    std::ostringstream out;
    if (!report.subject().empty()) out << report.subject() << "\n";
    for (const auto& item : report.items()) {
        out << "  [" << (item.pass ? "pass" : "FAIL") << "] " << item.name;
        if (!item.witness.empty()) out << "  (" << item.witness << ")";
        out << "\n";
    }
    out << (report.overall() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace weiljet
