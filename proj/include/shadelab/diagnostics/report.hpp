#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace shadelab::diagnostics {

/// One measured quantity. With an oracle, pass == (|value - oracle| <= tolerance);
/// without one, pass records a threshold check described by `note`.
struct Entry {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> oracle;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
    std::map<std::string, double> details;

    static Entry against(double value, double oracle, double tolerance, std::string note = {}) {
        Entry e;
        e.value = value;
        e.oracle = oracle;
        e.tolerance = tolerance;
        e.pass = std::abs(value - oracle) <= tolerance;
        e.note = std::move(note);
        return e;
    }
    static Entry check(double value, bool pass, std::string note) {
        Entry e;
        e.value = value;
        e.pass = pass;
        e.note = std::move(note);
        return e;
    }
    static Entry documented(std::string note) {
        Entry e;
        e.pass = true;
        e.note = "documented, not measured: " + std::move(note);
        return e;
    }
    static Entry failure(const std::string& what) {
        Entry e;
        e.note = "error: " + what;
        return e;
    }

    Entry& with(const std::string& key, double v) {
        details[key] = v;
        return *this;
    }
};

/// Named metric set; keys iterate in sorted order.
struct DiagnosticReport {
    std::map<std::string, Entry> entries;

    void add(const std::string& name, Entry e) { entries[name] = std::move(e); }
    void merge(const DiagnosticReport& other) {
        for (const auto& [k, v] : other.entries) entries[k] = v;
    }
    bool all_pass() const {
        for (const auto& [k, e] : entries)
            if (!e.pass) return false;
        return true;
    }
};

namespace detail {
inline nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}
}  // namespace detail

inline nlohmann::json to_json(const Entry& e) {
    nlohmann::json j;
    j["value"] = detail::number_or_null(e.value);
    j["oracle"] = e.oracle ? detail::number_or_null(*e.oracle) : nlohmann::json(nullptr);
    j["tolerance"] = e.tolerance;
    j["pass"] = e.pass;
    if (!e.note.empty()) j["note"] = e.note;
    if (!e.details.empty()) {
        nlohmann::json d = nlohmann::json::object();
        for (const auto& [k, v] : e.details) d[k] = detail::number_or_null(v);
        j["details"] = d;
    }
    return j;
}

/// Top-level object with one key per metric, keys sorted for stable diffs.
inline nlohmann::json to_json(const DiagnosticReport& r) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, e] : r.entries) j[k] = to_json(e);
    return j;
}

inline std::string to_json_text(const DiagnosticReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace shadelab::diagnostics
