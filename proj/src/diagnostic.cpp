#include "lgx/diagnostic.hpp"
#include "lgx/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <tuple>

namespace lgx {

std::string SourceLocation::str() const {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (line > 0) {
        out += ':' + std::to_string(line);
        if (column > 0) out += ':' + std::to_string(column);
    }
    return out;
}

ParseError::ParseError(SourceLocation location, const std::string& message)
    : Error(location.str() + ": " + message), location_(std::move(location)), detail_(message) {}

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "ERROR" : "WARNING";
}

std::string format_text(const Diagnostic& d) {
    std::string out;
    out += to_string(d.severity);
    out += ' ';
    out += d.code;
    out += ' ';
    out += d.location.file;
    out += ':';
    out += d.location.class_label.value_or("");
    out += ':';
    if (d.location.row) out += std::to_string(*d.location.row);
    out += ' ';
    out += d.location.feature.value_or("");
    out += " \xE2\x80\x94 "; // U+2014
    out += d.message;
    return out;
}

std::string format_record(const Diagnostic& d) {
    nlohmann::ordered_json j;
    j["severity"] = d.severity == Severity::Error ? "error" : "warning";
    j["code"] = d.code;
    j["file"] = d.location.file;
    j["class"] = d.location.class_label ? nlohmann::ordered_json(*d.location.class_label) : nullptr;
    j["row"] = d.location.row ? nlohmann::ordered_json(*d.location.row) : nullptr;
    j["feature"] = d.location.feature ? nlohmann::ordered_json(*d.location.feature) : nullptr;
    j["message"] = d.message;
    return j.dump();
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.location, a.code, a.message, a.severity) <
           std::tie(b.location, b.code, b.message, b.severity);
}

void normalize_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::sort(diagnostics.begin(), diagnostics.end(), diagnostic_less);
    diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end()), diagnostics.end());
}

std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity) {
    return static_cast<std::size_t>(std::count_if(
        diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.severity == severity; }));
}

} // namespace lgx
