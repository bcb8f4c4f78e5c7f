#ifndef LGX_DIAGNOSTIC_HPP
#define LGX_DIAGNOSTIC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgx {

enum class Severity { Warning, Error };

std::string_view to_string(Severity severity);

/// Diagnostic codes. The set is closed; README.md documents each one.
namespace codes {
inline constexpr std::string_view Contradiction = "CONTRADICTION";
inline constexpr std::string_view OrphanFeature = "ORPHAN-FEATURE";
inline constexpr std::string_view DanglingO = "DANGLING-O";
inline constexpr std::string_view UnusedFeature = "UNUSED-FEATURE";
inline constexpr std::string_view UnknownFeature = "UNKNOWN-FEATURE";
inline constexpr std::string_view MixedValueKind = "MIXED-VALUE-KIND";
inline constexpr std::string_view SuspiciousSubstitution = "SUSPICIOUS-SUBSTITUTION";
inline constexpr std::string_view UndefinedObject = "UNDEFINED-OBJECT";
inline constexpr std::string_view UncoveredClass = "UNCOVERED-CLASS";
inline constexpr std::string_view EntryError = "ENTRY-ERROR";
inline constexpr std::string_view DuplicateId = "DUPLICATE-ID";
} // namespace codes

struct DiagnosticLocation {
    std::string file;
    std::optional<std::string> class_label;
    std::optional<std::size_t> row;
    std::optional<std::string> feature;

    auto operator<=>(const DiagnosticLocation&) const = default;
};

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string code;
    DiagnosticLocation location;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// `SEVERITY CODE file:class:row feature <U+2014> message`
std::string format_text(const Diagnostic& diagnostic);

/// One JSON object per line.
std::string format_record(const Diagnostic& diagnostic);

/// Ordering by (file, class, row, feature, code), then message.
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

/// Sorts and removes exact duplicates.
void normalize_diagnostics(std::vector<Diagnostic>& diagnostics);

std::size_t count_severity(const std::vector<Diagnostic>& diagnostics, Severity severity);

} // namespace lgx

#endif
