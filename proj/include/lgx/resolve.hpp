#ifndef LGX_RESOLVE_HPP
#define LGX_RESOLVE_HPP

#include "lgx/diagnostic.hpp"
#include "lgx/error.hpp"
#include "lgx/script.hpp"
#include "lgx/tables.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lgx {

struct ResolvedValue {
    enum class Kind { True, False, Lexical, Undefined };
    enum class Provenance { TableOfClasses, EntryCell, Missing };

    Kind kind = Kind::Undefined;
    Provenance provenance = Provenance::Missing;
    std::string text; // Lexical only

    static ResolvedValue from_toc(bool value);
    static ResolvedValue from_cell(const CellValue& cell);
    static ResolvedValue undefined() { return {}; }

    bool is_boolean() const { return kind == Kind::True || kind == Kind::False; }

    /// Whether a prop block keyed on this value fires: True, or lexical text other than '<E>'.
    bool activates() const;

    /// Text substituted for a placeholder; throws for Undefined.
    std::string substitution_text() const;

    bool operator==(const ResolvedValue&) const = default;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class SubstitutionError : public Error {
public:
    using Error::Error;
};

/// Truth value a cell asserts, when it asserts one: '+' and lexical text are true,
/// '-' and '<E>' are false, 'o' asserts nothing.
std::optional<bool> cell_truth(const CellValue& cell);

/// The CONTRADICTION diagnostic for a constant policy overriding a disagreeing cell.
Diagnostic make_contradiction(const ClassTable& table, const EntryRow& row,
                              const FeatureName& feature, Policy policy, const CellValue& cell,
                              Severity severity = Severity::Warning);

/// Table of classes first: a constant policy wins over the entry cell (a disagreeing cell
/// adds a CONTRADICTION to `diagnostics`). 'o' reads the entry cell. A feature the table of
/// classes does not define for the class is Undefined. Throws ResolutionError when the
/// policy is 'o' but the class table has no such column, or the cell itself is 'o'.
ResolvedValue resolve_feature(const TableOfClasses& toc, const ClassTable& table, const EntryRow& row,
                              const FeatureName& feature, std::vector<Diagnostic>* diagnostics = nullptr);

struct EntryContext {
    std::string entry_id;
    std::string class_label;
    std::string category;
    const EntryRow* row = nullptr;
    std::map<FeatureName, ResolvedValue> env;

    const ResolvedValue* lookup(const FeatureName& feature) const;
};

/// Resolves every needed feature; '<ENT>' always maps to the lemma.
EntryContext build_env(const TableOfClasses& toc, const ClassTable& table, const EntryRow& row,
                       const std::set<FeatureName>& needed, std::string category = {},
                       std::vector<Diagnostic>* diagnostics = nullptr, std::string entry_id = {});

std::string substitute(const QuotedString& templ, const EntryContext& ctx);
std::string substitute(std::string_view templ, const EntryContext& ctx);

} // namespace lgx

#endif
