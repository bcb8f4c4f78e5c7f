#ifndef LGX_SCRIPT_HPP
#define LGX_SCRIPT_HPP

#include "lgx/diagnostic.hpp"
#include "lgx/error.hpp"
#include "lgx/tables.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lgx {

/// A double-quoted string split into literal runs and `@feature@` placeholders.
struct QuotedString {
    struct Part {
        bool placeholder = false;
        std::string text; // literal text, or the normalized feature name

        bool operator==(const Part&) const = default;
    };

    std::vector<Part> parts;

    /// Splits raw string contents on '@'. Throws lgx::Error on an odd number of '@'.
    static QuotedString parse(std::string_view contents);

    bool has_placeholders() const;
    /// The contents as written, placeholders re-wrapped in '@'.
    std::string raw() const;

    bool operator==(const QuotedString&) const = default;
};

struct ObjectRef {
    std::string name;
    bool operator==(const ObjectRef&) const = default;
};

struct TemplateValue {
    std::variant<QuotedString, ObjectRef, std::vector<TemplateValue>> value;
    SourceLocation location;

    bool operator==(const TemplateValue&) const = default;
};

struct TemplatePair {
    std::string attribute;
    TemplateValue value;

    bool operator==(const TemplatePair&) const = default;
};

enum class BodyStyle { Bracket, Brace };

struct TemplateBody {
    std::vector<TemplatePair> pairs;
    BodyStyle style = BodyStyle::Bracket;

    bool operator==(const TemplateBody&) const = default;
};

struct Definition {
    std::string kind;
    std::string name;
    std::optional<std::string> parent;
    TemplateBody body;
    SourceLocation location;

    bool operator==(const Definition&) const = default;
};

/// `head(.attr)*`
struct ObjectPath {
    std::vector<std::string> segments;

    const std::string& head() const { return segments.front(); }
    std::string str() const;

    bool operator==(const ObjectPath&) const = default;
    auto operator<=>(const ObjectPath&) const = default;
};

struct AddOp {
    ObjectPath source;
    ObjectPath target;
    SourceLocation location;

    bool operator==(const AddOp&) const = default;
};

struct PropBlock {
    FeatureName feature;
    std::vector<AddOp> ops;
    SourceLocation location;

    bool operator==(const PropBlock&) const = default;
};

struct ScriptAst {
    std::vector<Definition> definitions;
    std::vector<PropBlock> prop_blocks;

    const Definition* find(std::string_view name) const;

    /// Features named by placeholders and prop blocks.
    std::set<FeatureName> referenced_features() const;
    std::set<FeatureName> placeholder_features() const;

    bool operator==(const ScriptAst&) const = default;
};

/// Parses the extraction-script language. Throws lgx::ParseError on syntax errors,
/// duplicate definitions, undefined or later-defined parents, and duplicate prop features.
ScriptAst parse_script(std::string_view text, const std::string& source_name = "<script>");

/// Canonical pretty-printer. parse(unparse(ast)) prints back identically.
std::string unparse(const ScriptAst& ast);

/// Reference diagnostics: UNKNOWN-FEATURE for a placeholder or prop feature found in
/// neither the table of classes nor any class-table header; UNDEFINED-OBJECT for an
/// add-operation path head or object reference that names no definition.
std::vector<Diagnostic> check_references(const ScriptAst& ast, const TableOfClasses& toc,
                                         std::span<const ClassTable> class_tables = {},
                                         const std::string& script_file = {});

} // namespace lgx

#endif
