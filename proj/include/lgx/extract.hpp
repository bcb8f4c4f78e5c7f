#ifndef LGX_EXTRACT_HPP
#define LGX_EXTRACT_HPP

#include "lgx/diagnostic.hpp"
#include "lgx/objects.hpp"
#include "lgx/resolve.hpp"
#include "lgx/script.hpp"
#include "lgx/tables.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lgx {

/// A parsed script with inheritance flattened and object references checked.
struct CompiledScript {
    ScriptAst ast;
    std::map<std::string, TemplateBody> templates;
    std::vector<std::string> order; // definition names in script order
    std::set<FeatureName> needed;   // placeholder and prop-block features

    std::size_t index_of(std::string_view name) const;
};

/// Throws ParseError when a template references an undefined object, a set lists
/// something other than object references, or template references form a cycle.
CompiledScript compile_script(ScriptAst ast);

using ObjectMap = std::map<std::string, LinguisticObject>;

/// Instantiates every template for one entry, with no prop block applied.
ObjectMap lexicalize(const CompiledScript& script, const EntryContext& ctx);

/// Per-entry failure: substitution, path, type conflict or dependency cycle.
class EntryFailure : public Error {
public:
    using Error::Error;
};

/// Instantiates every template and applies the add-operations of each prop block whose
/// feature activates. A definition is finalized only after everything it depends on,
/// through template references or active add-operations, so each add reads final values.
/// Active operations run in a canonical order (feature column in the table of classes,
/// then target path, then source path), which makes the result independent of the order
/// blocks and operations appear in the script.
ObjectMap apply_props(const CompiledScript& script, const EntryContext& ctx, const TableOfClasses& toc);

std::string make_entry_id(std::string_view category, std::string_view class_label, std::size_t row_index);

struct EntryRecord {
    std::string id;
    std::string class_label;
    std::string category;
    std::size_t row_index = 0;
    ObjectMap objects;
    std::vector<Diagnostic> diagnostics;
};

struct ExtractStats {
    std::size_t classes = 0; // classes processed (manifest and table of classes)
    std::size_t rows = 0;    // data rows in processed classes
    std::size_t entries = 0;
    std::size_t skipped = 0;
};

struct Lexicon {
    std::vector<EntryRecord> entries;
    std::vector<Diagnostic> diagnostics; // all per-entry and per-class diagnostics, sorted
    ExtractStats stats;
};

struct ExtractOptions {
    bool strict = false;
};

/// Raised in strict mode by the first per-entry diagnostic.
class StrictModeFailure : public Error {
public:
    explicit StrictModeFailure(Diagnostic diagnostic);
    const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

private:
    Diagnostic diagnostic_;
};

/// Classes in manifest order, skipping (with a warning) those the table of classes does
/// not cover; entries in row order. A failing entry is skipped with an ENTRY-ERROR.
/// Always satisfies stats.entries == stats.rows - stats.skipped.
Lexicon extract_lexicon(std::span<const LoadedClass> classes, const TableOfClasses& toc,
                        const CompiledScript& script, const ExtractOptions& options = {});

} // namespace lgx

#endif
