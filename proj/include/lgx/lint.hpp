#ifndef LGX_LINT_HPP
#define LGX_LINT_HPP

#include "lgx/diagnostic.hpp"
#include "lgx/script.hpp"
#include "lgx/tables.hpp"

#include <span>
#include <string>
#include <vector>

namespace lgx {

struct LintOptions {
    bool strict = false; // CONTRADICTION and DANGLING-O become errors
    std::string script_file;
};

/// Coherence checks across class tables, table of classes and script. Read-only;
/// the result is sorted by (file, class, row, feature, code).
std::vector<Diagnostic> lint_all(std::span<const LoadedClass> classes, const TableOfClasses& toc,
                                 const ScriptAst& script, const LintOptions& options = {});

} // namespace lgx

#endif
