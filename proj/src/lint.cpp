#include "lgx/lint.hpp"
#include "lgx/resolve.hpp"

#include <map>
#include <set>

namespace lgx {

namespace {

struct Usage {
    std::set<std::string> boolean; // classes where the feature reads as '+'
    std::set<std::string> lexical; // classes where it carries text
};

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
    return out;
}

std::map<FeatureName, Usage> classify(std::span<const LoadedClass> classes, const TableOfClasses& toc) {
    std::map<FeatureName, Usage> usage;
    for (const auto& loaded : classes) {
        const auto& table = loaded.table;
        if (!toc.has_class(table.label())) continue;
        const auto policies = toc.policies(table.label());
        for (std::size_t i = 0; i < toc.features().size(); ++i)
            if (policies[i] == Policy::ConstantTrue) usage[toc.features()[i]].boolean.insert(table.label());
        for (std::size_t c = 0; c < table.features().size(); ++c) {
            const auto& feature = table.features()[c];
            if (feature == entry_feature()) continue;
            const auto policy = toc.policy_of(table.label(), feature);
            if (policy && *policy != Policy::PerEntry) continue;
            for (const auto& row : table.rows()) {
                const auto kind = row.cells[c].kind();
                if (kind == CellValue::Kind::Plus) usage[feature].boolean.insert(table.label());
                if (kind == CellValue::Kind::Lexical) usage[feature].lexical.insert(table.label());
            }
        }
    }
    return usage;
}

void check_placeholders(const TemplateValue& value, const Definition& def, const std::map<FeatureName, Usage>& usage,
                        const std::string& file, std::vector<Diagnostic>& out) {
    if (const auto* s = std::get_if<QuotedString>(&value.value)) {
        if (s->parts.size() < 2) return;
        for (const auto& part : s->parts) {
            if (!part.placeholder) continue;
            const auto it = usage.find(FeatureName{part.text});
            if (it == usage.end() || it->second.boolean.empty() || !it->second.lexical.empty()) continue;
            out.push_back({Severity::Warning, std::string(codes::SuspiciousSubstitution), {file, {}, {}, part.text},
                           "boolean feature substituted inside \"" + s->raw() + "\" in '" + def.name + "' (" +
                               value.location.str() + "); it yields \"true\" or \"false\""});
        }
    } else if (const auto* tuple = std::get_if<std::vector<TemplateValue>>(&value.value)) {
        for (const auto& v : *tuple) check_placeholders(v, def, usage, file, out);
    }
}

} // namespace

std::vector<Diagnostic> lint_all(std::span<const LoadedClass> classes, const TableOfClasses& toc,
                                 const ScriptAst& script, const LintOptions& options) {
    std::vector<Diagnostic> out;
    const auto escalated = options.strict ? Severity::Error : Severity::Warning;

    for (const auto& loaded : classes) {
        const auto& table = loaded.table;
        const auto& label = table.label();
        if (!toc.has_class(label)) {
            out.push_back({Severity::Warning, std::string(codes::UncoveredClass), {table.source_name(), label, {}, {}},
                           "class is not covered by the table of classes"});
            continue;
        }
        for (const auto& feature : table.features()) {
            if (feature == entry_feature() || toc.column_of(feature)) continue;
            out.push_back({Severity::Warning, std::string(codes::OrphanFeature),
                           {table.source_name(), label, {}, feature.str()},
                           "class table column has no column in the table of classes"});
        }
        const auto policies = toc.policies(label);
        for (std::size_t i = 0; i < toc.features().size(); ++i) {
            const auto& feature = toc.features()[i];
            const auto policy = policies[i];
            if (policy == Policy::PerEntry) {
                if (!table.has_feature(feature))
                    out.push_back({escalated, std::string(codes::DanglingO), {toc.source_name(), label, {}, feature.str()},
                                   "table of classes says 'o' but the class table has no such column"});
                continue;
            }
            if (!table.has_feature(feature)) continue;
            const bool constant = policy == Policy::ConstantTrue;
            for (const auto& row : table.rows()) {
                const auto* cell = table.cell(row, feature);
                const auto truth = cell_truth(*cell);
                if (truth && *truth != constant) out.push_back(make_contradiction(table, row, feature, policy, *cell, escalated));
            }
        }
    }

    const auto referenced = script.referenced_features();
    for (const auto& feature : toc.features())
        if (!referenced.contains(feature))
            out.push_back({Severity::Warning, std::string(codes::UnusedFeature), {toc.source_name(), {}, {}, feature.str()},
                           "no prop block or placeholder uses this feature"});

    std::vector<ClassTable> tables;
    for (const auto& loaded : classes) tables.push_back(loaded.table);
    for (auto& d : check_references(script, toc, tables, options.script_file)) out.push_back(std::move(d));

    const auto usage = classify(classes, toc);
    for (const auto& [feature, use] : usage) {
        std::set<std::string> both;
        for (const auto& c : use.boolean)
            if (use.lexical.contains(c)) both.insert(c);
        if (use.boolean.empty() || use.lexical.empty()) continue;
        std::string message = "feature is boolean in " + join(use.boolean) + " and lexical in " + join(use.lexical);
        if (!both.empty()) message += " (both within " + join(both) + ")";
        out.push_back({Severity::Warning, std::string(codes::MixedValueKind), {toc.source_name(), {}, {}, feature.str()},
                       message});
    }

    for (const auto& def : script.definitions)
        for (const auto& pair : def.body.pairs) check_placeholders(pair.value, def, usage, options.script_file, out);

    normalize_diagnostics(out);
    return out;
}

} // namespace lgx
