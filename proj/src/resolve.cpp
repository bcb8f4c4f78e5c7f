#include "lgx/resolve.hpp"

namespace lgx {

ResolvedValue ResolvedValue::from_toc(bool value) {
    return {value ? Kind::True : Kind::False, Provenance::TableOfClasses, {}};
}

ResolvedValue ResolvedValue::from_cell(const CellValue& cell) {
    switch (cell.kind()) {
    case CellValue::Kind::Plus: return {Kind::True, Provenance::EntryCell, {}};
    case CellValue::Kind::Minus: return {Kind::False, Provenance::EntryCell, {}};
    case CellValue::Kind::Lexical: return {Kind::Lexical, Provenance::EntryCell, cell.text()};
    case CellValue::Kind::Empty: return {Kind::Lexical, Provenance::EntryCell, "<E>"};
    case CellValue::Kind::EntryDependent: break;
    }
    return undefined();
}

bool ResolvedValue::activates() const {
    return kind == Kind::True || (kind == Kind::Lexical && text != "<E>");
}

std::string ResolvedValue::substitution_text() const {
    switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Lexical: return text;
    case Kind::Undefined: break;
    }
    throw SubstitutionError("undefined value");
}

std::optional<bool> cell_truth(const CellValue& cell) {
    switch (cell.kind()) {
    case CellValue::Kind::Plus:
    case CellValue::Kind::Lexical: return true;
    case CellValue::Kind::Minus:
    case CellValue::Kind::Empty: return false;
    case CellValue::Kind::EntryDependent: break;
    }
    return std::nullopt;
}

Diagnostic make_contradiction(const ClassTable& table, const EntryRow& row, const FeatureName& feature, Policy policy,
                              const CellValue& cell, Severity severity) {
    return {severity,
            std::string(codes::Contradiction),
            {table.source_name(), table.label(), row.row_index, feature.str()},
            "table of classes sets '" + std::string(policy_token(policy)) + "' for class " + table.label() +
                "; entry cell '" + cell.token() + "' of '" + row.lemma + "' is overridden"};
}

ResolvedValue resolve_feature(const TableOfClasses& toc, const ClassTable& table, const EntryRow& row,
                              const FeatureName& feature, std::vector<Diagnostic>* diagnostics) {
    const auto policy = toc.policy_of(table.label(), feature);
    if (!policy) return ResolvedValue::undefined();
    const CellValue* cell = table.cell(row, feature);

    if (*policy == Policy::PerEntry) {
        if (!cell)
            throw ResolutionError("class " + table.label() + ": feature '" + feature.str() +
                                  "' is 'o' in the table of classes but the class table has no such column");
        if (cell->kind() == CellValue::Kind::EntryDependent)
            throw ResolutionError("class " + table.label() + ", row " + std::to_string(row.row_index) +
                                  ": feature '" + feature.str() + "' is 'o' in both tables");
        return ResolvedValue::from_cell(*cell);
    }

    const bool constant = *policy == Policy::ConstantTrue;
    if (cell && diagnostics) {
        const auto truth = cell_truth(*cell);
        if (truth && *truth != constant) diagnostics->push_back(make_contradiction(table, row, feature, *policy, *cell));
    }
    return ResolvedValue::from_toc(constant);
}

const ResolvedValue* EntryContext::lookup(const FeatureName& feature) const {
    const auto it = env.find(feature);
    return it == env.end() ? nullptr : &it->second;
}

EntryContext build_env(const TableOfClasses& toc, const ClassTable& table, const EntryRow& row,
                       const std::set<FeatureName>& needed, std::string category,
                       std::vector<Diagnostic>* diagnostics, std::string entry_id) {
    EntryContext ctx;
    ctx.entry_id = std::move(entry_id);
    ctx.class_label = table.label();
    ctx.category = std::move(category);
    ctx.row = &row;
    for (const auto& feature : needed) {
        if (feature == entry_feature()) continue;
        try {
            ctx.env.emplace(feature, resolve_feature(toc, table, row, feature, diagnostics));
        } catch (const ResolutionError& e) {
            const std::string who = ctx.entry_id.empty() ? "row " + std::to_string(row.row_index) : ctx.entry_id;
            throw ResolutionError("entry " + who + " (" + row.lemma + "): " + e.what());
        }
    }
    ctx.env[entry_feature()] = ResolvedValue{ResolvedValue::Kind::Lexical, ResolvedValue::Provenance::EntryCell, row.lemma};
    return ctx;
}

std::string substitute(const QuotedString& templ, const EntryContext& ctx) {
    std::string out;
    for (const auto& part : templ.parts) {
        if (!part.placeholder) {
            out += part.text;
            continue;
        }
        const auto* value = ctx.lookup(FeatureName{part.text});
        if (!value || value->kind == ResolvedValue::Kind::Undefined) {
            const std::string who = !ctx.entry_id.empty() ? ctx.entry_id
                                    : ctx.row        ? "row " + std::to_string(ctx.row->row_index)
                                                     : std::string("?");
            throw SubstitutionError("entry " + who + ": placeholder @" + part.text + "@ has no value for class " +
                                    ctx.class_label);
        }
        out += value->substitution_text();
    }
    return out;
}

std::string substitute(std::string_view templ, const EntryContext& ctx) {
    return substitute(QuotedString::parse(templ), ctx);
}

} // namespace lgx
