#include "lgx/tables.hpp"
#include "lgx/text.hpp"

#include <algorithm>
#include <set>

namespace lgx {

namespace {

/// A field of a delimited record together with its 1-based byte column.
struct Field {
    std::string_view text;
    std::size_t column;
};

std::vector<Field> split_fields(std::string_view line, char delimiter) {
    std::vector<Field> out;
    std::size_t start = 0;
    for (auto piece : text::split(line, delimiter)) {
        out.push_back({piece, start + 1});
        start += piece.size() + 1;
    }
    return out;
}

bool is_blank(std::string_view line) { return text::trim(line).empty(); }

/// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> records(std::string_view input) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    const auto all = text::lines(input);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (!is_blank(all[i])) out.emplace_back(i + 1, all[i]);
    return out;
}

[[noreturn]] void fail(const std::string& file, std::size_t line, std::size_t column, const std::string& msg) {
    throw ParseError(SourceLocation{file, line, column}, msg);
}

void check_serializable(std::string_view token, char delimiter) {
    if (token.find(delimiter) != std::string_view::npos || token.find('\n') != std::string_view::npos)
        throw Error("cannot serialize '" + std::string(token) + "': contains the delimiter or a newline");
}

} // namespace

FeatureName::FeatureName(std::string_view raw) : text_(text::normalize(raw)) {}

const FeatureName& entry_feature() {
    static const FeatureName ent{"<ENT>"};
    return ent;
}

bool is_reserved_token(std::string_view token) {
    return token == "+" || token == "-" || token == "o" || token == "<E>" || token == ".";
}

CellValue CellValue::lexical(std::string_view raw) {
    std::string normalized = text::normalize(raw);
    if (normalized.empty()) throw Error("lexical cell text is empty");
    if (is_reserved_token(normalized)) throw Error("'" + normalized + "' is a reserved cell token");
    return CellValue{Kind::Lexical, std::move(normalized)};
}

std::optional<CellValue> CellValue::from_token(std::string_view token) {
    const auto t = text::trim(token);
    if (t.empty()) return std::nullopt;
    if (t == "+") return plus();
    if (t == "-" || t == ".") return minus();
    if (t == "o") return entry_dependent();
    if (t == "<E>") return empty();
    return lexical(t);
}

std::string CellValue::token() const {
    switch (kind_) {
    case Kind::Plus: return "+";
    case Kind::Minus: return "-";
    case Kind::EntryDependent: return "o";
    case Kind::Empty: return "<E>";
    case Kind::Lexical: return text_;
    }
    return {};
}

ClassTable::ClassTable(std::string class_label, std::vector<FeatureName> features,
                       std::vector<EntryRow> rows, std::string source_name)
    : label_(std::move(class_label)), source_(std::move(source_name)), features_(std::move(features)),
      rows_(std::move(rows)) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].empty()) throw Error("class " + label_ + ": empty feature name");
        if (!index_.emplace(features_[i].str(), i).second)
            throw Error("class " + label_ + ": duplicate feature '" + features_[i].str() + "'");
    }
    const auto ent = column_of(entry_feature());
    if (!ent) throw Error("class " + label_ + ": missing '<ENT>' column");
    for (const auto& row : rows_) {
        if (row.cells.size() != features_.size())
            throw Error("class " + label_ + ": row " + std::to_string(row.row_index) + " has " +
                        std::to_string(row.cells.size()) + " cells for " + std::to_string(features_.size()) +
                        " features");
        const auto& lemma_cell = row.cells[*ent];
        if (lemma_cell.kind() != CellValue::Kind::Lexical || lemma_cell.text() != row.lemma)
            throw Error("class " + label_ + ": row " + std::to_string(row.row_index) + " has no lemma");
    }
}

std::optional<std::size_t> ClassTable::column_of(const FeatureName& feature) const {
    const auto it = index_.find(feature.str());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const CellValue* ClassTable::cell(const EntryRow& row, const FeatureName& feature) const {
    const auto col = column_of(feature);
    if (!col || *col >= row.cells.size()) return nullptr;
    return &row.cells[*col];
}

bool operator==(const ClassTable& a, const ClassTable& b) {
    return a.label_ == b.label_ && a.features_ == b.features_ && a.rows_ == b.rows_;
}

std::string_view policy_token(Policy policy) {
    switch (policy) {
    case Policy::ConstantTrue: return "+";
    case Policy::ConstantFalse: return "-";
    case Policy::PerEntry: return "o";
    }
    return "?";
}

TableOfClasses::TableOfClasses(std::string corner_header, std::vector<FeatureName> features,
                               std::vector<std::string> classes, std::vector<std::vector<Policy>> grid,
                               std::string source_name)
    : corner_(std::move(corner_header)), source_(std::move(source_name)), features_(std::move(features)),
      classes_(std::move(classes)), grid_(std::move(grid)) {
    if (grid_.size() != classes_.size()) throw Error("table of classes: one policy row per class expected");
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].empty()) throw Error("table of classes: empty feature name");
        if (!feature_index_.emplace(features_[i].str(), i).second)
            throw Error("table of classes: duplicate feature '" + features_[i].str() + "'");
    }
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].empty()) throw Error("table of classes: empty class label");
        if (!class_index_.emplace(classes_[i], i).second)
            throw Error("table of classes: duplicate class '" + classes_[i] + "'");
        if (grid_[i].size() != features_.size())
            throw Error("table of classes: class " + classes_[i] + " has the wrong number of cells");
    }
}

bool TableOfClasses::has_class(std::string_view class_label) const {
    return class_index_.contains(std::string(class_label));
}

std::optional<std::size_t> TableOfClasses::column_of(const FeatureName& feature) const {
    const auto it = feature_index_.find(feature.str());
    if (it == feature_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Policy> TableOfClasses::policy_of(std::string_view class_label, const FeatureName& feature) const {
    const auto cls = class_index_.find(std::string(class_label));
    if (cls == class_index_.end()) return std::nullopt;
    const auto col = column_of(feature);
    if (!col) return std::nullopt;
    return grid_[cls->second][*col];
}

std::span<const Policy> TableOfClasses::policies(std::string_view class_label) const {
    const auto cls = class_index_.find(std::string(class_label));
    if (cls == class_index_.end()) return {};
    return grid_[cls->second];
}

bool operator==(const TableOfClasses& a, const TableOfClasses& b) {
    return a.corner_ == b.corner_ && a.features_ == b.features_ && a.classes_ == b.classes_ && a.grid_ == b.grid_;
}

std::optional<Policy> policy_of(const TableOfClasses& toc, std::string_view class_label, const FeatureName& feature) {
    return toc.policy_of(class_label, feature);
}

ClassTable parse_class_table(std::string_view input, std::string class_label, const TableFormat& format) {
    const auto& file = format.source_name;
    const auto recs = records(input);
    if (recs.empty()) fail(file, 1, 1, "missing header row");

    std::vector<FeatureName> features;
    std::set<std::string> seen;
    const auto [header_line, header_text] = recs.front();
    for (const auto& field : split_fields(header_text, format.delimiter)) {
        FeatureName name{field.text};
        if (name.empty()) fail(file, header_line, field.column, "empty feature name in header");
        if (!seen.insert(name.str()).second)
            fail(file, header_line, field.column, "duplicate feature '" + name.str() + "'");
        features.push_back(std::move(name));
    }
    const auto ent = std::find(features.begin(), features.end(), entry_feature());
    if (ent == features.end()) fail(file, header_line, 1, "missing '<ENT>' column");
    const auto ent_col = static_cast<std::size_t>(ent - features.begin());

    std::vector<EntryRow> rows;
    for (std::size_t r = 1; r < recs.size(); ++r) {
        const auto [line_no, line] = recs[r];
        const auto fields = split_fields(line, format.delimiter);
        if (fields.size() != features.size())
            fail(file, line_no, 1,
                 "ragged row: " + std::to_string(fields.size()) + " cells, header has " +
                     std::to_string(features.size()));
        EntryRow row;
        row.row_index = rows.size() + 1;
        row.cells.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            std::optional<CellValue> cell;
            try {
                cell = CellValue::from_token(fields[c].text);
            } catch (const Error& e) {
                fail(file, line_no, fields[c].column, e.what());
            }
            if (!cell) fail(file, line_no, fields[c].column, "empty cell under '" + features[c].str() + "'");
            row.cells.push_back(std::move(*cell));
        }
        const auto& lemma = row.cells[ent_col];
        if (lemma.kind() != CellValue::Kind::Lexical)
            fail(file, line_no, fields[ent_col].column, "empty lemma: '<ENT>' cell must hold lexical text");
        row.lemma = lemma.text();
        rows.push_back(std::move(row));
    }
    return ClassTable(std::move(class_label), std::move(features), std::move(rows), file);
}

TableOfClasses parse_table_of_classes(std::string_view input, const TableFormat& format) {
    const auto& file = format.source_name;
    const auto recs = records(input);
    if (recs.empty()) fail(file, 1, 1, "missing header row");

    const auto [header_line, header_text] = recs.front();
    const auto header = split_fields(header_text, format.delimiter);
    std::string corner = text::normalize(header.front().text);
    std::vector<FeatureName> features;
    std::set<std::string> seen_features;
    for (std::size_t i = 1; i < header.size(); ++i) {
        FeatureName name{header[i].text};
        if (name.empty()) fail(file, header_line, header[i].column, "empty feature name in header");
        if (!seen_features.insert(name.str()).second)
            fail(file, header_line, header[i].column, "duplicate feature '" + name.str() + "'");
        features.push_back(std::move(name));
    }

    std::vector<std::string> classes;
    std::vector<std::vector<Policy>> grid;
    std::set<std::string> seen_classes;
    for (std::size_t r = 1; r < recs.size(); ++r) {
        const auto [line_no, line] = recs[r];
        const auto fields = split_fields(line, format.delimiter);
        if (fields.size() != header.size())
            fail(file, line_no, 1,
                 "ragged row: " + std::to_string(fields.size()) + " cells, header has " +
                     std::to_string(header.size()));
        std::string label = text::normalize(fields.front().text);
        if (label.empty()) fail(file, line_no, 1, "empty class label");
        if (!seen_classes.insert(label).second) fail(file, line_no, 1, "duplicate class '" + label + "'");

        std::vector<Policy> policies;
        policies.reserve(features.size());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const auto token = text::trim(fields[c].text);
            if (token == "+")
                policies.push_back(Policy::ConstantTrue);
            else if (token == "-" || token == ".")
                policies.push_back(Policy::ConstantFalse);
            else if (token == "o")
                policies.push_back(Policy::PerEntry);
            else
                fail(file, line_no, fields[c].column,
                     "unknown policy '" + std::string(token) + "' for class " + label + ", feature '" +
                         features[c - 1].str() + "' (expected '+', '-', 'o' or '.')");
        }
        classes.push_back(std::move(label));
        grid.push_back(std::move(policies));
    }
    return TableOfClasses(std::move(corner), std::move(features), std::move(classes), std::move(grid), file);
}

std::string serialize(const ClassTable& table, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < table.features().size(); ++i) {
        if (i) out += delimiter;
        check_serializable(table.features()[i].str(), delimiter);
        out += table.features()[i].str();
    }
    out += '\n';
    for (const auto& row : table.rows()) {
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            if (i) out += delimiter;
            const auto token = row.cells[i].token();
            check_serializable(token, delimiter);
            out += token;
        }
        out += '\n';
    }
    return out;
}

std::string serialize(const TableOfClasses& toc, char delimiter) {
    std::string out = toc.corner_header();
    for (const auto& f : toc.features()) {
        check_serializable(f.str(), delimiter);
        out += delimiter;
        out += f.str();
    }
    out += '\n';
    for (const auto& label : toc.classes()) {
        check_serializable(label, delimiter);
        out += label;
        for (const auto policy : toc.policies(label)) {
            out += delimiter;
            out += policy_token(policy);
        }
        out += '\n';
    }
    return out;
}

std::vector<ManifestEntry> parse_manifest(std::string_view input, const std::filesystem::path& base_dir,
                                          const std::string& source_name) {
    std::vector<ManifestEntry> out;
    std::set<std::string> labels;
    const auto all = text::lines(input);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto line = text::trim(all[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_fields(all[i], '\t');
        if (fields.size() != 3)
            fail(source_name, i + 1, 1, "expected 'class_label<TAB>path<TAB>category'");
        ManifestEntry entry;
        entry.class_label = text::normalize(fields[0].text);
        const std::string path{text::trim(fields[1].text)};
        entry.category = std::string(text::trim(fields[2].text));
        entry.line = i + 1;
        if (entry.class_label.empty()) fail(source_name, i + 1, fields[0].column, "empty class label");
        if (path.empty()) fail(source_name, i + 1, fields[1].column, "empty path");
        if (entry.category.empty() ||
            !std::all_of(entry.category.begin(), entry.category.end(),
                         [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }))
            fail(source_name, i + 1, fields[2].column, "category must be letters, got '" + entry.category + "'");
        if (!labels.insert(entry.class_label).second)
            fail(source_name, i + 1, fields[0].column, "duplicate class '" + entry.class_label + "'");
        const std::filesystem::path p{path};
        entry.path = p.is_absolute() ? p : base_dir / p;
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<LoadedClass> load_classes(std::span<const ManifestEntry> manifest, char delimiter) {
    std::vector<LoadedClass> out;
    out.reserve(manifest.size());
    for (const auto& entry : manifest) {
        const auto contents = text::read_file(entry.path);
        TableFormat format{delimiter, entry.path.string()};
        out.push_back({entry, parse_class_table(contents, entry.class_label, format)});
    }
    return out;
}

} // namespace lgx
