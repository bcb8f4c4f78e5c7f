#ifndef LGX_TABLES_HPP
#define LGX_TABLES_HPP

#include "lgx/error.hpp"

#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lgx {

/// A column header. Stored trimmed and NFC-normalized; compared byte for byte.
class FeatureName {
public:
    FeatureName() = default;
    explicit FeatureName(std::string_view raw);

    const std::string& str() const noexcept { return text_; }
    bool empty() const noexcept { return text_.empty(); }

    auto operator<=>(const FeatureName&) const = default;

private:
    std::string text_;
};

/// The lemma column.
const FeatureName& entry_feature();

class CellValue {
public:
    enum class Kind { Plus, Minus, EntryDependent, Lexical, Empty };

    static CellValue plus() { return CellValue{Kind::Plus, {}}; }
    static CellValue minus() { return CellValue{Kind::Minus, {}}; }
    static CellValue entry_dependent() { return CellValue{Kind::EntryDependent, {}}; }
    static CellValue empty() { return CellValue{Kind::Empty, {}}; }
    /// Throws lgx::Error when `text` is blank or a reserved token.
    static CellValue lexical(std::string_view text);

    /// Classifies a raw cell token: '+', '-' or '.', 'o', '<E>', anything else is lexical.
    /// Returns nullopt for a blank token.
    static std::optional<CellValue> from_token(std::string_view token);

    Kind kind() const noexcept { return kind_; }
    /// Lexical text; empty for every other kind.
    const std::string& text() const noexcept { return text_; }

    /// Token written back to a table file.
    std::string token() const;

    bool operator==(const CellValue&) const = default;

private:
    CellValue(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

    Kind kind_ = Kind::Minus;
    std::string text_;
};

bool is_reserved_token(std::string_view token);

struct EntryRow {
    std::size_t row_index = 0; // 1-based position among data rows
    std::string lemma;
    std::vector<CellValue> cells; // one per feature, in column order

    bool operator==(const EntryRow&) const = default;
};

/// One Lexicon-Grammar class. Immutable once built.
class ClassTable {
public:
    /// Validates the invariants: unique features, exactly one '<ENT>',
    /// one cell per column, non-empty lemma.
    ClassTable(std::string class_label, std::vector<FeatureName> features,
               std::vector<EntryRow> rows, std::string source_name = {});

    const std::string& label() const noexcept { return label_; }
    const std::string& source_name() const noexcept { return source_; }
    const std::vector<FeatureName>& features() const noexcept { return features_; }
    const std::vector<EntryRow>& rows() const noexcept { return rows_; }

    std::optional<std::size_t> column_of(const FeatureName& feature) const;
    bool has_feature(const FeatureName& feature) const { return column_of(feature).has_value(); }

    /// Cell of `row` under `feature`, or nullptr when the column does not exist.
    const CellValue* cell(const EntryRow& row, const FeatureName& feature) const;

    /// Structural equality: label, column order, rows. The source name is ignored.
    friend bool operator==(const ClassTable& a, const ClassTable& b);

private:
    std::string label_;
    std::string source_;
    std::vector<FeatureName> features_;
    std::vector<EntryRow> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class Policy { ConstantTrue, ConstantFalse, PerEntry };

std::string_view policy_token(Policy policy);

/// The class x feature grid of resolution policies.
class TableOfClasses {
public:
    TableOfClasses(std::string corner_header, std::vector<FeatureName> features,
                   std::vector<std::string> classes, std::vector<std::vector<Policy>> grid,
                   std::string source_name = {});

    const std::string& corner_header() const noexcept { return corner_; }
    const std::string& source_name() const noexcept { return source_; }
    const std::vector<FeatureName>& features() const noexcept { return features_; }
    const std::vector<std::string>& classes() const noexcept { return classes_; }

    bool has_class(std::string_view class_label) const;
    std::optional<std::size_t> column_of(const FeatureName& feature) const;

    /// nullopt when the class or the feature column is unknown.
    std::optional<Policy> policy_of(std::string_view class_label, const FeatureName& feature) const;

    /// Row of policies for a class, aligned with features(); empty span when unknown.
    std::span<const Policy> policies(std::string_view class_label) const;

    friend bool operator==(const TableOfClasses& a, const TableOfClasses& b);

private:
    std::string corner_;
    std::string source_;
    std::vector<FeatureName> features_;
    std::vector<std::string> classes_;
    std::vector<std::vector<Policy>> grid_;
    std::unordered_map<std::string, std::size_t> feature_index_;
    std::unordered_map<std::string, std::size_t> class_index_;
};

std::optional<Policy> policy_of(const TableOfClasses& toc, std::string_view class_label,
                                const FeatureName& feature);

struct TableFormat {
    char delimiter = '\t';
    std::string source_name = "<table>";
};

ClassTable parse_class_table(std::string_view text, std::string class_label,
                             const TableFormat& format = {});

TableOfClasses parse_table_of_classes(std::string_view text, const TableFormat& format = {});

std::string serialize(const ClassTable& table, char delimiter = '\t');
std::string serialize(const TableOfClasses& toc, char delimiter = '\t');

/// One manifest line: `class_label<TAB>path<TAB>category`.
struct ManifestEntry {
    std::string class_label;
    std::filesystem::path path; // resolved against the manifest directory
    std::string category;
    std::size_t line = 0;
};

std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir,
                                          const std::string& source_name = "<manifest>");

struct LoadedClass {
    ManifestEntry manifest;
    ClassTable table;
};

/// Reads and parses every class table named by the manifest, in manifest order.
std::vector<LoadedClass> load_classes(std::span<const ManifestEntry> manifest, char delimiter = '\t');

} // namespace lgx

template <>
struct std::hash<lgx::FeatureName> {
    std::size_t operator()(const lgx::FeatureName& f) const noexcept {
        return std::hash<std::string>{}(f.str());
    }
};

#endif
