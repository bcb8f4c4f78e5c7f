#ifndef LGX_EMIT_HPP
#define LGX_EMIT_HPP

#include "lgx/error.hpp"
#include "lgx/extract.hpp"
#include "lgx/script.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgx {

/// `section KEY = PATH;` or `section KEY = PATH if CATEGORY;`
struct SectionRule {
    std::string key;
    ObjectPath path;
    std::optional<std::string> category;
    SourceLocation location;
};

/// How records map onto output: ordered entry sections plus XML renames.
struct OutputMap {
    std::vector<SectionRule> sections;
    std::map<std::string, std::string> xml_names; // `xml KEY = "name";`

    /// Distinct section keys in order of first appearance.
    std::vector<std::string> section_keys() const;
    /// First rule for `key` whose category matches, or an unqualified one.
    const SectionRule* rule_for(std::string_view key, std::string_view category) const;
    std::string xml_name(std::string_view key) const;
};

OutputMap parse_output_map(std::string_view text, const std::string& source_name = "<output-map>");

/// Throws ParseError when a section path head names no definition of the script.
void validate_output_map(const OutputMap& map, const ScriptAst& ast);

class EmitError : public Error {
public:
    using Error::Error;
};

/// Compact text of one record: `ID=<id>` then one `key=[...]` or `key=(...)` block per section.
std::string emit_compact(const EntryRecord& record, const OutputMap& map);

/// All records, separated by blank lines.
std::string emit_compact(const Lexicon& lexicon, const OutputMap& map);

/// XML document rooted at <lexicon>. Throws EmitError listing every mapped name that
/// is not a valid XML name.
std::string emit_xml(const Lexicon& lexicon, const OutputMap& map);

/// XML Schema for documents produced by emit_xml under `map`.
std::string emit_schema(const OutputMap& map);

bool is_xml_name(std::string_view name);

} // namespace lgx

#endif
