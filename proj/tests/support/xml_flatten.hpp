#ifndef LGX_TEST_XML_FLATTEN_HPP
#define LGX_TEST_XML_FLATTEN_HPP

#include "compact_reader.hpp"

#include "lgx/emit.hpp"

#include <map>
#include <string>
#include <string_view>

namespace lgx::test {

/// Flattens each <entry> of an emitted document into the same (path, value) form as
/// flatten_compact. XML renames from `map` are undone so paths use script names.
std::map<std::string, FlatPairs> flatten_xml(std::string_view xml, const OutputMap& map);

/// Checks a document against a schema written by emit_schema: root <lexicon>, <entry>
/// children with unique id attributes, and section elements drawn from the schema's
/// sequence, in order, at most once each. Returns the first problem, or "".
std::string validate_xml(std::string_view xml, std::string_view xsd);

} // namespace lgx::test

#endif
