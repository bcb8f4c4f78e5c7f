#include "lgx/emit.hpp"
#include "lgx/text.hpp"
#include "scanner.hpp"

#include <algorithm>
#include <set>

namespace lgx {

using detail::Scanner;

std::vector<std::string> OutputMap::section_keys() const {
    std::vector<std::string> keys;
    for (const auto& rule : sections)
        if (std::find(keys.begin(), keys.end(), rule.key) == keys.end()) keys.push_back(rule.key);
    return keys;
}

const SectionRule* OutputMap::rule_for(std::string_view key, std::string_view category) const {
    for (const auto& rule : sections)
        if (rule.key == key && (!rule.category || *rule.category == category)) return &rule;
    return nullptr;
}

std::string OutputMap::xml_name(std::string_view key) const {
    const auto it = xml_names.find(std::string(key));
    return it == xml_names.end() ? std::string(key) : it->second;
}

OutputMap parse_output_map(std::string_view text, const std::string& source_name) {
    OutputMap map;
    Scanner scan(text, source_name);
    std::map<std::string, std::string> renamed_from;
    while (!scan.at_end()) {
        const auto where = scan.location();
        const auto word = scan.ident("'section' or 'xml'");
        if (word == "section") {
            SectionRule rule;
            rule.location = where;
            rule.key = scan.ident("section key");
            scan.expect('=', "after section key");
            rule.path.segments.push_back(scan.ident("definition name"));
            while (scan.try_consume('.')) rule.path.segments.push_back(scan.ident("attribute name"));
            if (scan.peek_ident_char()) {
                const auto if_where = (scan.skip_trivia(), scan.location());
                if (scan.ident("'if'") != "if") Scanner::error_at(if_where, "expected 'if' or ';'");
                rule.category = scan.ident("category");
            }
            scan.expect(';', "after section rule");
            for (const auto& other : map.sections)
                if (other.key == rule.key && other.category == rule.category)
                    Scanner::error_at(where, "section '" + rule.key + "' already has a rule for " +
                                                 (rule.category ? "category " + *rule.category : "every category") +
                                                 " (at " + other.location.str() + ")");
            map.sections.push_back(std::move(rule));
        } else if (word == "xml") {
            const auto key = scan.ident("name to rename");
            scan.expect('=', "after name");
            const auto name = scan.quoted();
            scan.expect(';', "after xml rename");
            if (map.xml_names.contains(key)) Scanner::error_at(where, "'" + key + "' is renamed twice");
            if (const auto it = renamed_from.find(name); it != renamed_from.end())
                Scanner::error_at(where, "'" + key + "' and '" + it->second + "' are both renamed to '" + name + "'");
            renamed_from.emplace(name, key);
            map.xml_names.emplace(key, name);
        } else {
            Scanner::error_at(where, "expected 'section' or 'xml', found '" + word + "'");
        }
    }
    return map;
}

void validate_output_map(const OutputMap& map, const ScriptAst& ast) {
    for (const auto& rule : map.sections)
        if (!ast.find(rule.path.head()))
            Scanner::error_at(rule.location,
                              "section '" + rule.key + "' refers to undefined object '" + rule.path.head() + "'");
}

namespace {

/// Value of a section for one record, or nullptr when no rule applies to its category.
const Value* section_value(const EntryRecord& record, const SectionRule& rule, Value& holder) {
    const auto it = record.objects.find(rule.path.head());
    if (it == record.objects.end())
        throw EmitError("entry " + record.id + ": section '" + rule.key + "' refers to undefined object '" +
                        rule.path.head() + "'");
    holder = Nested(it->second);
    const Value* current = &holder;
    for (std::size_t i = 1; i < rule.path.segments.size(); ++i) {
        const auto* nested = std::get_if<Nested>(current);
        const Value* next = nested ? nested->get().find(rule.path.segments[i]) : nullptr;
        if (!next)
            throw EmitError("entry " + record.id + ": section '" + rule.key + "' path " + rule.path.str() +
                            " does not reach an attribute");
        current = next;
    }
    if (is_scalar(*current))
        throw EmitError("entry " + record.id + ": section '" + rule.key + "' path " + rule.path.str() +
                        " is a scalar; sections must be objects or sets");
    return current;
}

std::string scalar_text(const Value& value) {
    if (const auto* t = std::get_if<Text>(&value)) return t->value;
    return std::get<Disjunction>(value).joined();
}

/// Set elements whose only attribute is named after their kind print as `kind="text"`.
const Value* shorthand(const LinguisticObject& object) {
    if (object.attributes().size() != 1) return nullptr;
    const auto& [name, value] = object.attributes().front();
    if (name != object.kind() || !is_scalar(value) || scalar_text(value).empty()) return nullptr;
    return &value;
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

class CompactWriter {
public:
    std::string out;

    void structure(const Value& value, std::size_t depth) {
        if (const auto* nested = std::get_if<Nested>(&value)) {
            out += '[';
            const auto& attrs = nested->get().attributes();
            for (std::size_t i = 0; i < attrs.size(); ++i) {
                separator(i, !is_scalar(attrs[i].second), depth);
                item(attrs[i].first, attrs[i].second, depth);
            }
            out += ']';
        } else {
            out += '(';
            const auto& elements = std::get<ObjectSet>(value).elements();
            for (std::size_t i = 0; i < elements.size(); ++i) {
                separator(i, true, depth);
                if (const auto* s = shorthand(elements[i]))
                    item(elements[i].kind(), *s, depth);
                else
                    item(elements[i].kind(), Nested(elements[i]), depth);
            }
            out += ')';
        }
    }

private:
    void separator(std::size_t index, bool new_line, std::size_t depth) {
        if (index == 0) return;
        out += ',';
        if (new_line) out += '\n' + std::string(2 * depth, ' ');
    }

    void item(const std::string& key, const Value& value, std::size_t depth) {
        out += key + '=';
        if (is_scalar(value))
            out += quote(scalar_text(value));
        else
            structure(value, depth + 1);
    }
};

std::string escape_xml(std::string_view s, bool attribute) {
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += attribute ? "&quot;" : "\""; break;
        case '\n': out += attribute ? "&#10;" : "\n"; break;
        case '\t': out += attribute ? "&#9;" : "\t"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
    return out;
}

class XmlWriter {
public:
    XmlWriter(const OutputMap& map) : map_(map) {}

    std::string out;
    std::set<std::string> bad_names;

    void element(const std::string& key, const Value& value, std::size_t depth) {
        const auto name = checked(key);
        const std::string pad(2 * depth, ' ');
        out += pad + '<' + name;
        std::vector<std::pair<std::string, const Value*>> children;
        if (const auto* nested = std::get_if<Nested>(&value)) {
            for (const auto& [attr, v] : nested->get().attributes()) {
                if (is_scalar(v))
                    out += ' ' + checked(attr) + "=\"" + escape_xml(scalar_text(v), true) + '"';
                else
                    children.emplace_back(attr, &v);
            }
            if (children.empty()) {
                out += "/>\n";
                return;
            }
            out += ">\n";
            for (const auto& [attr, v] : children) element(attr, *v, depth + 1);
        } else {
            const auto& elements = std::get<ObjectSet>(value).elements();
            if (elements.empty()) {
                out += "/>\n";
                return;
            }
            out += ">\n";
            for (const auto& e : elements) {
                if (const auto* s = shorthand(e))
                    out += pad + "  <" + checked(e.kind()) + '>' + escape_xml(scalar_text(*s), false) + "</" +
                           checked(e.kind()) + ">\n";
                else
                    element(e.kind(), Nested(e), depth + 1);
            }
        }
        out += pad + "</" + name + ">\n";
    }

    std::string checked(const std::string& key) {
        auto name = map_.xml_name(key);
        if (!is_xml_name(name)) bad_names.insert(name);
        return name;
    }

private:
    const OutputMap& map_;
};

} // namespace

std::string emit_compact(const EntryRecord& record, const OutputMap& map) {
    std::string out = "ID=" + record.id + '\n';
    for (const auto& key : map.section_keys()) {
        const auto* rule = map.rule_for(key, record.category);
        if (!rule) continue;
        Value holder = Text{};
        CompactWriter writer;
        writer.out = key + '=';
        writer.structure(*section_value(record, *rule, holder), 1);
        out += writer.out + '\n';
    }
    return out;
}

std::string emit_compact(const Lexicon& lexicon, const OutputMap& map) {
    std::string out;
    for (std::size_t i = 0; i < lexicon.entries.size(); ++i) {
        if (i) out += '\n';
        out += emit_compact(lexicon.entries[i], map);
    }
    return out;
}

bool is_xml_name(std::string_view name) {
    if (name.empty()) return false;
    const auto start_ok = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || static_cast<unsigned char>(c) >= 0x80;
    };
    if (!start_ok(name.front())) return false;
    for (const char c : name)
        if (!start_ok(c) && !(c >= '0' && c <= '9') && c != '-' && c != '.') return false;
    return !text::to_lower_ascii(name.substr(0, 3)).starts_with("xml");
}

std::string emit_xml(const Lexicon& lexicon, const OutputMap& map) {
    XmlWriter writer(map);
    writer.out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (lexicon.entries.empty()) {
        writer.out += "<lexicon/>\n";
        return writer.out;
    }
    writer.out += "<lexicon>\n";
    for (const auto& record : lexicon.entries) {
        writer.out += "  <entry id=\"" + escape_xml(record.id, true) + "\">\n";
        for (const auto& key : map.section_keys()) {
            const auto* rule = map.rule_for(key, record.category);
            if (!rule) continue;
            Value holder = Text{};
            writer.element(key, *section_value(record, *rule, holder), 2);
        }
        writer.out += "  </entry>\n";
    }
    writer.out += "</lexicon>\n";
    if (!writer.bad_names.empty()) {
        std::string names;
        for (const auto& n : writer.bad_names) names += (names.empty() ? "'" : ", '") + n + "'";
        throw EmitError("invalid XML names: " + names);
    }
    return writer.out;
}

std::string emit_schema(const OutputMap& map) {
    std::string bad;
    for (const auto& key : map.section_keys())
        if (!is_xml_name(map.xml_name(key))) bad += (bad.empty() ? "'" : ", '") + map.xml_name(key) + "'";
    if (!bad.empty()) throw EmitError("invalid XML names: " + bad);

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<xs:schema xmlns:xs=\"http://www.w3.org/2001/XMLSchema\" elementFormDefault=\"qualified\">\n"
                      "  <xs:complexType name=\"open\" mixed=\"true\">\n"
                      "    <xs:sequence>\n"
                      "      <xs:any processContents=\"skip\" minOccurs=\"0\" maxOccurs=\"unbounded\"/>\n"
                      "    </xs:sequence>\n"
                      "    <xs:anyAttribute processContents=\"skip\"/>\n"
                      "  </xs:complexType>\n"
                      "  <xs:element name=\"lexicon\">\n"
                      "    <xs:complexType>\n"
                      "      <xs:sequence>\n"
                      "        <xs:element name=\"entry\" minOccurs=\"0\" maxOccurs=\"unbounded\">\n"
                      "          <xs:complexType>\n"
                      "            <xs:sequence>\n";
    for (const auto& key : map.section_keys())
        out += "              <xs:element name=\"" + map.xml_name(key) + "\" type=\"open\" minOccurs=\"0\"/>\n";
    out += "            </xs:sequence>\n"
           "            <xs:attribute name=\"id\" type=\"xs:ID\" use=\"required\"/>\n"
           "          </xs:complexType>\n"
           "        </xs:element>\n"
           "      </xs:sequence>\n"
           "    </xs:complexType>\n"
           "  </xs:element>\n"
           "</xs:schema>\n";
    return out;
}

} // namespace lgx
