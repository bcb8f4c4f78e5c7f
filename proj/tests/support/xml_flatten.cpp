#include "xml_flatten.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <set>
#include <sstream>
#include <vector>

namespace lgx::test {

namespace pt = boost::property_tree;

namespace {

pt::ptree parse(std::string_view xml) {
    std::istringstream in{std::string(xml)};
    pt::ptree tree;
    pt::read_xml(in, tree);
    return tree;
}

class Flattener {
public:
    explicit Flattener(const OutputMap& map) {
        for (const auto& [from, to] : map.xml_names) back_.emplace(to, from);
    }

    void element(const std::string& name, const pt::ptree& node, const std::string& prefix, FlatPairs& out) const {
        const auto path = prefix.empty() ? original(name) : prefix + '/' + original(name);
        bool structured = false;
        for (const auto& [child_name, child] : node) {
            if (child_name == "<xmlattr>") {
                structured = true;
                for (const auto& [attr, value] : child) out.emplace(path + '/' + original(attr), value.data());
            } else if (child_name != "<xmlcomment>") {
                structured = true;
                element(child_name, child, path, out);
            }
        }
        if (!structured && !node.data().empty()) out.emplace(path, node.data());
    }

private:
    std::string original(const std::string& name) const {
        const auto it = back_.find(name);
        return it == back_.end() ? name : it->second;
    }

    std::map<std::string, std::string> back_;
};

} // namespace

std::map<std::string, FlatPairs> flatten_xml(std::string_view xml, const OutputMap& map) {
    const auto tree = parse(xml);
    const Flattener flattener(map);
    std::map<std::string, FlatPairs> out;
    for (const auto& [name, entry] : tree.get_child("lexicon")) {
        if (name != "entry") continue;
        const auto id = entry.get<std::string>("<xmlattr>.id");
        FlatPairs pairs;
        pairs.emplace("ID", id);
        for (const auto& [section, node] : entry)
            if (section != "<xmlattr>") flattener.element(section, node, "", pairs);
        out.emplace(id, std::move(pairs));
    }
    return out;
}

std::string validate_xml(std::string_view xml, std::string_view xsd) {
    pt::ptree doc;
    pt::ptree schema;
    try {
        doc = parse(xml);
        schema = parse(xsd);
    } catch (const pt::xml_parser_error& e) {
        return std::string("not well-formed: ") + e.what();
    }

    std::vector<std::string> sections;
    try {
        const auto& root = schema.get_child("xs:schema");
        for (const auto& [tag, element] : root) {
            if (tag != "xs:element" || element.get<std::string>("<xmlattr>.name") != "lexicon") continue;
            const auto& entry = element.get_child("xs:complexType.xs:sequence.xs:element");
            if (entry.get<std::string>("<xmlattr>.name") != "entry") return "schema: lexicon must contain entry";
            for (const auto& [t, s] : entry.get_child("xs:complexType.xs:sequence"))
                if (t == "xs:element") sections.push_back(s.get<std::string>("<xmlattr>.name"));
        }
    } catch (const pt::ptree_error& e) {
        return std::string("schema: ") + e.what();
    }

    if (doc.size() != 1 || doc.begin()->first != "lexicon") return "root element must be <lexicon>";
    std::set<std::string> ids;
    for (const auto& [name, entry] : doc.begin()->second) {
        if (name == "<xmlattr>") return "<lexicon> takes no attributes";
        if (name != "entry") return "unexpected element <" + name + "> in <lexicon>";
        const auto id = entry.get_optional<std::string>("<xmlattr>.id");
        if (!id) return "entry without id";
        if (!ids.insert(*id).second) return "duplicate id " + *id;
        std::size_t next = 0;
        for (const auto& [section, node] : entry) {
            if (section == "<xmlattr>") continue;
            while (next < sections.size() && sections[next] != section) ++next;
            if (next == sections.size()) return "entry " + *id + ": unexpected or misplaced <" + section + ">";
            ++next;
        }
    }
    return {};
}

} // namespace lgx::test
