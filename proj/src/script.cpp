#include "lgx/script.hpp"
#include "lgx/text.hpp"
#include "scanner.hpp"

#include <map>

namespace lgx {

using detail::Scanner;

QuotedString QuotedString::parse(std::string_view contents) {
    QuotedString out;
    std::size_t start = 0;
    bool inside = false;
    while (true) {
        const auto at = contents.find('@', start);
        const auto piece = contents.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start);
        if (inside) {
            if (at == std::string_view::npos) throw Error("unterminated placeholder in \"" + std::string(contents) + "\"");
            FeatureName feature{piece};
            if (feature.empty()) throw Error("empty placeholder in \"" + std::string(contents) + "\"");
            out.parts.push_back({true, feature.str()});
        } else if (!piece.empty()) {
            out.parts.push_back({false, text::nfc(piece)});
        }
        if (at == std::string_view::npos) break;
        inside = !inside;
        start = at + 1;
    }
    return out;
}

bool QuotedString::has_placeholders() const {
    for (const auto& p : parts)
        if (p.placeholder) return true;
    return false;
}

std::string QuotedString::raw() const {
    std::string out;
    for (const auto& p : parts) {
        if (p.placeholder) out += '@';
        out += p.text;
        if (p.placeholder) out += '@';
    }
    return out;
}

std::string ObjectPath::str() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += '.';
        out += segments[i];
    }
    return out;
}

const Definition* ScriptAst::find(std::string_view name) const {
    for (const auto& d : definitions)
        if (d.name == name) return &d;
    return nullptr;
}

namespace {

void collect_placeholders(const TemplateValue& value, std::set<FeatureName>& out) {
    if (const auto* s = std::get_if<QuotedString>(&value.value)) {
        for (const auto& p : s->parts)
            if (p.placeholder) out.insert(FeatureName{p.text});
    } else if (const auto* tuple = std::get_if<std::vector<TemplateValue>>(&value.value)) {
        for (const auto& v : *tuple) collect_placeholders(v, out);
    }
}

class Parser {
public:
    Parser(std::string_view text, const std::string& file) : scan_(text, file) {}

    ScriptAst parse() {
        ScriptAst ast;
        std::map<std::string, SourceLocation> defined;
        std::map<std::string, SourceLocation> features;
        while (!scan_.at_end()) {
            const auto where = scan_.location();
            const auto word = scan_.ident("'define' or 'prop'");
            if (word == "define") {
                auto def = definition(where);
                if (def.parent && !defined.contains(*def.parent))
                    Scanner::error_at(def.location, "parent '" + *def.parent + "' of '" + def.name +
                                                        "' is not defined earlier in the script");
                if (const auto it = defined.find(def.name); it != defined.end())
                    Scanner::error_at(def.location,
                                      "duplicate definition '" + def.name + "' (first at " + it->second.str() + ")");
                defined.emplace(def.name, def.location);
                ast.definitions.push_back(std::move(def));
            } else if (word == "prop") {
                auto block = prop(where);
                if (const auto it = features.find(block.feature.str()); it != features.end())
                    Scanner::error_at(block.location, "duplicate prop block for feature '" + block.feature.str() +
                                                          "' (first at " + it->second.str() + ")");
                features.emplace(block.feature.str(), block.location);
                ast.prop_blocks.push_back(std::move(block));
            } else {
                Scanner::error_at(where, "expected 'define' or 'prop', found '" + word + "'");
            }
        }
        return ast;
    }

private:
    Definition definition(const SourceLocation& where) {
        Definition def;
        def.location = where;
        def.kind = scan_.ident("definition kind");
        def.name = scan_.ident("definition name");
        if (scan_.peek() != '[' && scan_.peek() != '{') def.parent = scan_.ident("parent name or body");
        def.body = body();
        // The closing ';' may only be left out on the last statement of the file.
        if (!scan_.try_consume(';') && !scan_.at_end()) scan_.error("expected ';' after definition '" + def.name + "'");
        return def;
    }

    TemplateBody body() {
        TemplateBody out;
        char close = ']';
        if (scan_.try_consume('[')) {
            out.style = BodyStyle::Bracket;
        } else if (scan_.try_consume('{')) {
            out.style = BodyStyle::Brace;
            close = '}';
        } else {
            scan_.error("expected '[' or '{' to open a body");
        }
        if (scan_.try_consume(close)) return out;
        while (true) {
            TemplatePair pair;
            pair.attribute = scan_.ident("attribute name");
            for (const auto& existing : out.pairs)
                if (existing.attribute == pair.attribute) scan_.error("duplicate attribute '" + pair.attribute + "'");
            scan_.expect('=', "after attribute '" + pair.attribute + "'");
            pair.value = value();
            out.pairs.push_back(std::move(pair));
            if (scan_.try_consume(close)) return out;
            scan_.expect(',', "between attributes");
        }
    }

    TemplateValue value() {
        TemplateValue out;
        scan_.skip_trivia();
        out.location = scan_.location();
        const char c = scan_.peek();
        if (c == '"') {
            const auto contents = scan_.quoted();
            try {
                out.value = QuotedString::parse(contents);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                Scanner::error_at(out.location, e.what());
            }
        } else if (c == '(') {
            scan_.expect('(', "");
            std::vector<TemplateValue> items;
            if (!scan_.try_consume(')')) {
                while (true) {
                    items.push_back(value());
                    if (scan_.try_consume(')')) break;
                    scan_.expect(',', "between set elements");
                }
            }
            out.value = std::move(items);
        } else {
            out.value = ObjectRef{scan_.ident("a string, object name or '('")};
        }
        return out;
    }

    PropBlock prop(const SourceLocation& where) {
        PropBlock block;
        block.location = where;
        scan_.expect('@', "before the prop feature");
        block.feature = FeatureName{scan_.raw_until('@', "prop feature")};
        if (block.feature.empty()) Scanner::error_at(where, "empty prop feature");
        scan_.expect('{', "to open the prop block");
        while (!scan_.try_consume('}')) {
            AddOp op;
            scan_.skip_trivia();
            op.location = scan_.location();
            const auto word = scan_.ident("'add' or '}'");
            if (word != "add") Scanner::error_at(op.location, "expected 'add', found '" + word + "'");
            op.source = path();
            const auto in_where = (scan_.skip_trivia(), scan_.location());
            if (scan_.ident("'in'") != "in") Scanner::error_at(in_where, "expected 'in'");
            op.target = path();
            scan_.expect(';', "after add operation");
            block.ops.push_back(std::move(op));
        }
        if (block.ops.empty()) Scanner::error_at(where, "prop block for '" + block.feature.str() + "' has no operations");
        scan_.try_consume(';');
        return block;
    }

    ObjectPath path() {
        ObjectPath out;
        out.segments.push_back(scan_.ident("object name"));
        while (scan_.try_consume('.')) out.segments.push_back(scan_.ident("attribute name"));
        return out;
    }

    Scanner scan_;
};

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void print_value(const TemplateValue& value, std::string& out) {
    if (const auto* s = std::get_if<QuotedString>(&value.value)) {
        out += quote(s->raw());
    } else if (const auto* ref = std::get_if<ObjectRef>(&value.value)) {
        out += ref->name;
    } else {
        const auto& items = std::get<std::vector<TemplateValue>>(value.value);
        out += '(';
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out += ',';
            print_value(items[i], out);
        }
        out += ')';
    }
}

} // namespace

std::set<FeatureName> ScriptAst::placeholder_features() const {
    std::set<FeatureName> out;
    for (const auto& def : definitions)
        for (const auto& pair : def.body.pairs) collect_placeholders(pair.value, out);
    return out;
}

std::set<FeatureName> ScriptAst::referenced_features() const {
    auto out = placeholder_features();
    for (const auto& block : prop_blocks) out.insert(block.feature);
    return out;
}

ScriptAst parse_script(std::string_view text, const std::string& source_name) {
    return Parser(text, source_name).parse();
}

std::string unparse(const ScriptAst& ast) {
    std::string out;
    for (const auto& def : ast.definitions) {
        out += "define " + def.kind + ' ' + def.name;
        if (def.parent) out += ' ' + *def.parent;
        const bool brace = def.body.style == BodyStyle::Brace;
        out += brace ? " {" : " [";
        for (std::size_t i = 0; i < def.body.pairs.size(); ++i) {
            if (i) out += ',';
            out += def.body.pairs[i].attribute + '=';
            print_value(def.body.pairs[i].value, out);
        }
        out += brace ? "};\n" : "];\n";
    }
    for (const auto& block : ast.prop_blocks) {
        if (!out.empty()) out += '\n';
        out += "prop @" + block.feature.str() + "@ {\n";
        for (const auto& op : block.ops) out += "  add " + op.source.str() + " in " + op.target.str() + ";\n";
        out += "}\n";
    }
    return out;
}

namespace {

void check_value_refs(const TemplateValue& value, const ScriptAst& ast, const Definition& def,
                      const std::set<std::string>& known, const std::string& file, std::vector<Diagnostic>& out) {
    if (const auto* s = std::get_if<QuotedString>(&value.value)) {
        for (const auto& p : s->parts) {
            if (p.placeholder && !known.contains(p.text))
                out.push_back({Severity::Warning, std::string(codes::UnknownFeature), {file, {}, {}, p.text},
                               "placeholder in '" + def.name + "' (" + value.location.str() +
                                   ") names a feature found in no table"});
        }
    } else if (const auto* ref = std::get_if<ObjectRef>(&value.value)) {
        if (!ast.find(ref->name))
            out.push_back({Severity::Error, std::string(codes::UndefinedObject), {file, {}, {}, {}},
                           "'" + def.name + "' references undefined object '" + ref->name + "' (" +
                               value.location.str() + ")"});
    } else {
        for (const auto& v : std::get<std::vector<TemplateValue>>(value.value))
            check_value_refs(v, ast, def, known, file, out);
    }
}

} // namespace

std::vector<Diagnostic> check_references(const ScriptAst& ast, const TableOfClasses& toc,
                                         std::span<const ClassTable> class_tables, const std::string& script_file) {
    std::set<std::string> known;
    for (const auto& f : toc.features()) known.insert(f.str());
    for (const auto& table : class_tables)
        for (const auto& f : table.features()) known.insert(f.str());

    std::vector<Diagnostic> out;
    for (const auto& def : ast.definitions)
        for (const auto& pair : def.body.pairs) check_value_refs(pair.value, ast, def, known, script_file, out);

    for (const auto& block : ast.prop_blocks) {
        if (!known.contains(block.feature.str()))
            out.push_back({Severity::Warning, std::string(codes::UnknownFeature),
                           {script_file, {}, {}, block.feature.str()},
                           "prop block (" + block.location.str() + ") names a feature found in no table"});
        for (const auto& op : block.ops) {
            for (const auto* p : {&op.source, &op.target}) {
                if (!ast.find(p->head()))
                    out.push_back({Severity::Error, std::string(codes::UndefinedObject),
                                   {script_file, {}, {}, block.feature.str()},
                                   "path '" + p->str() + "' (" + op.location.str() + ") names no definition"});
            }
        }
    }
    return out;
}

} // namespace lgx
