#include "lgx/extract.hpp"
#include "lgx/text.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace lgx {

std::size_t CompiledScript::index_of(std::string_view name) const {
    const auto it = std::find(order.begin(), order.end(), name);
    return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
}

namespace {

void collect_refs(const TemplateValue& value, std::vector<std::string>& out) {
    if (const auto* ref = std::get_if<ObjectRef>(&value.value)) {
        out.push_back(ref->name);
    } else if (const auto* tuple = std::get_if<std::vector<TemplateValue>>(&value.value)) {
        for (const auto& v : *tuple) collect_refs(v, out);
    }
}

std::vector<std::string> template_refs(const TemplateBody& body) {
    std::vector<std::string> out;
    for (const auto& pair : body.pairs) collect_refs(pair.value, out);
    return out;
}

struct ActiveOp {
    std::size_t rank;
    const PropBlock* block;
    const AddOp* op;

    auto key() const { return std::tie(rank, block->feature, op->target, op->source); }
};

/// Evaluation of every definition for one entry.
class Evaluator {
public:
    Evaluator(const CompiledScript& script, const EntryContext& ctx) : script_(script), ctx_(ctx) {}

    ObjectMap run(std::vector<ActiveOp> ops) {
        const auto n = script_.order.size();
        std::vector<std::vector<std::size_t>> deps(n);
        std::vector<std::vector<ActiveOp>> by_target(n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& ref : template_refs(script_.templates.at(script_.order[i])))
                deps[i].push_back(script_.index_of(ref));
        for (const auto& op : ops) {
            const auto target = checked_index(op, op.op->target);
            const auto source = checked_index(op, op.op->source);
            deps[target].push_back(source);
            by_target[target].push_back(op);
        }

        // Kahn's algorithm; ties broken by script order so the evaluation order is stable.
        std::vector<std::vector<std::size_t>> dependents(n);
        std::vector<std::size_t> pending(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::sort(deps[i].begin(), deps[i].end());
            deps[i].erase(std::unique(deps[i].begin(), deps[i].end()), deps[i].end());
            pending[i] = deps[i].size();
            for (const auto d : deps[i]) dependents[d].push_back(i);
        }
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
        for (std::size_t i = 0; i < n; ++i)
            if (pending[i] == 0) ready.push(i);

        ObjectMap finals;
        std::size_t done = 0;
        while (!ready.empty()) {
            const auto i = ready.top();
            ready.pop();
            const auto& name = script_.order[i];
            LinguisticObject object = instantiate(name, finals);
            for (const auto& op : by_target[i]) object = apply(object, op, finals);
            finals.emplace(name, std::move(object));
            ++done;
            for (const auto d : dependents[i])
                if (--pending[d] == 0) ready.push(d);
        }
        if (done != n) {
            std::string cycle;
            for (std::size_t i = 0; i < n; ++i)
                if (pending[i] != 0) cycle += (cycle.empty() ? "" : ", ") + script_.order[i];
            throw EntryFailure(who() + ": add operations form a cycle through " + cycle);
        }
        return finals;
    }

private:
    std::string who() const { return "entry " + (ctx_.entry_id.empty() ? ctx_.class_label : ctx_.entry_id); }

    std::string where(const ActiveOp& op) const {
        return who() + ", prop @" + op.block->feature.str() + "@, add " + op.op->source.str() + " in " +
               op.op->target.str();
    }

    std::size_t checked_index(const ActiveOp& op, const ObjectPath& path) const {
        const auto idx = script_.index_of(path.head());
        if (idx == script_.order.size()) throw EntryFailure(where(op) + ": '" + path.head() + "' names no definition");
        return idx;
    }

    LinguisticObject instantiate(const std::string& name, const ObjectMap& finals) const {
        const auto& def = *script_.ast.find(name);
        const auto& body = script_.templates.at(name);
        std::vector<LinguisticObject::Attribute> attrs;
        attrs.reserve(body.pairs.size());
        for (const auto& pair : body.pairs) {
            if (const auto* s = std::get_if<QuotedString>(&pair.value.value)) {
                attrs.emplace_back(pair.attribute, Text{substitute(*s, ctx_)});
            } else if (const auto* ref = std::get_if<ObjectRef>(&pair.value.value)) {
                attrs.emplace_back(pair.attribute, Nested(finals.at(ref->name)));
            } else {
                ObjectSet set;
                for (const auto& item : std::get<std::vector<TemplateValue>>(pair.value.value))
                    set = add_elem(set, finals.at(std::get<ObjectRef>(item.value).name));
                attrs.emplace_back(pair.attribute, std::move(set));
            }
        }
        return LinguisticObject(def.kind, std::move(attrs));
    }

    /// Inserts (name, value) at the location `segments` inside `object`.
    LinguisticObject place(const LinguisticObject& object, std::span<const std::string> segments,
                           const std::string& name, const Value& value, const ActiveOp& op) const {
        const auto& attr = segments.front();
        const Value* existing = object.find(attr);
        if (!existing) throw EntryFailure(where(op) + ": attribute '" + attr + "' does not exist");

        if (segments.size() > 1) {
            const auto* nested = std::get_if<Nested>(existing);
            if (!nested)
                throw EntryFailure(where(op) + ": cannot descend into " + std::string(value_kind(*existing)) +
                                   " attribute '" + attr + "'");
            return object.with(attr, Nested(place(nested->get(), segments.subspan(1), name, value, op)));
        }
        if (const auto* set = std::get_if<ObjectSet>(existing)) {
            if (const auto* incoming = std::get_if<Nested>(&value)) return object.with(attr, add_elem(*set, incoming->get()));
            if (std::holds_alternative<ObjectSet>(value)) return add_value(object, attr, value);
            throw TypeConflict(attr, "set", std::string(value_kind(value)));
        }
        if (is_scalar(*existing)) return add_value(object, attr, value);
        const auto& nested = std::get<Nested>(*existing);
        return object.with(attr, Nested(add_value(nested.get(), name, value)));
    }

    LinguisticObject apply(const LinguisticObject& object, const ActiveOp& op, const ObjectMap& finals) const {
        const auto& source = op.op->source.segments;
        const auto& target = op.op->target.segments;
        try {
            // The source denotes a pair: (kind, object) for a bare definition name,
            // (last attribute, its value) for a dotted path.
            const LinguisticObject* cursor = &finals.at(source.front());
            std::string name = cursor->kind();
            Value value = Nested(*cursor);
            for (std::size_t i = 1; i < source.size(); ++i) {
                const Value* v = cursor->find(source[i]);
                if (!v) throw EntryFailure(where(op) + ": source attribute '" + source[i] + "' does not exist");
                name = source[i];
                value = *v;
                if (i + 1 < source.size()) {
                    const auto* nested = std::get_if<Nested>(v);
                    if (!nested)
                        throw EntryFailure(where(op) + ": cannot descend into " + std::string(value_kind(*v)) +
                                           " attribute '" + source[i] + "'");
                    cursor = &nested->get();
                }
            }
            if (target.size() == 1) return add_value(object, name, value);
            return place(object, std::span(target).subspan(1), name, value, op);
        } catch (const EntryFailure&) {
            throw;
        } catch (const Error& e) {
            throw EntryFailure(where(op) + ": " + e.what());
        }
    }

    const CompiledScript& script_;
    const EntryContext& ctx_;
};

} // namespace

CompiledScript compile_script(ScriptAst ast) {
    CompiledScript out;
    out.templates = resolve_inheritance(ast.definitions);
    for (const auto& def : ast.definitions) out.order.push_back(def.name);
    out.needed = ast.referenced_features();

    for (const auto& def : ast.definitions) {
        for (const auto& pair : out.templates.at(def.name).pairs) {
            const auto check = [&](const TemplateValue& v) {
                if (const auto* ref = std::get_if<ObjectRef>(&v.value); ref && !ast.find(ref->name))
                    throw ParseError(v.location, "'" + def.name + "' references undefined object '" + ref->name + "'");
            };
            check(pair.value);
            if (const auto* tuple = std::get_if<std::vector<TemplateValue>>(&pair.value.value)) {
                for (const auto& item : *tuple) {
                    if (!std::holds_alternative<ObjectRef>(item.value))
                        throw ParseError(item.location, "set elements of '" + def.name + "." + pair.attribute +
                                                            "' must be object names");
                    check(item);
                }
            }
        }
    }

    // Template references alone must not be cyclic; add-operations are checked per entry.
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> marks;
    std::vector<std::string> stack;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        auto& mark = marks[name];
        if (mark == Mark::Done) return;
        if (mark == Mark::Active) {
            std::string cycle;
            for (auto it = std::find(stack.begin(), stack.end(), name); it != stack.end(); ++it) cycle += *it + " -> ";
            throw ParseError(ast.find(name)->location, "cyclic object reference: " + cycle + name);
        }
        mark = Mark::Active;
        stack.push_back(name);
        for (const auto& ref : template_refs(out.templates.at(name))) visit(ref);
        stack.pop_back();
        marks[name] = Mark::Done;
    };
    for (const auto& name : out.order) visit(name);

    out.ast = std::move(ast);
    return out;
}

ObjectMap lexicalize(const CompiledScript& script, const EntryContext& ctx) {
    return Evaluator(script, ctx).run({});
}

ObjectMap apply_props(const CompiledScript& script, const EntryContext& ctx, const TableOfClasses& toc) {
    std::vector<ActiveOp> ops;
    for (const auto& block : script.ast.prop_blocks) {
        const auto* value = ctx.lookup(block.feature);
        if (!value || !value->activates()) continue;
        const auto rank = toc.column_of(block.feature).value_or(std::numeric_limits<std::size_t>::max());
        for (const auto& op : block.ops) ops.push_back({rank, &block, &op});
    }
    std::sort(ops.begin(), ops.end(), [](const ActiveOp& a, const ActiveOp& b) { return a.key() < b.key(); });
    ops.erase(std::unique(ops.begin(), ops.end(), [](const ActiveOp& a, const ActiveOp& b) { return a.key() == b.key(); }),
              ops.end());
    return Evaluator(script, ctx).run(std::move(ops));
}

std::string make_entry_id(std::string_view category, std::string_view class_label, std::size_t row_index) {
    const std::string prefix = std::string(category) + "_";
    std::string_view suffix = class_label;
    if (suffix.starts_with(prefix)) suffix.remove_prefix(prefix.size());
    return prefix + text::to_lower_ascii(suffix) + "_" + std::to_string(row_index);
}

StrictModeFailure::StrictModeFailure(Diagnostic diagnostic)
    : Error("strict mode: " + format_text(diagnostic)), diagnostic_(std::move(diagnostic)) {}

Lexicon extract_lexicon(std::span<const LoadedClass> classes, const TableOfClasses& toc, const CompiledScript& script,
                        const ExtractOptions& options) {
    Lexicon lexicon;
    std::set<std::string> ids;
    for (const auto& loaded : classes) {
        const auto& table = loaded.table;
        if (!toc.has_class(table.label())) {
            Diagnostic d{Severity::Warning, std::string(codes::UncoveredClass), {table.source_name(), table.label(), {}, {}},
                         "class is not covered by the table of classes; skipped"};
            if (options.strict) throw StrictModeFailure(d);
            lexicon.diagnostics.push_back(std::move(d));
            continue;
        }
        ++lexicon.stats.classes;
        lexicon.stats.rows += table.rows().size();
        for (const auto& row : table.rows()) {
            std::vector<Diagnostic> diagnostics;
            EntryRecord record;
            record.id = make_entry_id(loaded.manifest.category, table.label(), row.row_index);
            record.class_label = table.label();
            record.category = loaded.manifest.category;
            record.row_index = row.row_index;
            bool ok = false;
            if (!ids.insert(record.id).second) {
                diagnostics.push_back({Severity::Error, std::string(codes::DuplicateId),
                                       {table.source_name(), table.label(), row.row_index, {}},
                                       "entry id " + record.id + " is already used; entry skipped"});
            } else {
                try {
                    const auto ctx = build_env(toc, table, row, script.needed, record.category, &diagnostics, record.id);
                    record.objects = apply_props(script, ctx, toc);
                    ok = true;
                } catch (const Error& e) {
                    diagnostics.push_back({Severity::Error, std::string(codes::EntryError),
                                           {table.source_name(), table.label(), row.row_index, {}},
                                           std::string(e.what()) + "; entry skipped"});
                }
            }
            if (options.strict && !diagnostics.empty()) throw StrictModeFailure(diagnostics.front());
            record.diagnostics = diagnostics;
            lexicon.diagnostics.insert(lexicon.diagnostics.end(), diagnostics.begin(), diagnostics.end());
            if (ok)
                lexicon.entries.push_back(std::move(record));
            else
                ++lexicon.stats.skipped;
        }
    }
    lexicon.stats.entries = lexicon.entries.size();
    if (lexicon.stats.entries != lexicon.stats.rows - lexicon.stats.skipped)
        throw std::logic_error("coverage equation violated");
    normalize_diagnostics(lexicon.diagnostics);
    return lexicon;
}

} // namespace lgx
