#include "lgx/objects.hpp"

#include <algorithm>

namespace lgx {

Disjunction::Disjunction(std::vector<std::string> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.size() < 2) throw Error("a disjunction needs at least two distinct values");
}

std::string Disjunction::joined() const {
    std::string out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += '+';
        out += members_[i];
    }
    return out;
}

std::string_view value_kind(const Value& value) {
    switch (value.index()) {
    case 0: return "text";
    case 1: return "disjunction";
    case 2: return "object";
    default: return "set";
    }
}

bool is_scalar(const Value& value) {
    return std::holds_alternative<Text>(value) || std::holds_alternative<Disjunction>(value);
}

std::vector<std::string> scalar_members(const Value& value) {
    if (const auto* t = std::get_if<Text>(&value)) return {t->value};
    if (const auto* d = std::get_if<Disjunction>(&value)) return d->members();
    throw Error("not a scalar value");
}

Value scalar_of(std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw Error("a scalar needs at least one value");
    if (members.size() == 1) return Text{std::move(members.front())};
    return Disjunction(std::move(members));
}

LinguisticObject::LinguisticObject(std::string kind, std::vector<Attribute> attributes)
    : kind_(std::move(kind)), attributes_(std::move(attributes)) {
    for (std::size_t i = 0; i < attributes_.size(); ++i)
        for (std::size_t j = i + 1; j < attributes_.size(); ++j)
            if (attributes_[i].first == attributes_[j].first)
                throw Error("duplicate attribute '" + attributes_[i].first + "' in object of kind " + kind_);
}

const Value* LinguisticObject::find(std::string_view attribute) const {
    for (const auto& [name, value] : attributes_)
        if (name == attribute) return &value;
    return nullptr;
}

LinguisticObject LinguisticObject::with(std::string_view attribute, Value value) const {
    LinguisticObject out = *this;
    for (auto& [name, existing] : out.attributes_) {
        if (name == attribute) {
            existing = std::move(value);
            return out;
        }
    }
    out.attributes_.emplace_back(std::string(attribute), std::move(value));
    return out;
}

bool ObjectSet::contains(const LinguisticObject& object) const {
    return std::any_of(elements_.begin(), elements_.end(),
                       [&](const LinguisticObject& e) { return structural_eq(e, object); });
}

ObjectSet add_elem(const ObjectSet& set, const LinguisticObject& object) {
    if (set.contains(object)) return set;
    ObjectSet out = set;
    out.elements_.push_back(object);
    return out;
}

TypeConflict::TypeConflict(std::string attribute, std::string existing_kind, std::string incoming_kind)
    : Error("type conflict at attribute '" + attribute + "': cannot add " + incoming_kind + " onto " +
            existing_kind),
      attribute_(std::move(attribute)), existing_(std::move(existing_kind)), incoming_(std::move(incoming_kind)) {}

namespace {

std::string describe(const Value& value) {
    if (const auto* n = std::get_if<Nested>(&value)) return "object(" + n->get().kind() + ")";
    return std::string(value_kind(value));
}

Value merge(std::string_view attribute, const Value& existing, const Value& incoming) {
    if (is_scalar(existing) && is_scalar(incoming)) {
        auto members = scalar_members(existing);
        for (auto& m : scalar_members(incoming)) members.push_back(std::move(m));
        return scalar_of(std::move(members));
    }
    const auto* old_obj = std::get_if<Nested>(&existing);
    const auto* new_obj = std::get_if<Nested>(&incoming);
    if (old_obj && new_obj) {
        if ((*old_obj)->kind() != (*new_obj)->kind())
            throw TypeConflict(std::string(attribute), describe(existing), describe(incoming));
        LinguisticObject merged = old_obj->get();
        for (const auto& [name, value] : (*new_obj)->attributes()) merged = add_value(merged, name, value);
        return Nested(std::move(merged));
    }
    const auto* old_set = std::get_if<ObjectSet>(&existing);
    const auto* new_set = std::get_if<ObjectSet>(&incoming);
    if (old_set && new_set) {
        ObjectSet merged = *old_set;
        for (const auto& e : new_set->elements()) merged = add_elem(merged, e);
        return merged;
    }
    throw TypeConflict(std::string(attribute), describe(existing), describe(incoming));
}

} // namespace

LinguisticObject add_value(const LinguisticObject& object, std::string_view attribute, const Value& value) {
    const Value* existing = object.find(attribute);
    if (!existing) {
        if (is_scalar(value)) return object.with(attribute, scalar_of(scalar_members(value)));
        return object.with(attribute, value);
    }
    return object.with(attribute, merge(attribute, *existing, value));
}

LinguisticObject add_attr(const LinguisticObject& object, std::string_view attribute, std::string_view value) {
    return add_value(object, attribute, Text{std::string(value)});
}

bool structural_eq(const ObjectSet& a, const ObjectSet& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.elements().begin(), a.elements().end(),
                       [&](const LinguisticObject& e) { return b.contains(e); });
}

bool structural_eq(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    if (const auto* t = std::get_if<Text>(&a)) return *t == std::get<Text>(b);
    if (const auto* d = std::get_if<Disjunction>(&a)) return *d == std::get<Disjunction>(b);
    if (const auto* n = std::get_if<Nested>(&a)) return structural_eq(n->get(), std::get<Nested>(b).get());
    return structural_eq(std::get<ObjectSet>(a), std::get<ObjectSet>(b));
}

bool structural_eq(const LinguisticObject& a, const LinguisticObject& b) {
    if (a.kind() != b.kind() || a.attributes().size() != b.attributes().size()) return false;
    for (const auto& [name, value] : a.attributes()) {
        const Value* other = b.find(name);
        if (!other || !structural_eq(value, *other)) return false;
    }
    return true;
}

std::string debug_string(const Value& value) {
    if (const auto* t = std::get_if<Text>(&value)) return '"' + t->value + '"';
    if (const auto* d = std::get_if<Disjunction>(&value)) return '"' + d->joined() + '"';
    if (const auto* n = std::get_if<Nested>(&value)) return debug_string(n->get());
    std::string out = "(";
    const auto& elements = std::get<ObjectSet>(value).elements();
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ',';
        out += debug_string(elements[i]);
    }
    return out + ')';
}

std::string debug_string(const LinguisticObject& object) {
    std::string out = object.kind() + '[';
    for (std::size_t i = 0; i < object.attributes().size(); ++i) {
        if (i) out += ',';
        out += object.attributes()[i].first + '=' + debug_string(object.attributes()[i].second);
    }
    return out + ']';
}

std::map<std::string, TemplateBody> resolve_inheritance(std::span<const Definition> definitions) {
    std::map<std::string, TemplateBody> flat;
    for (const auto& def : definitions) {
        TemplateBody body;
        body.style = def.body.style;
        if (def.parent) {
            const auto it = flat.find(*def.parent);
            if (it == flat.end()) throw Error("parent '" + *def.parent + "' of '" + def.name + "' is not defined earlier");
            for (const auto& inherited : it->second.pairs) {
                const bool overridden = std::any_of(def.body.pairs.begin(), def.body.pairs.end(),
                                                    [&](const TemplatePair& own) { return own.attribute == inherited.attribute; });
                if (!overridden) body.pairs.push_back(inherited);
            }
        }
        body.pairs.insert(body.pairs.end(), def.body.pairs.begin(), def.body.pairs.end());
        flat[def.name] = std::move(body);
    }
    return flat;
}

} // namespace lgx
