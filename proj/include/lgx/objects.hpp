#ifndef LGX_OBJECTS_HPP
#define LGX_OBJECTS_HPP

#include "lgx/error.hpp"
#include "lgx/script.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lgx {

class LinguisticObject;

struct Text {
    std::string value;
    bool operator==(const Text&) const = default;
};

/// Two or more distinct strings, kept sorted by code point.
class Disjunction {
public:
    /// Deduplicates and sorts. Throws lgx::Error with fewer than two distinct members;
    /// use scalar_of() when the collapse to Text is wanted.
    explicit Disjunction(std::vector<std::string> members);

    const std::vector<std::string>& members() const noexcept { return members_; }
    /// Members joined by '+'.
    std::string joined() const;

    bool operator==(const Disjunction&) const = default;

private:
    std::vector<std::string> members_;
};

/// Shared immutable handle to a nested object. Copies share storage, which is safe
/// because objects are never mutated after construction.
class Nested {
public:
    explicit Nested(LinguisticObject object);

    const LinguisticObject& get() const noexcept { return *ptr_; }
    const LinguisticObject& operator*() const noexcept { return *ptr_; }
    const LinguisticObject* operator->() const noexcept { return ptr_.get(); }

private:
    std::shared_ptr<const LinguisticObject> ptr_;
};

/// Insertion-ordered set of objects; no two elements are structurally equal.
class ObjectSet {
public:
    ObjectSet() = default;

    const std::vector<LinguisticObject>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept;
    bool contains(const LinguisticObject& object) const;

private:
    friend ObjectSet add_elem(const ObjectSet& set, const LinguisticObject& object);
    std::vector<LinguisticObject> elements_;
};

using Value = std::variant<Text, Disjunction, Nested, ObjectSet>;

/// "text", "disjunction", "object" or "set".
std::string_view value_kind(const Value& value);
bool is_scalar(const Value& value);
/// Members of a Text or Disjunction value.
std::vector<std::string> scalar_members(const Value& value);
/// Text for one distinct member, Disjunction for more. Throws on an empty list.
Value scalar_of(std::vector<std::string> members);

/// A feature structure: a kind tag plus ordered attributes.
class LinguisticObject {
public:
    using Attribute = std::pair<std::string, Value>;

    LinguisticObject() = default;
    /// Throws lgx::Error on duplicate attribute names.
    explicit LinguisticObject(std::string kind, std::vector<Attribute> attributes = {});

    const std::string& kind() const noexcept { return kind_; }
    const std::vector<Attribute>& attributes() const noexcept { return attributes_; }

    const Value* find(std::string_view attribute) const;

    /// Copy with `attribute` set to `value`, replacing in place or appending.
    LinguisticObject with(std::string_view attribute, Value value) const;

private:
    std::string kind_;
    std::vector<Attribute> attributes_;
};

inline std::size_t ObjectSet::size() const noexcept { return elements_.size(); }
inline bool ObjectSet::empty() const noexcept { return elements_.empty(); }

inline Nested::Nested(LinguisticObject object)
    : ptr_(std::make_shared<const LinguisticObject>(std::move(object))) {}

/// Adding a value whose kind does not fit the slot already holding `attribute`.
class TypeConflict : public Error {
public:
    TypeConflict(std::string attribute, std::string existing_kind, std::string incoming_kind);

    const std::string& attribute() const noexcept { return attribute_; }
    const std::string& existing_kind() const noexcept { return existing_; }
    const std::string& incoming_kind() const noexcept { return incoming_; }

private:
    std::string attribute_;
    std::string existing_;
    std::string incoming_;
};

/// Inserts the pair (attribute, value). Absent: stored. Text onto Text/Disjunction:
/// disjunction of both. Object onto Object: recursive add of every incoming pair.
/// Set onto Set: union. Anything else throws TypeConflict.
LinguisticObject add_value(const LinguisticObject& object, std::string_view attribute, const Value& value);

LinguisticObject add_attr(const LinguisticObject& object, std::string_view attribute, std::string_view value);

/// `set` unchanged when an equal element exists, else `object` appended.
ObjectSet add_elem(const ObjectSet& set, const LinguisticObject& object);

/// Same kind, same attribute set, equal values; attribute and set order ignored.
bool structural_eq(const LinguisticObject& a, const LinguisticObject& b);
bool structural_eq(const Value& a, const Value& b);
bool structural_eq(const ObjectSet& a, const ObjectSet& b);

/// Single-line rendering in insertion order, for messages and debugging.
std::string debug_string(const LinguisticObject& object);
std::string debug_string(const Value& value);

/// Flattens parent chains: parent pairs minus overridden ones, then the child's own pairs.
/// Definitions must be in script order with parents defined first.
std::map<std::string, TemplateBody> resolve_inheritance(std::span<const Definition> definitions);

} // namespace lgx

#endif
