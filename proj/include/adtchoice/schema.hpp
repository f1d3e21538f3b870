#ifndef ADTCHOICE_SCHEMA_HPP
#define ADTCHOICE_SCHEMA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adtchoice {

// A constructor slot holds either an alternative (Value) or a sub-term of
// the same datatype (Recursive). In nested mode, Value slots hold terms of
// the inner schema instead of bare alternatives.
enum class SlotKind { Value, Recursive };

struct ConstructorSpec {
  std::string name;
  std::vector<SlotKind> slots;  // arity >= 1

  int arity() const { return static_cast<int>(slots.size()); }
  int value_slots() const;
  int recursive_slots() const;
  bool all_value() const { return recursive_slots() == 0; }
  // >= 2 slots of which >= 1 recursive: usable to grow a term's extension.
  bool expandable() const { return arity() >= 2 && recursive_slots() >= 1; }
};

// A datatype grammar: named constructors over value and recursive slots.
// One level of nesting is supported: when `inner` is set, Value slots carry
// terms of the inner schema.
struct AdtSchema {
  std::string name;
  std::vector<ConstructorSpec> constructors;
  std::shared_ptr<const AdtSchema> inner;  // nullptr unless nested

  bool nested() const { return inner != nullptr; }
  int constructor_count() const { return static_cast<int>(constructors.size()); }
  const ConstructorSpec& ctor(std::uint32_t i) const { return constructors.at(i); }
  std::optional<std::uint32_t> find_ctor(const std::string& name) const;
};

struct SchemaFlags {
  bool flat = false;          // no constructor has a recursive slot
  bool productive = false;    // some constructor has no recursive slot
  bool substitutable = false;  // every constructor with a value slot is unary
  bool expandable = false;    // some constructor is expandable
  bool representable = false;  // productive && expandable
};

SchemaFlags analyze_schema(const AdtSchema& schema);

// Human-readable caveat for the gap between "productive and non-flat" and
// the operative representability condition; empty when the flags tell the
// whole story.
std::string schema_flags_note(const SchemaFlags& flags);

// Line-oriented format:
//   schema <Name>
//   <Constructor>: <slot>(, <slot>)*      slot in {X, T}
//   inner <Name>                          optional, names another block
// Multiple `schema` blocks may share one file; the first is returned.
// Semicolons work as line separators, '#' starts a comment.
AdtSchema parse_schema(const std::string& text);

std::string print_schema(const AdtSchema& schema);

bool schemas_equal(const AdtSchema& a, const AdtSchema& b);

}  // namespace adtchoice

#endif
