#include "adtchoice/schema.hpp"

#include <map>
#include <sstream>

#include "adtchoice/universe.hpp"

namespace adtchoice {

int ConstructorSpec::value_slots() const {
  int n = 0;
  for (auto s : slots)
    if (s == SlotKind::Value) ++n;
  return n;
}

int ConstructorSpec::recursive_slots() const {
  int n = 0;
  for (auto s : slots)
    if (s == SlotKind::Recursive) ++n;
  return n;
}

std::optional<std::uint32_t> AdtSchema::find_ctor(const std::string& name) const {
  for (std::uint32_t i = 0; i < constructors.size(); ++i)
    if (constructors[i].name == name) return i;
  return std::nullopt;
}

SchemaFlags analyze_schema(const AdtSchema& schema) {
  SchemaFlags f;
  f.flat = true;
  for (const auto& c : schema.constructors) {
    if (c.recursive_slots() > 0) f.flat = false;
    if (c.all_value()) f.productive = true;
    if (c.expandable()) f.expandable = true;
  }
  f.substitutable = true;
  for (const auto& c : schema.constructors)
    if (c.value_slots() > 0 && c.arity() != 1) f.substitutable = false;
  f.representable = f.productive && f.expandable;
  return f;
}

std::string schema_flags_note(const SchemaFlags& flags) {
  if (flags.productive && !flags.flat && !flags.expandable)
    return "productive and non-flat, yet not expandable: no constructor can widen an "
           "extension, so finite terms only cover a bounded range of set sizes and the "
           "datatype is reported non-representable";
  return "";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawBlock {
  std::string name;
  std::vector<ConstructorSpec> ctors;
  std::string inner_name;
  int line = 0;
};

}  // namespace

AdtSchema parse_schema(const std::string& text) {
  // Normalize ';' to newlines so the compact one-line form parses too.
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ';') c = '\n';

  std::vector<RawBlock> blocks;
  std::istringstream in(normalized);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (auto pos = line.find('#'); pos != std::string::npos) line = trim(line.substr(0, pos));
    if (line.empty()) continue;
    if (line.rfind("schema ", 0) == 0 || line == "schema") {
      std::string name = trim(line.substr(6));
      if (name.empty()) throw ParseError("schema header without a name", lineno);
      blocks.push_back(RawBlock{name, {}, "", lineno});
      continue;
    }
    if (blocks.empty()) throw ParseError("expected `schema <Name>` header", lineno);
    if (line.rfind("inner ", 0) == 0) {
      std::string name = trim(line.substr(5));
      if (name.empty()) throw ParseError("inner footer without a name", lineno);
      if (!blocks.back().inner_name.empty())
        throw ParseError("duplicate inner footer", lineno);
      blocks.back().inner_name = name;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected `<Constructor>: <slot>(, <slot>)*`", lineno);
    ConstructorSpec ctor;
    ctor.name = trim(line.substr(0, colon));
    if (ctor.name.empty()) throw ParseError("constructor without a name", lineno);
    std::string rest = trim(line.substr(colon + 1));
    if (rest.empty()) throw ParseError("constructor " + ctor.name + " has arity 0", lineno);
    std::istringstream slots(rest);
    std::string tok;
    while (std::getline(slots, tok, ',')) {
      tok = trim(tok);
      if (tok == "X")
        ctor.slots.push_back(SlotKind::Value);
      else if (tok == "T")
        ctor.slots.push_back(SlotKind::Recursive);
      else
        throw ParseError("slot must be X or T, got \"" + tok + "\"", lineno);
    }
    if (ctor.slots.empty()) throw ParseError("constructor " + ctor.name + " has arity 0", lineno);
    for (const auto& existing : blocks.back().ctors)
      if (existing.name == ctor.name)
        throw ParseError("duplicate constructor name: " + ctor.name, lineno);
    blocks.back().ctors.push_back(std::move(ctor));
  }

  if (blocks.empty()) throw ParseError("no schema block found");
  std::map<std::string, const RawBlock*> by_name;
  for (const auto& b : blocks) {
    if (b.ctors.empty())
      throw ParseError("schema " + b.name + " has no constructors", b.line);
    if (!by_name.emplace(b.name, &b).second)
      throw ParseError("duplicate schema name: " + b.name, b.line);
  }

  auto build = [&](const RawBlock& b, bool allow_inner, auto&& self) -> AdtSchema {
    AdtSchema s;
    s.name = b.name;
    s.constructors = b.ctors;
    if (!b.inner_name.empty()) {
      if (!allow_inner)
        throw ParseError("nesting is limited to one inner level (schema " + b.name + ")", b.line);
      auto it = by_name.find(b.inner_name);
      if (it == by_name.end())
        throw ParseError("inner schema " + b.inner_name + " is not defined", b.line);
      s.inner = std::make_shared<AdtSchema>(self(*it->second, false, self));
    }
    return s;
  };
  return build(blocks.front(), true, build);
}

std::string print_schema(const AdtSchema& schema) {
  std::ostringstream out;
  auto emit = [&](const AdtSchema& s) {
    out << "schema " << s.name << '\n';
    for (const auto& c : s.constructors) {
      out << c.name << ": ";
      for (std::size_t i = 0; i < c.slots.size(); ++i) {
        if (i) out << ", ";
        out << (c.slots[i] == SlotKind::Value ? 'X' : 'T');
      }
      out << '\n';
    }
  };
  emit(schema);
  if (schema.inner) {
    out << "inner " << schema.inner->name << '\n';
    emit(*schema.inner);
  }
  return out.str();
}

bool schemas_equal(const AdtSchema& a, const AdtSchema& b) {
  if (a.name != b.name || a.constructors.size() != b.constructors.size()) return false;
  for (std::size_t i = 0; i < a.constructors.size(); ++i)
    if (a.constructors[i].name != b.constructors[i].name ||
        a.constructors[i].slots != b.constructors[i].slots)
      return false;
  if (static_cast<bool>(a.inner) != static_cast<bool>(b.inner)) return false;
  return !a.inner || schemas_equal(*a.inner, *b.inner);
}

}  // namespace adtchoice
