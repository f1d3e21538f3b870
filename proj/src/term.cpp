#include "adtchoice/term.hpp"

#include <algorithm>
#include <sstream>

namespace adtchoice {

std::uint32_t Term::ctor_index() const { return node_->ctor; }
int Term::arity() const { return static_cast<int>(node_->children.size()); }
const TermChild& Term::child(int i) const { return node_->children.at(i); }
const std::vector<TermChild>& Term::children() const { return node_->children; }
AltSet Term::extension() const { return node_->ext; }
int Term::leaf_count() const { return static_cast<int>(node_->leaves); }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->ctor != b.node_->ctor ||
      a.node_->children.size() != b.node_->children.size())
    return false;
  for (std::size_t i = 0; i < a.node_->children.size(); ++i) {
    const auto& ca = a.node_->children[i];
    const auto& cb = b.node_->children[i];
    if (ca.index() != cb.index()) return false;
    if (std::holds_alternative<AltId>(ca)) {
      if (std::get<AltId>(ca) != std::get<AltId>(cb)) return false;
    } else if (std::get<Term>(ca) != std::get<Term>(cb)) {
      return false;
    }
  }
  return true;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Term Term::make(const AdtSchema& schema, std::uint32_t ctor, std::vector<TermChild> children) {
  if (ctor >= schema.constructors.size())
    throw Error("constructor index out of range for schema " + schema.name);
  const ConstructorSpec& spec = schema.constructors[ctor];
  if (static_cast<int>(children.size()) != spec.arity())
    throw Error("arity mismatch for constructor " + spec.name + ": expected " +
                std::to_string(spec.arity()) + ", got " + std::to_string(children.size()));
  auto node = std::make_shared<Node>();
  node->ctor = ctor;
  node->ext = AltSet();
  node->leaves = 0;
  std::size_t h = mix(0, ctor + 1);
  for (int i = 0; i < spec.arity(); ++i) {
    const TermChild& c = children[i];
    if (spec.slots[i] == SlotKind::Value) {
      if (std::holds_alternative<AltId>(c)) {
        if (schema.nested())
          throw Error("constructor " + spec.name + ": value slot " + std::to_string(i + 1) +
                      " must hold an inner term in a nested schema");
        AltId x = std::get<AltId>(c);
        node->ext.insert(x);
        node->leaves += 1;
        h = mix(h, x.index + 2);
      } else {
        if (!schema.nested())
          throw Error("constructor " + spec.name + ": value slot " + std::to_string(i + 1) +
                      " must hold an alternative");
        const Term& t = std::get<Term>(c);
        node->ext = node->ext | t.extension();
        node->leaves += t.leaf_count();
        h = mix(h, t.hash());
      }
    } else {
      if (!std::holds_alternative<Term>(c))
        throw Error("constructor " + spec.name + ": recursive slot " + std::to_string(i + 1) +
                    " must hold a sub-term");
      const Term& t = std::get<Term>(c);
      node->ext = node->ext | t.extension();
      node->leaves += t.leaf_count();
      h = mix(h, t.hash());
    }
  }
  node->children = std::move(children);
  node->hash = h;
  return Term(std::move(node));
}

void validate_term(const AdtSchema& schema, const Universe& universe, const Term& term) {
  if (!term.valid()) throw Error("null term");
  if (term.ctor_index() >= schema.constructors.size())
    throw Error("unknown constructor index in schema " + schema.name);
  const ConstructorSpec& spec = schema.constructors[term.ctor_index()];
  if (term.arity() != spec.arity()) throw Error("arity mismatch for " + spec.name);
  for (int i = 0; i < term.arity(); ++i) {
    const TermChild& c = term.child(i);
    if (spec.slots[i] == SlotKind::Value) {
      if (std::holds_alternative<AltId>(c)) {
        if (schema.nested()) throw Error("expected inner term in value slot of " + spec.name);
        if (static_cast<int>(std::get<AltId>(c).index) >= universe.size())
          throw Error("alternative index out of range");
      } else {
        if (!schema.nested()) throw Error("expected alternative in value slot of " + spec.name);
        validate_term(*schema.inner, universe, std::get<Term>(c));
      }
    } else {
      if (!std::holds_alternative<Term>(c))
        throw Error("expected sub-term in recursive slot of " + spec.name);
      validate_term(schema, universe, std::get<Term>(c));
    }
  }
}

// --- s-expression reader -------------------------------------------------

namespace {

struct SexprParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of term text");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    ++pos;
  }

  std::string atom() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ' ' &&
           text[pos] != '\t' && text[pos] != '\n' && text[pos] != '\r')
      ++pos;
    if (start == pos) throw ParseError("expected an atom at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }
};

Term parse_node(SexprParser& p, const AdtSchema& schema, const Universe& universe) {
  p.expect('(');
  std::string ctor_name = p.atom();
  auto ctor = schema.find_ctor(ctor_name);
  if (!ctor) throw ParseError("unknown constructor " + ctor_name + " in schema " + schema.name);
  const ConstructorSpec& spec = schema.constructors[*ctor];
  std::vector<TermChild> children;
  while (p.peek() != ')') {
    int i = static_cast<int>(children.size());
    if (i >= spec.arity())
      throw ParseError("constructor " + ctor_name + " takes " + std::to_string(spec.arity()) +
                       " argument(s)");
    if (spec.slots[i] == SlotKind::Value) {
      if (schema.nested()) {
        children.emplace_back(parse_node(p, *schema.inner, universe));
      } else {
        if (p.peek() == '(')
          throw ParseError("constructor " + ctor_name + ": argument " + std::to_string(i + 1) +
                           " must be an alternative, not a sub-term");
        std::string id = p.atom();
        auto x = universe.try_resolve(id);
        if (!x) throw ParseError("unknown alternative: " + id);
        children.emplace_back(*x);
      }
    } else {
      if (p.peek() != '(')
        throw ParseError("constructor " + ctor_name + ": argument " + std::to_string(i + 1) +
                         " must be a sub-term");
      children.emplace_back(parse_node(p, schema, universe));
    }
  }
  p.expect(')');
  if (static_cast<int>(children.size()) != spec.arity())
    throw ParseError("constructor " + ctor_name + " takes " + std::to_string(spec.arity()) +
                     " argument(s), got " + std::to_string(children.size()));
  return Term::make(schema, *ctor, std::move(children));
}

void print_node(std::ostream& out, const Term& t, const AdtSchema& schema,
                const Universe& universe) {
  const ConstructorSpec& spec = schema.constructors.at(t.ctor_index());
  out << '(' << spec.name;
  for (int i = 0; i < t.arity(); ++i) {
    out << ' ';
    const TermChild& c = t.child(i);
    if (std::holds_alternative<AltId>(c))
      out << universe.name(std::get<AltId>(c));
    else if (spec.slots[i] == SlotKind::Value && schema.nested())
      print_node(out, std::get<Term>(c), *schema.inner, universe);
    else
      print_node(out, std::get<Term>(c), schema, universe);
  }
  out << ')';
}

}  // namespace

Term parse_term(const AdtSchema& schema, const Universe& universe, const std::string& text) {
  SexprParser p{text};
  Term t = parse_node(p, schema, universe);
  if (!p.at_end()) throw ParseError("trailing text after term at offset " + std::to_string(p.pos));
  return t;
}

std::string print_term(const Term& term, const AdtSchema& schema, const Universe& universe) {
  std::ostringstream out;
  print_node(out, term, schema, universe);
  return out.str();
}

bool equivalent(const Term& a, const Term& b) { return a.extension() == b.extension(); }

Term substitute_subproblem(const AdtSchema& schema, const Term& a, AltId x, const Term& b) {
  SchemaFlags flags = analyze_schema(schema);
  if (!flags.substitutable)
    throw Error("schema " + schema.name + " is not substitutable");
  if (schema.nested()) throw Error("substitution is not defined on nested schemas");
  if (!a.extension().contains(x)) return a;

  const ConstructorSpec& spec = schema.constructors.at(a.ctor_index());
  if (spec.arity() == 1 && spec.slots[0] == SlotKind::Value) {
    if (std::get<AltId>(a.child(0)) == x) return b;
    return a;
  }
  std::vector<TermChild> children;
  children.reserve(a.arity());
  bool changed = false;
  for (int i = 0; i < a.arity(); ++i) {
    const TermChild& c = a.child(i);
    if (std::holds_alternative<Term>(c)) {
      Term replaced = substitute_subproblem(schema, std::get<Term>(c), x, b);
      changed = changed || replaced != std::get<Term>(c);
      children.emplace_back(std::move(replaced));
    } else {
      children.emplace_back(c);
    }
  }
  if (!changed) return a;
  return Term::make(schema, a.ctor_index(), std::move(children));
}

namespace {

Term rename_in(const AdtSchema& schema, const Term& a, AltId x, AltId y) {
  std::vector<TermChild> children;
  children.reserve(a.arity());
  const ConstructorSpec& spec = schema.constructors.at(a.ctor_index());
  for (int i = 0; i < a.arity(); ++i) {
    const TermChild& c = a.child(i);
    if (std::holds_alternative<AltId>(c)) {
      AltId v = std::get<AltId>(c);
      children.emplace_back(v == x ? y : v);
    } else if (spec.slots[i] == SlotKind::Value && schema.nested()) {
      children.emplace_back(rename_in(*schema.inner, std::get<Term>(c), x, y));
    } else {
      children.emplace_back(rename_in(schema, std::get<Term>(c), x, y));
    }
  }
  return Term::make(schema, a.ctor_index(), std::move(children));
}

}  // namespace

Term rename_value(const AdtSchema& schema, const Term& a, AltId x, AltId y) {
  if (x == y || !a.extension().contains(x)) return a;
  return rename_in(schema, a, x, y);
}

std::vector<AltId> leaf_sequence(const Term& term) {
  std::vector<AltId> out;
  auto walk = [&](const Term& t, auto&& self) -> void {
    for (const TermChild& c : t.children()) {
      if (std::holds_alternative<AltId>(c))
        out.push_back(std::get<AltId>(c));
      else
        self(std::get<Term>(c), self);
    }
  };
  walk(term, walk);
  return out;
}

bool same_shape(const Term& a, const Term& b) {
  if (a.ctor_index() != b.ctor_index() || a.arity() != b.arity()) return false;
  for (int i = 0; i < a.arity(); ++i) {
    const TermChild& ca = a.child(i);
    const TermChild& cb = b.child(i);
    if (ca.index() != cb.index()) return false;
    if (std::holds_alternative<Term>(ca) && !same_shape(std::get<Term>(ca), std::get<Term>(cb)))
      return false;
  }
  return true;
}

namespace {

Term canonical_singleton(const AdtSchema& schema, AltId x) {
  for (std::uint32_t i = 0; i < schema.constructors.size(); ++i) {
    const ConstructorSpec& c = schema.constructors[i];
    if (!c.all_value()) continue;
    std::vector<TermChild> children(c.arity(), TermChild(x));
    return Term::make(schema, i, std::move(children));
  }
  throw Error("schema " + schema.name + " has no all-value constructor");
}

Term canonical_chain(const AdtSchema& schema, const std::vector<AltId>& order, std::size_t from) {
  AltId head = order[from];
  if (from + 1 == order.size()) return canonical_singleton(schema, head);
  for (std::uint32_t i = 0; i < schema.constructors.size(); ++i) {
    const ConstructorSpec& c = schema.constructors[i];
    if (!c.expandable()) continue;
    Term rest = canonical_chain(schema, order, from + 1);
    std::vector<TermChild> children;
    children.reserve(c.arity());
    bool has_value = c.value_slots() > 0;
    int recursive_seen = 0;
    for (int s = 0; s < c.arity(); ++s) {
      if (c.slots[s] == SlotKind::Value) {
        children.emplace_back(head);
        continue;
      }
      ++recursive_seen;
      int rest_position = has_value ? 1 : 2;
      if (recursive_seen == rest_position)
        children.emplace_back(rest);
      else
        children.emplace_back(canonical_singleton(schema, head));
    }
    return Term::make(schema, i, std::move(children));
  }
  throw Error("schema " + schema.name + " cannot represent sets of size " +
              std::to_string(order.size() - from));
}

}  // namespace

Term canonical_representation(const AdtSchema& schema, const Universe& universe, AltSet A,
                              const std::vector<AltId>* leaf_order) {
  if (A.empty()) throw Error("cannot represent the empty set");
  if (schema.nested())
    throw Error("canonical representation is not defined on nested schemas");
  std::vector<AltId> order;
  if (leaf_order) {
    order = *leaf_order;
    AltSet check;
    for (AltId x : order) check.insert(x);
    if (check != A || static_cast<int>(order.size()) != A.size())
      throw Error("leaf order must be a permutation of the target set");
  } else {
    order = A.elements();  // ascending universe index
  }
  (void)universe;
  SchemaFlags flags = analyze_schema(schema);
  if (!flags.productive)
    throw Error("schema " + schema.name + " is not productive; nothing is representable");
  if (order.size() > 1 && !flags.expandable)
    throw Error("schema " + schema.name + " is not expandable; sets of size " +
                std::to_string(order.size()) + " exceed its capacity");
  Term t = canonical_chain(schema, order, 0);
  if (t.extension() != A) throw Error("internal: canonical representation missed the target set");
  return t;
}

}  // namespace adtchoice
