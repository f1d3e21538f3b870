#ifndef ADTCHOICE_TERM_HPP
#define ADTCHOICE_TERM_HPP

#include <memory>
#include <variant>
#include <vector>

#include "adtchoice/schema.hpp"
#include "adtchoice/universe.hpp"

namespace adtchoice {

class Term;
// A child is an alternative (Value slot), a sub-term of the same schema
// (Recursive slot), or a term of the inner schema (Value slot, nested mode).
using TermChild = std::variant<AltId, Term>;

// Immutable finite tree conforming to a schema. Value semantics over a
// shared node; extension, leaf count and a structural hash are computed at
// construction, so those queries are O(1). Safe to share across threads.
class Term {
 public:
  Term() = default;

  bool valid() const { return node_ != nullptr; }
  std::uint32_t ctor_index() const;
  int arity() const;
  const TermChild& child(int i) const;
  const std::vector<TermChild>& children() const;

  // Union of the alternatives at the leaves (through inner terms when
  // nested). Non-empty for every well-formed term.
  AltSet extension() const;
  // Number of leaf positions (inner-term leaves included).
  int leaf_count() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  // Validates slot kinds/arity against `schema` and builds the node.
  static Term make(const AdtSchema& schema, std::uint32_t ctor, std::vector<TermChild> children);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  std::uint32_t ctor;
  std::vector<TermChild> children;
  AltSet ext;
  std::uint32_t leaves;
  std::size_t hash;
};

// S-expression text, e.g. "(Cons x1 (Sing x2))". Nested mode accepts inner
// terms in value positions: "(R1 (P i1 i2 ...))".
Term parse_term(const AdtSchema& schema, const Universe& universe, const std::string& text);

// Canonical form: single spaces, no gratuitous whitespace. parse/print
// round-trips.
std::string print_term(const Term& term, const AdtSchema& schema, const Universe& universe);

// Deep conformance check (ctor indices, slot kinds, alt ids in range).
void validate_term(const AdtSchema& schema, const Universe& universe, const Term& term);

bool equivalent(const Term& a, const Term& b);

// a with every occurrence of x under a unary constructor replaced by b.
// Requires a substitutable schema; if x does not occur, returns a unchanged.
Term substitute_subproblem(const AdtSchema& schema, const Term& a, AltId x, const Term& b);

// a with every leaf equal to x rewritten to y; the constructor skeleton is
// untouched.
Term rename_value(const AdtSchema& schema, const Term& a, AltId x, AltId y);

// Left-to-right leaves (flattening through inner terms).
std::vector<AltId> leaf_sequence(const Term& term);

// True when a and b have the same constructor skeleton (leaf values ignored).
bool same_shape(const Term& a, const Term& b);

// Deterministic representation with extension exactly A:
//   sort A ascending by universe index;
//   r({x})        = first all-value constructor, every slot = x;
//   r({a1} ∪ A')  = first expandable constructor; value slots = a1; if it
//                   has a value slot its first recursive slot = r(A'),
//                   otherwise first = r({a1}) and second = r(A');
//                   remaining recursive slots = r({a1}).
// `leaf_order` optionally overrides the ascending-index order (it must be a
// permutation of A's elements).
Term canonical_representation(const AdtSchema& schema, const Universe& universe, AltSet A,
                              const std::vector<AltId>* leaf_order = nullptr);

}  // namespace adtchoice

#endif
