#include "adtchoice/guarantee.hpp"

#include <sstream>
#include <vector>

namespace adtchoice {

namespace {

bool sequence_ok(const Guarantee& g, const Universe& universe, const std::vector<AltId>& leaves) {
  if (g.kind == Guarantee::Kind::NoDuplicates) {
    AltSet seen;
    for (AltId x : leaves) {
      if (seen.contains(x)) return false;
      seen.insert(x);
    }
    return true;
  }
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    double prev = universe.number(leaves[i - 1], g.attr);
    double cur = universe.number(leaves[i], g.attr);
    if (g.ascending ? !(prev < cur) : !(prev > cur)) return false;
  }
  return true;
}

void inner_terms(const AdtSchema& schema, const Term& t, std::vector<Term>& out) {
  const ConstructorSpec& spec = schema.constructors.at(t.ctor_index());
  for (int i = 0; i < t.arity(); ++i) {
    if (spec.slots[i] == SlotKind::Value) {
      if (std::holds_alternative<Term>(t.child(i))) out.push_back(std::get<Term>(t.child(i)));
    } else {
      inner_terms(schema, std::get<Term>(t.child(i)), out);
    }
  }
}

}  // namespace

bool guarantee_filter(const Guarantee& g, const AdtSchema& schema, const Universe& universe,
                      const Term& a) {
  if (g.kind == Guarantee::Kind::SortedBy && !universe.has_attr(g.attr))
    throw Error("attribute " + g.attr + " is not defined on every element");
  if (g.inner) {
    if (!schema.nested()) throw Error("inner guarantee on a non-nested schema");
    std::vector<Term> inners;
    inner_terms(schema, a, inners);
    for (const Term& t : inners)
      if (!sequence_ok(g, universe, leaf_sequence(t))) return false;
    return true;
  }
  return sequence_ok(g, universe, leaf_sequence(a));
}

std::string Guarantee::to_string() const {
  std::ostringstream out;
  if (kind == Kind::NoDuplicates)
    out << "no_duplicates";
  else
    out << "sorted_by:" << attr << ':' << (ascending ? "asc" : "desc");
  if (inner) out << ":inner";
  return out.str();
}

Guarantee Guarantee::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ':')) parts.push_back(cur);
  if (parts.empty()) throw ParseError("empty guarantee");
  if (parts[0] == "no_duplicates") {
    Guarantee g = no_duplicates();
    if (parts.size() == 2 && parts[1] == "inner")
      g.inner = true;
    else if (parts.size() > 1)
      throw ParseError("bad guarantee: " + text);
    return g;
  }
  if (parts[0] == "sorted_by") {
    if (parts.size() < 3) throw ParseError("sorted_by needs sorted_by:<attr>:<asc|desc>");
    if (parts[2] != "asc" && parts[2] != "desc")
      throw ParseError("sorted_by direction must be asc or desc");
    Guarantee g = sorted_by(parts[1], parts[2] == "asc");
    if (parts.size() == 4 && parts[3] == "inner")
      g.inner = true;
    else if (parts.size() > 3)
      throw ParseError("bad guarantee: " + text);
    return g;
  }
  throw ParseError("unknown guarantee kind: " + parts[0]);
}

}  // namespace adtchoice
