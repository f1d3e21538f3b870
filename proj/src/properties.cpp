#include "adtchoice/properties.hpp"

#include <map>
#include <set>
#include <sstream>

namespace adtchoice {

std::string property_name(PropertyId p) {
  switch (p) {
    case PropertyId::Ext: return "EXT";
    case PropertyId::Int: return "INT";
    case PropertyId::Sind: return "SIND";
    case PropertyId::Tiia: return "TIIA";
    case PropertyId::AlphaE: return "alphaE";
    case PropertyId::GammaE: return "gammaE";
  }
  return "?";
}

PropertyId property_from_name(const std::string& name) {
  if (name == "EXT") return PropertyId::Ext;
  if (name == "INT") return PropertyId::Int;
  if (name == "SIND") return PropertyId::Sind;
  if (name == "TIIA") return PropertyId::Tiia;
  if (name == "alphaE") return PropertyId::AlphaE;
  if (name == "gammaE") return PropertyId::GammaE;
  throw Error("unknown property: " + name + " (one of EXT,INT,SIND,TIIA,alphaE,gammaE)");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Falsified: return "Falsified";
    case Verdict::HoldsUpToBudget: return "HoldsUpToBudget";
    case Verdict::NoWitnessWithinBudget: return "NoWitnessWithinBudget";
  }
  return "?";
}

namespace {

std::vector<Term> universal_pool(const Procedure& P, const EnumerationBudget& budget,
                                 const std::optional<Guarantee>& guarantee) {
  return generate_all_terms(P.schema(), P.universe(), budget, guarantee);
}

// extension -> the alternatives some representation within the leaf bound
// makes the procedure choose.
class ChosenMap {
 public:
  ChosenMap(const Procedure& P, int max_leaves, const std::optional<Guarantee>& guarantee) {
    EnumerationBudget b;
    b.max_leaves = max_leaves;
    for (const Term& t : generate_all_terms(P.schema(), P.universe(), b, guarantee))
      chosen_[t.extension().bits()].insert(P(t));
  }

  bool contains(AltSet menu, AltId x) const {
    auto it = chosen_.find(menu.bits());
    return it != chosen_.end() && it->second.contains(x);
  }

 private:
  std::map<std::uint64_t, AltSet> chosen_;
};

// (extension, choice) classes in first-appearance order, with a
// representative term each.
struct Classes {
  struct Entry {
    AltSet ext;
    AltId choice;
    Term rep;
  };
  std::vector<Entry> entries;

  Classes(const Procedure& P, const std::vector<Term>& pool) {
    std::set<std::pair<std::uint64_t, std::uint32_t>> seen;
    for (const Term& t : pool) {
      AltId x = P(t);
      if (seen.emplace(t.extension().bits(), x.index).second)
        entries.push_back(Entry{t.extension(), x, t});
    }
  }
};

PropertyReport base_report(PropertyId id, const EnumerationBudget& budget,
                           const std::optional<Guarantee>& guarantee) {
  PropertyReport r;
  r.property = id;
  r.budget = budget;
  r.guarantee = guarantee;
  return r;
}

}  // namespace

PropertyReport check_ext(const Procedure& P, const EnumerationBudget& budget,
                         const std::optional<Guarantee>& guarantee,
                         const std::optional<AltSet>& focus) {
  PropertyReport r = base_report(PropertyId::Ext, budget, guarantee);
  std::vector<Term> pool;
  if (focus)
    pool = enumerate_representations(P.schema(), P.universe(), *focus, budget, guarantee)->drain();
  else
    pool = universal_pool(P, budget, guarantee);

  std::map<std::uint64_t, std::pair<Term, AltId>> first;
  for (const Term& t : pool) {
    AltId x = P(t);
    auto [it, fresh] = first.emplace(t.extension().bits(), std::make_pair(t, x));
    if (!fresh && it->second.second != x) {
      r.verdict = Verdict::Falsified;
      r.witness_terms = {it->second.first, t};
      r.witness_alts = {it->second.second, x};
      r.note = "equivalent terms choose " + P.universe().name(it->second.second) + " and " +
               P.universe().name(x);
      return r;
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

PropertyReport check_int(const Procedure& P, const EnumerationBudget& budget,
                         const std::optional<Guarantee>& guarantee) {
  PropertyReport r = base_report(PropertyId::Int, budget, guarantee);
  const Universe& u = P.universe();
  for (const Term& a : universal_pool(P, budget, guarantee)) {
    AltId x = P(a);
    for (int yi = 0; yi < u.size(); ++yi) {
      AltId y{static_cast<std::uint32_t>(yi)};
      if (y == x) continue;
      Term b = rename_value(P.schema(), a, x, y);
      if (guarantee && !guarantee_filter(*guarantee, P.schema(), u, b)) continue;
      if (P(b) != y) {
        r.verdict = Verdict::Falsified;
        r.witness_terms = {a, b};
        r.witness_alts = {x, y};
        r.note = "renaming the chosen " + u.name(x) + " to " + u.name(y) + " chose " +
                 u.name(P(b)) + " instead";
        return r;
      }
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

PropertyReport check_sind(const Procedure& P, const EnumerationBudget& budget,
                          const std::optional<Guarantee>& guarantee, int sind_child_leaves) {
  PropertyReport r = base_report(PropertyId::Sind, budget, guarantee);
  const AdtSchema& schema = P.schema();
  const Universe& u = P.universe();
  if (schema.nested())
    throw Error("SIND child-choice tuples range over alternatives and sub-terms; nested "
                "schemas are out of range");

  EnumerationBudget child_budget;
  child_budget.max_leaves = sind_child_leaves;
  std::vector<Term> recursive_options = generate_all_terms(schema, u, child_budget);

  // (constructor, child-choice tuple) -> (top choice, witnessing term)
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::pair<AltId, Term>> seen;

  for (std::uint32_t ci = 0; ci < schema.constructors.size(); ++ci) {
    const ConstructorSpec& ctor = schema.constructors[ci];
    std::vector<std::size_t> option_count(ctor.arity());
    bool vacuous = false;
    for (int i = 0; i < ctor.arity(); ++i) {
      option_count[i] =
          ctor.slots[i] == SlotKind::Value ? u.size() : recursive_options.size();
      if (option_count[i] == 0) vacuous = true;
    }
    if (vacuous) continue;
    std::vector<std::size_t> idx(ctor.arity(), 0);
    while (true) {
      std::vector<TermChild> children;
      std::vector<std::uint32_t> tuple;
      children.reserve(ctor.arity());
      for (int i = 0; i < ctor.arity(); ++i) {
        if (ctor.slots[i] == SlotKind::Value) {
          AltId x{static_cast<std::uint32_t>(idx[i])};
          children.emplace_back(x);
          tuple.push_back(x.index);
        } else {
          const Term& t = recursive_options[idx[i]];
          children.emplace_back(t);
          tuple.push_back(P(t).index);
        }
      }
      Term top = Term::make(schema, ci, std::move(children));
      if (!guarantee || guarantee_filter(*guarantee, schema, u, top)) {
        AltId choice = P(top);
        auto key = std::make_pair(ci, tuple);
        auto [it, fresh] = seen.emplace(key, std::make_pair(choice, top));
        if (!fresh && it->second.first != choice) {
          r.verdict = Verdict::Falsified;
          r.witness_terms = {it->second.second, top};
          r.witness_alts = {it->second.first, choice};
          r.note = "same child-choice tuple, different top choices under " + ctor.name;
          return r;
        }
        bool member = false;
        for (std::uint32_t v : tuple) member = member || v == choice.index;
        if (!member) {
          r.verdict = Verdict::Falsified;
          r.witness_terms = {top};
          r.witness_alts = {choice};
          r.note = "top choice is not a coordinate of the child-choice tuple under " + ctor.name;
          return r;
        }
      }
      int pos = ctor.arity() - 1;
      while (pos >= 0) {
        if (++idx[pos] < option_count[pos]) break;
        idx[pos--] = 0;
      }
      if (pos < 0) break;
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

std::optional<Term> tiia_witness_search(const Procedure& P, const Term& a, int child_index,
                                        int search_max_leaves,
                                        const std::optional<Guarantee>& guarantee) {
  const AdtSchema& schema = P.schema();
  const Universe& u = P.universe();
  const Term& sub = std::get<Term>(a.child(child_index));
  AltId x = P(a), y = P(sub);
  if (x == y) return std::nullopt;
  AltSet target = (sub.extension() - AltSet::single(y)) | AltSet::single(x);
  EnumerationBudget b;
  b.max_leaves = search_max_leaves;
  auto stream = enumerate_representations(schema, u, target, b, guarantee);
  while (auto candidate = stream->next()) {
    std::vector<TermChild> children = a.children();
    children[child_index] = *candidate;
    Term replaced = Term::make(schema, a.ctor_index(), std::move(children));
    if (guarantee && !guarantee_filter(*guarantee, schema, u, replaced)) continue;
    if (P(replaced) == x) return candidate;
  }
  return std::nullopt;
}

PropertyReport check_tiia(const Procedure& P, const EnumerationBudget& budget,
                          const std::optional<Guarantee>& guarantee) {
  PropertyReport r = base_report(PropertyId::Tiia, budget, guarantee);
  const AdtSchema& schema = P.schema();
  if (!analyze_schema(schema).substitutable)
    throw Error("TIIA needs a substitutable schema; " + schema.name + " is not");

  for (const Term& a : universal_pool(P, budget, guarantee)) {
    const ConstructorSpec& ctor = schema.constructors.at(a.ctor_index());
    for (int i = 0; i < a.arity(); ++i) {
      if (ctor.slots[i] != SlotKind::Recursive) continue;
      AltId x = P(a), y = P(std::get<Term>(a.child(i)));
      if (x == y) continue;
      if (!tiia_witness_search(P, a, i, budget.max_leaves + 1, guarantee)) {
        r.verdict = Verdict::NoWitnessWithinBudget;
        r.witness_terms = {a, std::get<Term>(a.child(i))};
        r.witness_alts = {x, y};
        r.note = "no re-representation swaps " + P.universe().name(y) + " for " +
                 P.universe().name(x) + " without changing the overall choice";
        return r;
      }
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

PropertyReport check_alpha_e(const Procedure& P, const EnumerationBudget& budget,
                             const std::optional<Guarantee>& guarantee) {
  PropertyReport r = base_report(PropertyId::AlphaE, budget, guarantee);
  std::vector<Term> pool = universal_pool(P, budget, guarantee);
  Classes classes(P, pool);
  ChosenMap chosen(P, budget.max_leaves + 1, guarantee);

  for (const auto& e : classes.entries) {
    std::uint64_t ext = e.ext.bits();
    std::uint64_t xbit = AltSet::single(e.choice).bits();
    // Submasks of the extension that contain the choice.
    std::uint64_t rest = ext & ~xbit;
    std::uint64_t sub = rest;
    while (true) {
      AltSet B(sub | xbit);
      if (!chosen.contains(B, e.choice)) {
        r.verdict = Verdict::NoWitnessWithinBudget;
        r.witness_terms = {e.rep};
        r.witness_set = B;
        r.witness_alts = {e.choice};
        r.note = "no representation of " + P.universe().set_to_string(B) + " chooses " +
                 P.universe().name(e.choice);
        return r;
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

PropertyReport check_gamma_e(const Procedure& P, const EnumerationBudget& budget,
                             const std::optional<Guarantee>& guarantee) {
  PropertyReport r = base_report(PropertyId::GammaE, budget, guarantee);
  std::vector<Term> pool = universal_pool(P, budget, guarantee);
  Classes classes(P, pool);
  ChosenMap chosen(P, budget.max_leaves + 1, guarantee);

  for (const auto& ea : classes.entries) {
    for (const auto& eb : classes.entries) {
      if (!ea.ext.contains(eb.choice)) continue;
      AltSet unioned = ea.ext | eb.ext;
      if (!chosen.contains(unioned, ea.choice)) {
        r.verdict = Verdict::NoWitnessWithinBudget;
        r.witness_terms = {ea.rep, eb.rep};
        r.witness_alts = {ea.choice, eb.choice};
        r.note = "no representation of " + P.universe().set_to_string(unioned) + " chooses " +
                 P.universe().name(ea.choice);
        return r;
      }
    }
  }
  r.verdict = Verdict::HoldsUpToBudget;
  return r;
}

PropertyReport check_property(PropertyId id, const Procedure& P, const EnumerationBudget& budget,
                              const std::optional<Guarantee>& guarantee,
                              const std::optional<AltSet>& focus) {
  switch (id) {
    case PropertyId::Ext: return check_ext(P, budget, guarantee, focus);
    case PropertyId::Int: return check_int(P, budget, guarantee);
    case PropertyId::Sind: return check_sind(P, budget, guarantee);
    case PropertyId::Tiia: return check_tiia(P, budget, guarantee);
    case PropertyId::AlphaE: return check_alpha_e(P, budget, guarantee);
    case PropertyId::GammaE: return check_gamma_e(P, budget, guarantee);
  }
  throw Error("unreachable");
}

}  // namespace adtchoice
