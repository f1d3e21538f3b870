#include "adtchoice/procedures.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace adtchoice {

std::string kind_name(ProcKind kind) {
  switch (kind) {
    case ProcKind::Maximize: return "maximize";
    case ProcKind::SatList: return "sat_list";
    case ProcKind::SatList2: return "sat_list2";
    case ProcKind::CondSat: return "cond_sat";
    case ProcKind::DefaultLarge: return "default_large";
    case ProcKind::FirstList: return "first_list";
    case ProcKind::FirstList2: return "first_list2";
    case ProcKind::SecondList: return "second_list";
    case ProcKind::SecondList2: return "second_list2";
    case ProcKind::LeftmostTree: return "leftmost_tree";
    case ProcKind::BiasLarge: return "bias_large";
    case ProcKind::BiasSmall: return "bias_small";
    case ProcKind::Avoid: return "avoid";
    case ProcKind::WineChecklist: return "wine_checklist";
    case ProcKind::WineChecklistNested: return "wine_checklist_nested";
    case ProcKind::FirstOfSearch: return "first_of_search";
    case ProcKind::Table: return "table";
    case ProcKind::Lifted: return "lifted";
  }
  return "?";
}

ProcKind kind_from_name(const std::string& name) {
  static const std::map<std::string, ProcKind> table = {
      {"maximize", ProcKind::Maximize},
      {"sat_list", ProcKind::SatList},
      {"sat_list2", ProcKind::SatList2},
      {"cond_sat", ProcKind::CondSat},
      {"default_large", ProcKind::DefaultLarge},
      {"first_list", ProcKind::FirstList},
      {"first_list2", ProcKind::FirstList2},
      {"second_list", ProcKind::SecondList},
      {"second_list2", ProcKind::SecondList2},
      {"leftmost_tree", ProcKind::LeftmostTree},
      {"bias_large", ProcKind::BiasLarge},
      {"bias_small", ProcKind::BiasSmall},
      {"avoid", ProcKind::Avoid},
      {"wine_checklist", ProcKind::WineChecklist},
      {"wine_checklist_nested", ProcKind::WineChecklistNested},
      {"first_of_search", ProcKind::FirstOfSearch},
      {"table", ProcKind::Table},
      {"lifted", ProcKind::Lifted},
  };
  auto it = table.find(name);
  if (it == table.end()) throw Error("unknown procedure kind: " + name);
  return it->second;
}

// --- strict orders --------------------------------------------------------

StrictOrder StrictOrder::from_attribute(const Universe& universe, const std::string& attr) {
  if (!universe.has_attr(attr))
    throw Error("order attribute " + attr + " is not defined on every element");
  StrictOrder o;
  o.n_ = universe.size();
  o.beats_.assign(o.n_ * o.n_, false);
  for (int a = 0; a < o.n_; ++a) {
    for (int b = 0; b < o.n_; ++b) {
      if (a == b) continue;
      double va = universe.number(AltId{(std::uint32_t)a}, attr);
      double vb = universe.number(AltId{(std::uint32_t)b}, attr);
      o.beats_[a * o.n_ + b] = va > vb || (va == vb && a < b);
    }
  }
  return o;
}

StrictOrder StrictOrder::from_pairs(const Universe& universe, const std::string& pairs) {
  StrictOrder o;
  o.n_ = universe.size();
  o.beats_.assign(o.n_ * o.n_, false);
  std::istringstream in(pairs);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto gt = item.find('>');
    if (gt == std::string::npos) throw Error("relation entries look like a>b, got: " + item);
    auto strip = [](std::string s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };
    AltId a = universe.resolve(strip(item.substr(0, gt)));
    AltId b = universe.resolve(strip(item.substr(gt + 1)));
    if (a == b) throw Error("relation must be irreflexive: " + item);
    o.beats_[a.index * o.n_ + b.index] = true;
  }
  for (int a = 0; a < o.n_; ++a)
    for (int b = a + 1; b < o.n_; ++b) {
      bool ab = o.beats_[a * o.n_ + b], ba = o.beats_[b * o.n_ + a];
      if (ab == ba)
        throw Error("relation must decide every pair exactly once: " +
                    universe.name(AltId{(std::uint32_t)a}) + " vs " +
                    universe.name(AltId{(std::uint32_t)b}));
    }
  return o;
}

bool StrictOrder::prefers(AltId a, AltId b) const { return beats_[a.index * n_ + b.index]; }

AltId StrictOrder::fold_max(const std::vector<AltId>& values) const {
  if (values.empty()) throw Error("fold_max on empty sequence");
  AltId acc = values.back();
  for (int i = static_cast<int>(values.size()) - 2; i >= 0; --i)
    acc = prefers(values[i], acc) ? values[i] : acc;
  return acc;
}

// --- choice functions ------------------------------------------------------

void ChoiceFunction::set(AltSet menu, AltId choice) {
  if (!menu.contains(choice)) throw Error("choice must belong to its menu");
  map_[menu.bits()] = choice;
}

AltId ChoiceFunction::at(AltSet menu) const {
  auto it = map_.find(menu.bits());
  if (it == map_.end()) throw Error("choice function is undefined on a needed menu");
  return it->second;
}

bool ChoiceFunction::defined(AltSet menu) const { return map_.count(menu.bits()) > 0; }

bool ChoiceFunction::total_up_to(const Universe& universe, int max_size) const {
  std::uint64_t all = universe.all().bits();
  for (std::uint64_t m = 1; m <= all; ++m) {
    if ((m & all) != m) continue;
    AltSet s(m);
    if (s.size() <= max_size && !defined(s)) return false;
  }
  return true;
}

// --- procedure instantiation ------------------------------------------------

namespace {

struct Params {
  const std::map<std::string, std::string>& raw;
  const Universe& universe;

  std::string str(const std::string& key) const {
    auto it = raw.find(key);
    if (it == raw.end()) throw Error("missing parameter: " + key);
    return it->second;
  }
  std::optional<std::string> opt(const std::string& key) const {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    return it->second;
  }
  double num(const std::string& key) const {
    try {
      return std::stod(str(key));
    } catch (const std::exception&) {
      throw Error("parameter " + key + " must be numeric");
    }
  }
  int integer(const std::string& key) const {
    int v = static_cast<int>(num(key));
    if (v < 1) throw Error("parameter " + key + " must be >= 1");
    return v;
  }
  std::string attr(const std::string& key) const {
    std::string a = str(key);
    if (!universe.has_attr(a))
      throw Error("attribute " + a + " is not defined on every element");
    return a;
  }
  AltId element(const std::string& key) const { return universe.resolve(str(key)); }
};

// [Value]-slot unary constructor plus [Value, Recursive] constructor.
struct ListFamily {
  std::uint32_t sing, cons;
};
// [Value]-slot unary constructor plus [Recursive, Recursive] constructor.
struct List2Family {
  std::uint32_t sing, cat;
};
// [Value]-slot unary constructor plus one all-recursive constructor.
struct TreeFamily {
  std::uint32_t leaf, node;
};

std::optional<ListFamily> as_list(const AdtSchema& s) {
  if (s.nested() || s.constructor_count() != 2) return std::nullopt;
  ListFamily f{0, 0};
  bool sing = false, cons = false;
  for (std::uint32_t i = 0; i < 2; ++i) {
    const auto& c = s.constructors[i];
    if (c.arity() == 1 && c.slots[0] == SlotKind::Value) {
      f.sing = i;
      sing = true;
    } else if (c.arity() == 2 && c.slots[0] == SlotKind::Value &&
               c.slots[1] == SlotKind::Recursive) {
      f.cons = i;
      cons = true;
    }
  }
  if (!sing || !cons) return std::nullopt;
  return f;
}

std::optional<List2Family> as_list2(const AdtSchema& s) {
  if (s.nested() || s.constructor_count() != 2) return std::nullopt;
  List2Family f{0, 0};
  bool sing = false, cat = false;
  for (std::uint32_t i = 0; i < 2; ++i) {
    const auto& c = s.constructors[i];
    if (c.arity() == 1 && c.slots[0] == SlotKind::Value) {
      f.sing = i;
      sing = true;
    } else if (c.arity() == 2 && c.slots[0] == SlotKind::Recursive &&
               c.slots[1] == SlotKind::Recursive) {
      f.cat = i;
      cat = true;
    }
  }
  if (!sing || !cat) return std::nullopt;
  return f;
}

std::optional<TreeFamily> as_tree(const AdtSchema& s) {
  if (s.nested() || s.constructor_count() != 2) return std::nullopt;
  TreeFamily f{0, 0};
  bool leaf = false, node = false;
  for (std::uint32_t i = 0; i < 2; ++i) {
    const auto& c = s.constructors[i];
    if (c.arity() == 1 && c.slots[0] == SlotKind::Value) {
      f.leaf = i;
      leaf = true;
    } else if (c.arity() >= 2 && c.value_slots() == 0) {
      f.node = i;
      node = true;
    }
  }
  if (!leaf || !node) return std::nullopt;
  return f;
}

ListFamily require_list(const AdtSchema& s, ProcKind kind) {
  auto f = as_list(s);
  if (!f)
    throw Error(kind_name(kind) + " needs a list grammar (unary value constructor plus "
                                  "value-then-recursive constructor); schema " +
                s.name + " does not match");
  return *f;
}

List2Family require_list2(const AdtSchema& s, ProcKind kind) {
  auto f = as_list2(s);
  if (!f)
    throw Error(kind_name(kind) + " needs a concatenation-list grammar (unary value "
                                  "constructor plus recursive-pair constructor); schema " +
                s.name + " does not match");
  return *f;
}

TreeFamily require_tree(const AdtSchema& s, ProcKind kind) {
  auto f = as_tree(s);
  if (!f)
    throw Error(kind_name(kind) + " needs a tree grammar (unary value constructor plus an "
                                  "all-recursive node constructor); schema " +
                s.name + " does not match");
  return *f;
}

void require_plain(const AdtSchema& s, ProcKind kind) {
  if (s.nested())
    throw Error(kind_name(kind) + " is not defined on nested schemas");
}

AltId child_value(const std::function<AltId(const Term&)>& eval, const Term& t, int i) {
  const TermChild& c = t.child(i);
  if (std::holds_alternative<AltId>(c)) return std::get<AltId>(c);
  return eval(std::get<Term>(c));
}

AltId first_leaf(const Term& t) {
  const TermChild& c = t.child(0);
  if (std::holds_alternative<AltId>(c)) return std::get<AltId>(c);
  return first_leaf(std::get<Term>(c));
}

// Per-constructor routing for the checklist procedures: "Ctor:index" pairs,
// 1-based. Red:2 / Dry:1 when the names exist and no map is given.
std::vector<int> parse_follow(const Params& p, const AdtSchema& schema, std::uint32_t value_ctor) {
  std::vector<int> follow(schema.constructor_count(), -1);
  if (auto spec = p.opt("follow")) {
    std::istringstream in(*spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw Error("follow entries look like Ctor:index");
      std::string name = item.substr(0, colon);
      auto ci = schema.find_ctor(name);
      if (!ci) throw Error("follow names unknown constructor " + name);
      int idx = std::stoi(item.substr(colon + 1));
      if (idx < 1 || idx > schema.constructors[*ci].arity())
        throw Error("follow index out of range for " + name);
      follow[*ci] = idx - 1;
    }
  } else {
    if (auto red = schema.find_ctor("Red")) follow[*red] = 1;
    if (auto dry = schema.find_ctor("Dry")) follow[*dry] = 0;
  }
  for (std::uint32_t i = 0; i < schema.constructors.size(); ++i) {
    if (i == value_ctor) continue;
    if (follow[i] < 0)
      throw Error("no follow index for constructor " + schema.constructors[i].name);
    if (schema.constructors[i].slots[follow[i]] != SlotKind::Recursive)
      throw Error("follow index for " + schema.constructors[i].name +
                  " must name a recursive slot");
  }
  return follow;
}

using Eval = std::function<AltId(const Term&)>;

// Ties the recursive knot without a shared_ptr cycle: the body captures a
// raw pointer, the returned wrapper owns the storage.
template <typename Make>
Eval recursive(Make&& make) {
  auto self = std::make_shared<Eval>();
  *self = make(self.get());
  return [self](const Term& t) { return (*self)(t); };
}

std::uint32_t checklist_value_ctor(const AdtSchema& schema, ProcKind kind) {
  std::optional<std::uint32_t> value_ctor;
  for (std::uint32_t i = 0; i < schema.constructors.size(); ++i) {
    const auto& c = schema.constructors[i];
    if (c.arity() == 1 && c.slots[0] == SlotKind::Value) {
      if (value_ctor) throw Error(kind_name(kind) + ": schema has two unary value constructors");
      value_ctor = i;
    } else if (c.value_slots() > 0) {
      throw Error(kind_name(kind) + ": non-unary constructors must be all-recursive");
    }
  }
  if (!value_ctor) throw Error(kind_name(kind) + ": schema has no unary value constructor");
  return *value_ctor;
}

}  // namespace

Procedure instantiate_procedure(const ProcedureSpec& spec, const Universe& universe,
                                const AdtSchema& schema) {
  Params p{spec.params, universe};
  std::function<AltId(const Term&)> fn;
  std::string name = kind_name(spec.kind);

  switch (spec.kind) {
    case ProcKind::Maximize: {
      require_plain(schema, spec.kind);
      StrictOrder order = p.opt("relation")
                              ? StrictOrder::from_pairs(universe, p.str("relation"))
                              : StrictOrder::from_attribute(universe, p.attr("order"));
      fn = recursive([&](Eval* rec) {
        return [order, rec](const Term& t) {
          std::vector<AltId> vals;
          vals.reserve(t.arity());
          for (int i = 0; i < t.arity(); ++i) vals.push_back(child_value(*rec, t, i));
          return order.fold_max(vals);
        };
      });
      break;
    }
    case ProcKind::SatList: {
      ListFamily f = require_list(schema, spec.kind);
      std::string u = p.attr("u");
      double threshold = p.num("threshold");
      fn = recursive([&](Eval* rec) {
        return [f, u, threshold, &universe, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
          AltId head = std::get<AltId>(t.child(0));
          if (universe.number(head, u) >= threshold) return head;
          return (*rec)(std::get<Term>(t.child(1)));
        };
      });
      break;
    }
    case ProcKind::SatList2: {
      List2Family f = require_list2(schema, spec.kind);
      std::string u = p.attr("u");
      double threshold = p.num("threshold");
      fn = recursive([&](Eval* rec) {
        return [f, u, threshold, &universe, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
          AltId left = (*rec)(std::get<Term>(t.child(0)));
          if (universe.number(left, u) >= threshold) return left;
          return (*rec)(std::get<Term>(t.child(1)));
        };
      });
      break;
    }
    case ProcKind::CondSat: {
      require_plain(schema, spec.kind);
      AltSet known;
      if (auto ids = p.opt("known")) {
        known = universe.parse_set(*ids);
      } else {
        std::string attr = p.attr("known_attr");
        for (int i = 0; i < universe.size(); ++i)
          if (universe.boolean(AltId{(std::uint32_t)i}, attr)) known.insert(AltId{(std::uint32_t)i});
      }
      StrictOrder order = StrictOrder::from_attribute(universe, p.attr("order"));
      fn = [known, order](const Term& t) -> AltId {
        AltSet ext = t.extension();
        std::vector<AltId> leaves = leaf_sequence(t);
        if (2 * (ext & known).size() > ext.size()) {
          for (AltId x : leaves)
            if (known.contains(x)) return x;
          return leaves.back();
        }
        return order.fold_max(leaves);
      };
      break;
    }
    case ProcKind::DefaultLarge: {
      require_plain(schema, spec.kind);
      AltId fallback = p.element("default");
      int n = p.integer("n");
      StrictOrder order = StrictOrder::from_attribute(universe, p.attr("order"));
      fn = [fallback, n, order](const Term& t) -> AltId {
        AltSet ext = t.extension();
        if (ext.contains(fallback) && ext.size() > n) return fallback;
        return order.fold_max(leaf_sequence(t));
      };
      break;
    }
    case ProcKind::FirstList: {
      ListFamily f = require_list(schema, spec.kind);
      (void)f;
      fn = [](const Term& t) { return std::get<AltId>(t.child(0)); };
      break;
    }
    case ProcKind::FirstList2: {
      List2Family f = require_list2(schema, spec.kind);
      fn = recursive([&](Eval* rec) {
        return [f, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
          return (*rec)(std::get<Term>(t.child(0)));
        };
      });
      break;
    }
    case ProcKind::SecondList: {
      ListFamily f = require_list(schema, spec.kind);
      fn = [f](const Term& t) -> AltId {
        if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
        return std::get<AltId>(std::get<Term>(t.child(1)).child(0));
      };
      break;
    }
    case ProcKind::SecondList2: {
      List2Family f = require_list2(schema, spec.kind);
      fn = recursive([&](Eval* rec) {
        return [f, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
          const Term& left = std::get<Term>(t.child(0));
          if (left.ctor_index() == f.sing) return (*rec)(std::get<Term>(t.child(1)));
          return (*rec)(left);
        };
      });
      break;
    }
    case ProcKind::LeftmostTree: {
      require_plain(schema, spec.kind);
      fn = [](const Term& t) { return first_leaf(t); };
      break;
    }
    case ProcKind::BiasLarge:
    case ProcKind::BiasSmall: {
      TreeFamily f = require_tree(schema, spec.kind);
      int n = p.integer("n");
      StrictOrder order = StrictOrder::from_attribute(universe, p.attr("order"));
      bool larger = spec.kind == ProcKind::BiasLarge;
      fn = recursive([&](Eval* rec) {
        return [f, n, order, larger, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.leaf) return std::get<AltId>(t.child(0));
          if (t.extension().size() < n) return order.fold_max(leaf_sequence(t));
          std::vector<int> sizes;
          sizes.reserve(t.arity());
          for (int i = 0; i < t.arity(); ++i)
            sizes.push_back(std::get<Term>(t.child(i)).extension().size());
          for (int i = 0; i + 1 < t.arity(); ++i) {
            bool wins = true;
            for (int j = 0; j < t.arity() && wins; ++j) {
              if (i == j) continue;
              wins = larger ? sizes[i] > sizes[j] : sizes[i] < sizes[j];
            }
            if (wins) return (*rec)(std::get<Term>(t.child(i)));
          }
          return (*rec)(std::get<Term>(t.child(t.arity() - 1)));
        };
      });
      break;
    }
    case ProcKind::Avoid: {
      List2Family f = require_list2(schema, spec.kind);
      AltId bad = p.element("avoid");
      int n = p.integer("n");
      fn = recursive([&](Eval* rec) {
        return [f, bad, n, rec](const Term& t) -> AltId {
          if (t.ctor_index() == f.sing) return std::get<AltId>(t.child(0));
          AltId left = (*rec)(std::get<Term>(t.child(0)));
          if (left != bad || t.extension().size() <= n) return left;
          return (*rec)(std::get<Term>(t.child(1)));
        };
      });
      break;
    }
    case ProcKind::WineChecklist:
    case ProcKind::WineChecklistNested: {
      bool nested = spec.kind == ProcKind::WineChecklistNested;
      if (nested != schema.nested())
        throw Error(kind_name(spec.kind) + (nested ? " needs a nested schema" : " needs a plain schema"));
      std::uint32_t value_ctor = checklist_value_ctor(schema, spec.kind);
      std::vector<int> follow = parse_follow(p, schema, value_ctor);
      fn = recursive([&](Eval* rec) {
        return [value_ctor, follow, nested, rec](const Term& t) -> AltId {
          if (t.ctor_index() == value_ctor) {
            if (!nested) return std::get<AltId>(t.child(0));
            return first_leaf(std::get<Term>(t.child(0)));
          }
          return (*rec)(std::get<Term>(t.child(follow[t.ctor_index()])));
        };
      });
      break;
    }
    case ProcKind::FirstOfSearch: {
      if (!schema.nested())
        throw Error("first_of_search needs a nested schema (pages inside results)");
      for (const auto& c : schema.constructors)
        if (c.slots[0] != SlotKind::Value)
          throw Error("first_of_search: every constructor must carry its page first");
      fn = [](const Term& t) { return first_leaf(std::get<Term>(t.child(0))); };
      break;
    }
    case ProcKind::Table: {
      require_plain(schema, spec.kind);
      auto entries = p.opt("map");
      std::unordered_map<std::size_t, std::vector<std::pair<Term, AltId>>> table;
      if (entries) {
        std::istringstream in(*entries);
        std::string item;
        while (std::getline(in, item, ';')) {
          if (item.empty()) continue;
          auto eq = item.rfind('=');
          if (eq == std::string::npos) throw Error("table entries look like <term>=<id>");
          Term key = parse_term(schema, universe, item.substr(0, eq));
          AltId choice = universe.resolve(item.substr(eq + 1));
          if (!key.extension().contains(choice))
            throw Error("table choice must belong to the term's extension");
          table[key.hash()].emplace_back(key, choice);
        }
      }
      fn = [table = std::move(table)](const Term& t) -> AltId {
        auto it = table.find(t.hash());
        if (it != table.end())
          for (const auto& [key, choice] : it->second)
            if (key == t) return choice;
        return first_leaf(t);
      };
      break;
    }
    case ProcKind::Lifted: {
      require_plain(schema, spec.kind);
      ChoiceFunction c;
      std::string entries = p.str("choice");
      std::istringstream in(entries);
      std::string item;
      while (std::getline(in, item, ';')) {
        if (item.empty()) continue;
        auto colon = item.rfind(':');
        if (colon == std::string::npos) throw Error("choice entries look like x1,x2:x1");
        AltSet menu = universe.parse_set(item.substr(0, colon));
        AltId choice = universe.resolve(item.substr(colon + 1));
        c.set(menu, choice);
      }
      return lift_choice_function(std::move(c), schema, universe);
    }
  }
  return Procedure(std::move(name), spec.kind, schema, universe, std::move(fn));
}

Procedure lift_choice_function(ChoiceFunction c, const AdtSchema& schema,
                               const Universe& universe) {
  auto fn = [c = std::move(c)](const Term& t) { return c.at(t.extension()); };
  return Procedure("lifted", ProcKind::Lifted, schema, universe, std::move(fn));
}

AltId Procedure::operator()(const Term& a) const {
  if (enforce_ && guarantee_ && !guarantee_filter(*guarantee_, *schema_, *universe_, a))
    throw Error(name_ + ": term violates the attached guarantee " + guarantee_->to_string());
  AltId chosen = fn_(a);
  if (!a.extension().contains(chosen))
    throw Error(name_ + ": membership violated (chose " + universe_->name(chosen) +
                " outside the extension)");
  return chosen;
}

Procedure Procedure::with_guarantee(Guarantee g, bool enforce) const {
  Procedure copy = *this;
  copy.guarantee_ = std::move(g);
  copy.enforce_ = enforce;
  return copy;
}

}  // namespace adtchoice
