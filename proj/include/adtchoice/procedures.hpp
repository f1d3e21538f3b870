#ifndef ADTCHOICE_PROCEDURES_HPP
#define ADTCHOICE_PROCEDURES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adtchoice/guarantee.hpp"
#include "adtchoice/term.hpp"

namespace adtchoice {

enum class ProcKind {
  Maximize,
  SatList,
  SatList2,
  CondSat,
  DefaultLarge,
  FirstList,
  FirstList2,
  SecondList,
  SecondList2,
  LeftmostTree,
  BiasLarge,
  BiasSmall,
  Avoid,
  WineChecklist,
  WineChecklistNested,
  FirstOfSearch,
  Table,
  Lifted,
};

std::string kind_name(ProcKind kind);
ProcKind kind_from_name(const std::string& name);

// A named, parameterized recipe. Parameters stay textual until
// instantiation so the CLI serialization (--procedure <kind> --param k=v)
// is the in-memory form too. Recognized keys per kind:
//   maximize        order=<attr> | relation=a>b,b>c,...
//   sat_list[,2]    u=<attr> threshold=<num>
//   cond_sat        known=x1,x2|known_attr=<attr>  order=<attr>
//   default_large   default=<id> n=<int> order=<attr>
//   bias_large/small n=<int> order=<attr>
//   avoid           avoid=<id> n=<int>
//   wine_checklist[_nested]  follow=Ctor:idx,...   (defaults Red:2, Dry:1)
//   table           map=<term>=<id>;...            (fallback: first leaf)
//   lifted          choice=x1,x2:x1;...
struct ProcedureSpec {
  ProcKind kind = ProcKind::Maximize;
  std::map<std::string, std::string> params;

  static ProcedureSpec make(ProcKind kind, std::map<std::string, std::string> params = {}) {
    return ProcedureSpec{kind, std::move(params)};
  }
};

// Total strict relation used by the maximizing procedures: either derived
// from a numeric attribute (descending, declaration index breaks ties) or
// given explicitly as pairs (then completeness is required but transitivity
// is not — the circular relation is a legitimate input).
class StrictOrder {
 public:
  static StrictOrder from_attribute(const Universe& universe, const std::string& attr);
  static StrictOrder from_pairs(const Universe& universe, const std::string& pairs);

  bool prefers(AltId a, AltId b) const;  // a beats b
  // Pairwise right fold, the appendix idiom: max(v1, max(v2, ... vn)).
  AltId fold_max(const std::vector<AltId>& values) const;
  AltId set_max(AltSet s) const { return fold_max(s.elements()); }

 private:
  int n_ = 0;
  std::vector<bool> beats_;  // n*n matrix
};

// A total map from menus (non-empty subsets of X) to chosen elements.
class ChoiceFunction {
 public:
  void set(AltSet menu, AltId choice);
  AltId at(AltSet menu) const;  // throws when undefined
  bool defined(AltSet menu) const;
  bool total_up_to(const Universe& universe, int max_size) const;

 private:
  std::map<std::uint64_t, AltId> map_;
};

// A decision procedure: a total map from terms of one schema to chosen
// alternatives, with the membership law P(a) ∈ extension(a) checked on
// every application. Immutable and pure after instantiation.
class Procedure {
 public:
  AltId operator()(const Term& a) const;

  const std::string& name() const { return name_; }
  ProcKind kind() const { return kind_; }
  const AdtSchema& schema() const { return *schema_; }
  const Universe& universe() const { return *universe_; }

  const std::optional<Guarantee>& guarantee() const { return guarantee_; }
  // Attaches a domain guarantee. Enforcement is lazy by default: apply only
  // rejects non-conforming terms when `enforce` is set; checkers restrict
  // their domains through the guarantee either way.
  Procedure with_guarantee(Guarantee g, bool enforce = false) const;

  Procedure(std::string name, ProcKind kind, const AdtSchema& schema, const Universe& universe,
            std::function<AltId(const Term&)> fn)
      : name_(std::move(name)), kind_(kind), schema_(&schema), universe_(&universe), fn_(std::move(fn)) {}

 private:
  std::string name_;
  ProcKind kind_;
  const AdtSchema* schema_;
  const Universe* universe_;
  std::function<AltId(const Term&)> fn_;
  std::optional<Guarantee> guarantee_;
  bool enforce_ = false;
};

// Resolves and validates a spec against a schema/universe. Throws on
// kind/schema mismatch, missing attributes or malformed parameters.
Procedure instantiate_procedure(const ProcedureSpec& spec, const Universe& universe,
                                const AdtSchema& schema);

inline AltId apply(const Procedure& P, const Term& a) { return P(a); }

// The canonical procedure of a choice function: apply = c ∘ extension.
Procedure lift_choice_function(ChoiceFunction c, const AdtSchema& schema,
                               const Universe& universe);

}  // namespace adtchoice

#endif
