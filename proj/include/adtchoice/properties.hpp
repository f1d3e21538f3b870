#ifndef ADTCHOICE_PROPERTIES_HPP
#define ADTCHOICE_PROPERTIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "adtchoice/enumeration.hpp"
#include "adtchoice/procedures.hpp"

namespace adtchoice {

enum class PropertyId { Ext, Int, Sind, Tiia, AlphaE, GammaE };

std::string property_name(PropertyId p);
PropertyId property_from_name(const std::string& name);

// Three-valued verdicts. Purely universal clauses (EXT, INT, SIND) can be
// Falsified by a concrete witness; clauses with an existential part (alphaE,
// gammaE, TIIA) are never refuted by a bounded search — a failed search is
// NoWitnessWithinBudget.
enum class Verdict { Falsified, HoldsUpToBudget, NoWitnessWithinBudget };

std::string verdict_name(Verdict v);

struct PropertyReport {
  PropertyId property = PropertyId::Ext;
  Verdict verdict = Verdict::HoldsUpToBudget;
  // Replayable witnesses: re-applying the procedure to them reproduces the
  // violation / undischarged instance.
  std::vector<Term> witness_terms;
  std::optional<AltSet> witness_set;  // alphaE's subset B
  std::vector<AltId> witness_alts;    // INT's (x, y)
  EnumerationBudget budget;
  std::optional<Guarantee> guarantee;
  std::string note;

  bool satisfied() const { return verdict == Verdict::HoldsUpToBudget; }
};

// The universal domain of every checker is the set of valid terms with at
// most budget.max_leaves leaves (restricted to guarantee-passing terms when
// a guarantee is given); existential searches get one extra leaf.

// Same choice on equivalent terms. With `focus`, the domain is restricted
// to representations of that one menu (the witness is then the first
// disagreeing pair in enumeration order for that menu).
PropertyReport check_ext(const Procedure& P, const EnumerationBudget& budget,
                         const std::optional<Guarantee>& guarantee = {},
                         const std::optional<AltSet>& focus = {});

// Renaming the chosen value forces the renamed value to be chosen.
PropertyReport check_int(const Procedure& P, const EnumerationBudget& budget,
                         const std::optional<Guarantee>& guarantee = {});

// The top choice is a fixed coordinate of the child-choice tuple,
// independent of child structure. Value slots range over the universe,
// recursive slots over terms with at most `sind_child_leaves` leaves.
PropertyReport check_sind(const Procedure& P, const EnumerationBudget& budget,
                          const std::optional<Guarantee>& guarantee = {},
                          int sind_child_leaves = 3);

// After an overridden sub-choice, the loser can be swapped for the winner
// in some re-representation of the sub-problem. Substitutable schemas only.
PropertyReport check_tiia(const Procedure& P, const EnumerationBudget& budget,
                          const std::optional<Guarantee>& guarantee = {});

// Searches for a representation b of target with P(a[child := b]) = P(a);
// the single-pair primitive behind check_tiia.
std::optional<Term> tiia_witness_search(const Procedure& P, const Term& a, int child_index,
                                        int search_max_leaves,
                                        const std::optional<Guarantee>& guarantee = {});

// Contraction consistency: the choice survives into every sub-menu that
// contains it, for some representation.
PropertyReport check_alpha_e(const Procedure& P, const EnumerationBudget& budget,
                             const std::optional<Guarantee>& guarantee = {});

// Expansion consistency: the choice survives union with menus whose own
// choice it beats, for some representation.
PropertyReport check_gamma_e(const Procedure& P, const EnumerationBudget& budget,
                             const std::optional<Guarantee>& guarantee = {});

PropertyReport check_property(PropertyId id, const Procedure& P, const EnumerationBudget& budget,
                              const std::optional<Guarantee>& guarantee = {},
                              const std::optional<AltSet>& focus = {});

}  // namespace adtchoice

#endif
