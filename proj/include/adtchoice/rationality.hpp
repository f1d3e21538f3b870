#ifndef ADTCHOICE_RATIONALITY_HPP
#define ADTCHOICE_RATIONALITY_HPP

#include <optional>
#include <string>

#include "adtchoice/properties.hpp"

namespace adtchoice {

// A binary relation over the universe, with its structural flags computed
// from the matrix (never asserted). Strict instances are irreflexive
// orders; weak ones are reflexive.
class PreferenceRelation {
 public:
  PreferenceRelation(int n, bool strict) : n_(n), strict_(strict), rel_(n * n, false) {}

  void set(AltId a, AltId b, bool v = true) { rel_[a.index * n_ + b.index] = v; }
  bool related(AltId a, AltId b) const { return rel_[a.index * n_ + b.index]; }
  bool strict() const { return strict_; }
  int size() const { return n_; }

  bool complete() const;      // every distinct pair decided (some direction)
  bool transitive() const;
  bool antisymmetric() const;  // never both directions on distinct pairs

  // Greatest elements of A: strict — beats every other member; weak — is
  // related to every member.
  AltSet maximals(AltSet A) const;

  std::string to_string(const Universe& universe) const;

  friend bool operator==(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.n_ == b.n_ && a.strict_ == b.strict_ && a.rel_ == b.rel_;
  }

 private:
  int n_;
  bool strict_;
  std::vector<bool> rel_;
};

// A total map from menus to non-empty sub-menus.
class ChoiceCorrespondence {
 public:
  void set(AltSet menu, AltSet choices);
  AltSet at(AltSet menu) const;
  bool defined(AltSet menu) const;

 private:
  std::map<std::uint64_t, AltSet> map_;
};

// c(A) = P(r(A)) with r the canonical representation (reordered to satisfy
// the guarantee when one is given). Defined on every non-empty menu up to
// `max_size` elements.
ChoiceFunction induced_choice_function(const Procedure& P, int max_size,
                                       const std::optional<Guarantee>& guarantee = {});

// C(A) = the choices over every representation of A within the budget.
// Monotone in the budget.
ChoiceCorrespondence induced_correspondence(const Procedure& P, const EnumerationBudget& budget,
                                            const std::optional<Guarantee>& guarantee = {});

// Maximization order recovery for single-valued choice. Constructive route:
// read the order off binary menus and verify c(A) = max everywhere.
// Brute-force route: try all |X|! strict total orders. The two must agree
// (RouteDisagreement otherwise). Universe capped at 6 elements.
std::optional<PreferenceRelation> rationalize_choice_function(const ChoiceFunction& c,
                                                              const Universe& universe,
                                                              int max_size);

// Complete-and-transitive recovery for correspondences. Constructive route:
// x ≽ y iff x ∈ C({x,y}), verify C(A) = maximals everywhere. Brute-force
// route: all complete relations (3 options per pair) filtered for
// transitivity. Universe capped at 4 elements.
std::optional<PreferenceRelation> rationalize_correspondence(const ChoiceCorrespondence& C,
                                                             const Universe& universe,
                                                             int max_size);

struct RationalityVerdict {
  // Choice-function implementation: P agrees with its induced choice
  // function on every enumerated term. Verdict mirrors EXT by construction;
  // a mismatch is a RouteDisagreement.
  Verdict cfi = Verdict::HoldsUpToBudget;
  std::vector<Term> cfi_witness;

  PropertyReport ext, alpha_e, gamma_e;

  bool cf_rationalizable = false;
  std::optional<PreferenceRelation> cf_relation;

  bool cc_rationalizable = false;
  std::optional<PreferenceRelation> cc_relation;
  ChoiceCorrespondence correspondence;
};

// Runs the axiom route (EXT∧alphaE for functions, alphaE∧gammaE for
// correspondences) and the search route side by side; any disagreement is a
// hard RouteDisagreement error.
RationalityVerdict classify_procedure(const Procedure& P, const EnumerationBudget& budget,
                                      const std::optional<Guarantee>& guarantee = {});

}  // namespace adtchoice

#endif
