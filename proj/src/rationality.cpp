#include "adtchoice/rationality.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace adtchoice {

bool PreferenceRelation::complete() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (!rel_[a * n_ + b] && !rel_[b * n_ + a]) return false;
  return true;
}

bool PreferenceRelation::transitive() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (!rel_[a * n_ + b]) continue;
      for (int c = 0; c < n_; ++c)
        if (rel_[b * n_ + c] && !rel_[a * n_ + c]) return false;
    }
  return true;
}

bool PreferenceRelation::antisymmetric() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (rel_[a * n_ + b] && rel_[b * n_ + a]) return false;
  return true;
}

AltSet PreferenceRelation::maximals(AltSet A) const {
  AltSet out;
  for (AltId x : A.elements()) {
    bool top = true;
    for (AltId y : A.elements()) {
      if (x == y) continue;
      if (!related(x, y)) {
        top = false;
        break;
      }
    }
    if (top) out.insert(x);
  }
  return out;
}

std::string PreferenceRelation::to_string(const Universe& universe) const {
  // Total (pre)orders print as a chain; anything else as raw pairs.
  if (complete() && transitive()) {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    auto geq = [&](int a, int b) {
      return strict_ ? related(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)b})
                     : related(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)b});
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return geq(a, b) && !(geq(b, a));
    });
    std::ostringstream out;
    for (int i = 0; i < n_; ++i) {
      if (i) {
        bool tie = !strict_ && related(AltId{(std::uint32_t)order[i]}, AltId{(std::uint32_t)order[i - 1]}) &&
                   related(AltId{(std::uint32_t)order[i - 1]}, AltId{(std::uint32_t)order[i]});
        out << (tie ? " ~ " : " > ");
      }
      out << universe.name(AltId{(std::uint32_t)order[i]});
    }
    return out.str();
  }
  std::ostringstream out;
  bool first = true;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (a == b || !rel_[a * n_ + b]) continue;
      if (!first) out << ", ";
      out << universe.name(AltId{(std::uint32_t)a}) << (strict_ ? " > " : " >= ")
          << universe.name(AltId{(std::uint32_t)b});
      first = false;
    }
  return out.str();
}

void ChoiceCorrespondence::set(AltSet menu, AltSet choices) {
  if (choices.empty() || !choices.subset_of(menu))
    throw Error("correspondence values must be non-empty sub-menus");
  map_[menu.bits()] = choices;
}

AltSet ChoiceCorrespondence::at(AltSet menu) const {
  auto it = map_.find(menu.bits());
  if (it == map_.end()) throw Error("correspondence is undefined on a needed menu");
  return it->second;
}

bool ChoiceCorrespondence::defined(AltSet menu) const { return map_.count(menu.bits()) > 0; }

namespace {

// Non-empty subsets of the universe with at most max_size elements, in
// ascending mask order.
std::vector<AltSet> menus_up_to(const Universe& universe, int max_size) {
  std::vector<AltSet> out;
  std::uint64_t all = universe.all().bits();
  for (std::uint64_t m = 1; m <= all; ++m) {
    if ((m & all) != m) continue;
    AltSet s(m);
    if (s.size() <= max_size) out.push_back(s);
  }
  return out;
}

std::vector<AltId> guarantee_leaf_order(const Universe& universe, AltSet A,
                                        const Guarantee& g) {
  std::vector<AltId> order = A.elements();
  if (g.kind == Guarantee::Kind::SortedBy) {
    std::stable_sort(order.begin(), order.end(), [&](AltId a, AltId b) {
      double va = universe.number(a, g.attr), vb = universe.number(b, g.attr);
      if (va != vb) return g.ascending ? va < vb : va > vb;
      return a.index < b.index;
    });
  }
  return order;
}

}  // namespace

ChoiceFunction induced_choice_function(const Procedure& P, int max_size,
                                       const std::optional<Guarantee>& guarantee) {
  const Universe& u = P.universe();
  const AdtSchema& schema = P.schema();
  if (!analyze_schema(schema).representable && max_size > 1)
    throw Error("schema " + schema.name + " is not representable; no induced choice function");
  ChoiceFunction c;
  for (AltSet A : menus_up_to(u, max_size)) {
    Term rep;
    if (guarantee) {
      std::vector<AltId> order = guarantee_leaf_order(u, A, *guarantee);
      rep = canonical_representation(schema, u, A, &order);
      if (!guarantee_filter(*guarantee, schema, u, rep))
        throw Error("canonical representation of " + u.set_to_string(A) +
                    " cannot satisfy the guarantee " + guarantee->to_string());
    } else {
      rep = canonical_representation(schema, u, A);
    }
    c.set(A, P(rep));
  }
  return c;
}

ChoiceCorrespondence induced_correspondence(const Procedure& P, const EnumerationBudget& budget,
                                            const std::optional<Guarantee>& guarantee) {
  const Universe& u = P.universe();
  ChoiceCorrespondence C;
  for (AltSet A : menus_up_to(u, u.size())) {
    if (budget.max_leaves < A.size())
      throw Error("budget max_leaves " + std::to_string(budget.max_leaves) +
                  " cannot represent menus of size " + std::to_string(A.size()));
    AltSet choices;
    auto stream = enumerate_representations(P.schema(), u, A, budget, guarantee);
    while (auto t = stream->next()) choices.insert(P(*t));
    if (choices.empty())
      throw Error("menu " + u.set_to_string(A) + " has no admissible representation");
    C.set(A, choices);
  }
  return C;
}

std::optional<PreferenceRelation> rationalize_choice_function(const ChoiceFunction& c,
                                                              const Universe& universe,
                                                              int max_size) {
  const int n = universe.size();
  if (n > 6) throw Error("choice-function rationalization is capped at 6 elements");
  std::vector<AltSet> menus = menus_up_to(universe, max_size);
  for (AltSet A : menus)
    if (!c.defined(A))
      throw Error("choice function is undefined on " + universe.set_to_string(A));

  // Constructive route: binary menus reveal the order.
  std::optional<PreferenceRelation> constructive;
  if (n == 1) {
    constructive = PreferenceRelation(1, true);
  } else {
    PreferenceRelation rel(n, true);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        AltSet pair;
        pair.insert(AltId{(std::uint32_t)a});
        pair.insert(AltId{(std::uint32_t)b});
        AltId winner = c.at(pair);
        AltId loser = winner.index == (std::uint32_t)a ? AltId{(std::uint32_t)b} : AltId{(std::uint32_t)a};
        rel.set(winner, loser);
      }
    bool ok = rel.complete() && rel.transitive() && rel.antisymmetric();
    for (AltSet A : menus) {
      if (!ok) break;
      AltSet m = rel.maximals(A);
      ok = m.size() == 1 && m.min() == c.at(A);
    }
    if (ok) constructive = rel;
  }

  // Brute-force route: all strict total orders, lexicographic by permutation.
  std::vector<PreferenceRelation> found;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // perm[0] is best.
    PreferenceRelation rel(n, true);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        rel.set(AltId{(std::uint32_t)perm[i]}, AltId{(std::uint32_t)perm[j]});
    bool ok = true;
    for (AltSet A : menus) {
      AltSet m = rel.maximals(A);
      if (m.size() != 1 || m.min() != c.at(A)) {
        ok = false;
        break;
      }
    }
    if (ok) found.push_back(rel);
  } while (std::next_permutation(perm.begin(), perm.end()));

  bool constructive_found = constructive.has_value();
  bool oracle_found = !found.empty();
  if (constructive_found != oracle_found)
    throw RouteDisagreement("choice-function rationalization: constructive and brute-force "
                            "routes disagree on existence");
  if (!oracle_found) return std::nullopt;
  if (n > 1 && !(found.size() == 1 && found.front() == *constructive))
    throw RouteDisagreement("choice-function rationalization: routes found different orders");
  return constructive;
}

std::optional<PreferenceRelation> rationalize_correspondence(const ChoiceCorrespondence& C,
                                                             const Universe& universe,
                                                             int max_size) {
  const int n = universe.size();
  if (n > 4) throw Error("correspondence rationalization is capped at 4 elements");
  std::vector<AltSet> menus = menus_up_to(universe, max_size);
  for (AltSet A : menus)
    if (!C.defined(A))
      throw Error("correspondence is undefined on " + universe.set_to_string(A));

  auto rationalizes = [&](const PreferenceRelation& rel) {
    for (AltSet A : menus)
      if (rel.maximals(A) != C.at(A)) return false;
    return true;
  };

  // Constructive route: the relation is pinned by binary menus.
  PreferenceRelation rel(n, false);
  for (int a = 0; a < n; ++a) rel.set(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)a});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      AltSet pair;
      pair.insert(AltId{(std::uint32_t)a});
      pair.insert(AltId{(std::uint32_t)b});
      AltSet ch = C.at(pair);
      if (ch.contains(AltId{(std::uint32_t)a})) rel.set(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)b});
      if (ch.contains(AltId{(std::uint32_t)b})) rel.set(AltId{(std::uint32_t)b}, AltId{(std::uint32_t)a});
    }
  std::optional<PreferenceRelation> constructive;
  if (rel.complete() && rel.transitive() && rationalizes(rel)) constructive = rel;

  // Brute-force route: three options per unordered pair, reflexive closure,
  // transitivity filtered. Enumerated in lexicographic option order.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<PreferenceRelation> found;
  long long total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    PreferenceRelation cand(n, false);
    for (int a = 0; a < n; ++a) cand.set(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)a});
    long long rem = code;
    for (auto [a, b] : pairs) {
      int opt = rem % 3;
      rem /= 3;
      if (opt == 0 || opt == 2) cand.set(AltId{(std::uint32_t)a}, AltId{(std::uint32_t)b});
      if (opt == 1 || opt == 2) cand.set(AltId{(std::uint32_t)b}, AltId{(std::uint32_t)a});
    }
    if (!cand.transitive()) continue;
    if (rationalizes(cand)) found.push_back(cand);
  }

  bool oracle_found = !found.empty();
  if (constructive.has_value() != oracle_found)
    throw RouteDisagreement("correspondence rationalization: constructive and brute-force "
                            "routes disagree on existence");
  if (!oracle_found) return std::nullopt;
  for (const auto& f : found)
    if (!(f == *constructive))
      throw RouteDisagreement("correspondence rationalization: routes found different relations");
  return constructive;
}

RationalityVerdict classify_procedure(const Procedure& P, const EnumerationBudget& budget,
                                      const std::optional<Guarantee>& guarantee) {
  const Universe& u = P.universe();
  RationalityVerdict v;
  v.ext = check_ext(P, budget, guarantee);
  v.alpha_e = check_alpha_e(P, budget, guarantee);
  v.gamma_e = check_gamma_e(P, budget, guarantee);

  // Choice-function implementation: candidate from the canonical
  // representation, verified against every enumerated term.
  ChoiceFunction candidate = induced_choice_function(P, u.size(), guarantee);
  v.cfi = Verdict::HoldsUpToBudget;
  for (const Term& t : generate_all_terms(P.schema(), u, budget, guarantee)) {
    if (P(t) != candidate.at(t.extension())) {
      v.cfi = Verdict::Falsified;
      v.cfi_witness = {t};
      break;
    }
  }
  if ((v.cfi == Verdict::HoldsUpToBudget) != v.ext.satisfied())
    throw RouteDisagreement("CFI and EXT verdicts split");

  bool cf_theorem = v.ext.satisfied() && v.alpha_e.satisfied();
  std::optional<PreferenceRelation> cf_order;
  if (v.cfi == Verdict::HoldsUpToBudget)
    cf_order = rationalize_choice_function(candidate, u, u.size());
  bool cf_oracle = cf_order.has_value();
  if (cf_theorem != cf_oracle)
    throw RouteDisagreement("choice-function rationalizability: axiom route says " +
                            std::string(cf_theorem ? "yes" : "no") + ", search route says " +
                            std::string(cf_oracle ? "yes" : "no"));
  v.cf_rationalizable = cf_theorem;
  v.cf_relation = cf_order;

  bool cc_theorem = v.alpha_e.satisfied() && v.gamma_e.satisfied();
  v.correspondence = induced_correspondence(P, budget, guarantee);
  std::optional<PreferenceRelation> cc_rel = rationalize_correspondence(v.correspondence, u, u.size());
  bool cc_oracle = cc_rel.has_value();
  if (cc_theorem != cc_oracle)
    throw RouteDisagreement("correspondence rationalizability: axiom route says " +
                            std::string(cc_theorem ? "yes" : "no") + ", search route says " +
                            std::string(cc_oracle ? "yes" : "no"));
  v.cc_rationalizable = cc_theorem;
  v.cc_relation = cc_rel;
  return v;
}

}  // namespace adtchoice
