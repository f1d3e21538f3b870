#ifndef ADTCHOICE_ENUMERATION_HPP
#define ADTCHOICE_ENUMERATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adtchoice/guarantee.hpp"
#include "adtchoice/term.hpp"

namespace adtchoice {

// Finitizes "all representations": terms are generated up to a leaf cap,
// with a hard safety cap on how many terms a single request may yield.
struct EnumerationBudget {
  int max_leaves = 0;
  long long max_terms = 1'000'000;
  bool dedup = true;

  // Default working budget for a target set: |A| + 2 leaves.
  static EnumerationBudget for_set(AltSet A) { return EnumerationBudget{A.size() + 2}; }
  static EnumerationBudget leaves(int n) { return EnumerationBudget{n}; }
};

// Constructor skeleton with unfilled value slots. `subs` is aligned with
// the constructor's slots; nullptr marks a hole (a plain value slot), a
// non-null entry is the sub-shape of a recursive slot or, in nested mode,
// the inner-schema shape filling a value slot.
struct Shape {
  std::uint32_t ctor = 0;
  std::vector<std::shared_ptr<const Shape>> subs;
  int leaf_count = 0;
  int depth = 0;
};

// All structurally distinct skeletons with exactly `leaf_count` value
// slots, ordered by depth then by constructor declaration order. May be
// empty (flat schemas only admit their fixed arities).
std::vector<Shape> enumerate_shapes(const AdtSchema& schema, int leaf_count);

std::string print_shape(const Shape& shape, const AdtSchema& schema);

// Smallest leaf count any term of the schema can have.
int min_leaf_count(const AdtSchema& schema);

// Single-consumer, deterministic stream of terms.
class TermStream {
 public:
  virtual ~TermStream() = default;
  virtual std::optional<Term> next() = 0;
  std::vector<Term> drain();
};

// Every term t with extension(t) == A and leaf_count(t) <= budget.max_leaves,
// exhaustively and duplicate-free, in a deterministic order (leaf count
// ascending, then shape order, then leaf assignment in lexicographic
// universe-index order). Throws BudgetError when no admissible leaf count
// exists within the budget, or when the stream would exceed max_terms.
std::unique_ptr<TermStream> enumerate_representations(const AdtSchema& schema,
                                                      const Universe& universe, AltSet A,
                                                      const EnumerationBudget& budget,
                                                      const std::optional<Guarantee>& guarantee = {});

// Representation counts per leaf count, computed from the shape census and
// the surjection-counting formula — an algebraic route independent of the
// stream above.
std::map<int, long long> count_representations(const AdtSchema& schema, const Universe& universe,
                                               AltSet A, const EnumerationBudget& budget);

// Every valid term with leaf_count <= budget.max_leaves over the whole
// universe (the checkers' universal domain), optionally restricted to
// guarantee-passing terms. Same ordering contract as the stream above.
std::vector<Term> generate_all_terms(const AdtSchema& schema, const Universe& universe,
                                     const EnumerationBudget& budget,
                                     const std::optional<Guarantee>& guarantee = {});

}  // namespace adtchoice

#endif
