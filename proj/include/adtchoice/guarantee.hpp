#ifndef ADTCHOICE_GUARANTEE_HPP
#define ADTCHOICE_GUARANTEE_HPP

#include <string>

#include "adtchoice/term.hpp"

namespace adtchoice {

// A domain restriction on admissible terms. sorted_by demands strictly
// monotone attribute values along the left-to-right leaf sequence;
// no_duplicates forbids repeated leaves. With `inner` set (nested schemas),
// the condition applies to each inner term separately instead of the
// flattened sequence.
struct Guarantee {
  enum class Kind { SortedBy, NoDuplicates };

  Kind kind = Kind::NoDuplicates;
  std::string attr;       // sorted_by only
  bool ascending = true;  // sorted_by only
  bool inner = false;

  static Guarantee sorted_by(std::string attr, bool ascending, bool inner = false) {
    return Guarantee{Kind::SortedBy, std::move(attr), ascending, inner};
  }
  static Guarantee no_duplicates(bool inner = false) {
    return Guarantee{Kind::NoDuplicates, "", true, inner};
  }

  std::string to_string() const;
  // Spec: sorted_by:<attr>:<asc|desc>[:inner] or no_duplicates[:inner].
  static Guarantee parse(const std::string& text);
};

// True iff the term satisfies the guarantee.
bool guarantee_filter(const Guarantee& g, const AdtSchema& schema, const Universe& universe,
                      const Term& a);

}  // namespace adtchoice

#endif
