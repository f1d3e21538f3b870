#ifndef ADTCHOICE_UNIVERSE_HPP
#define ADTCHOICE_UNIVERSE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace adtchoice {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed schema/term/universe text. Carries a 1-based line
// where that makes sense, 0 otherwise.
struct ParseError : Error {
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  int line;
};

struct BudgetError : Error {
  using Error::Error;
};

// Signals that two independently computed routes to the same verdict
// disagree. Never swallowed; an instance of this is an implementation bug.
struct RouteDisagreement : Error {
  using Error::Error;
};

// Index of an alternative within its Universe. The symbolic name lives in
// the Universe; everything downstream works with the index.
struct AltId {
  std::uint32_t index = 0;
  friend bool operator==(AltId a, AltId b) { return a.index == b.index; }
  friend bool operator!=(AltId a, AltId b) { return a.index != b.index; }
  friend bool operator<(AltId a, AltId b) { return a.index < b.index; }
};

using AttrValue = std::variant<double, bool>;

// A set of alternatives, as a bitmask over universe indices. Universes are
// capped at 64 elements.
class AltSet {
 public:
  AltSet() = default;
  explicit AltSet(std::uint64_t bits) : bits_(bits) {}
  static AltSet single(AltId x) { return AltSet(std::uint64_t{1} << x.index); }

  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcountll(bits_); }
  bool contains(AltId x) const { return (bits_ >> x.index) & 1; }
  std::uint64_t bits() const { return bits_; }

  void insert(AltId x) { bits_ |= std::uint64_t{1} << x.index; }
  void erase(AltId x) { bits_ &= ~(std::uint64_t{1} << x.index); }

  AltId min() const { return AltId{static_cast<std::uint32_t>(__builtin_ctzll(bits_))}; }

  std::vector<AltId> elements() const {
    std::vector<AltId> out;
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(AltId{static_cast<std::uint32_t>(__builtin_ctzll(b))});
    return out;
  }

  bool subset_of(AltSet other) const { return (bits_ & ~other.bits_) == 0; }

  friend AltSet operator|(AltSet a, AltSet b) { return AltSet(a.bits_ | b.bits_); }
  friend AltSet operator&(AltSet a, AltSet b) { return AltSet(a.bits_ & b.bits_); }
  friend AltSet operator-(AltSet a, AltSet b) { return AltSet(a.bits_ & ~b.bits_); }
  friend bool operator==(AltSet a, AltSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(AltSet a, AltSet b) { return a.bits_ != b.bits_; }
  friend bool operator<(AltSet a, AltSet b) { return a.bits_ < b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

// The alternative set X. Declaration order is significant: it is the
// universal tie-break for derived strict orders and the canonical ordering
// used by deterministic constructions.
class Universe {
 public:
  struct Element {
    std::string id;
    std::map<std::string, AttrValue> attrs;
  };

  explicit Universe(std::vector<Element> elements);

  // Parses {"elements":[{"id":"x1","attrs":{"u":0.3,"known":true}}, ...]}.
  static Universe from_json(const std::string& text);

  int size() const { return static_cast<int>(elements_.size()); }
  const Element& element(AltId x) const { return elements_.at(x.index); }
  const std::string& name(AltId x) const { return elements_.at(x.index).id; }

  AltId resolve(const std::string& id) const;
  std::optional<AltId> try_resolve(const std::string& id) const;

  bool has_attr(const std::string& attr) const;
  // Numeric value of `attr` on `x`; booleans coerce to 0/1.
  double number(AltId x, const std::string& attr) const;
  bool boolean(AltId x, const std::string& attr) const;

  AltSet all() const { return size() == 64 ? AltSet(~std::uint64_t{0}) : AltSet((std::uint64_t{1} << size()) - 1); }

  std::string set_to_string(AltSet s) const;
  // Parses "x1,x2,x3" against this universe.
  AltSet parse_set(const std::string& csv) const;

 private:
  std::vector<Element> elements_;
  std::map<std::string, std::uint32_t> index_;
};

}  // namespace adtchoice

#endif
