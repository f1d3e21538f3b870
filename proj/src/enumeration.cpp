#include "adtchoice/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace adtchoice {

std::vector<Term> TermStream::drain() {
  std::vector<Term> out;
  while (auto t = next()) out.push_back(*t);
  return out;
}

namespace {

int min_leaf_count_impl(const AdtSchema& schema) {
  const int INF = 1 << 28;
  int inner_min = schema.nested() ? min_leaf_count_impl(*schema.inner) : 1;
  int ml = INF;
  // Fixpoint: recursive slots cost the current estimate.
  for (int iter = 0; iter < 64; ++iter) {
    int next = INF;
    for (const auto& c : schema.constructors) {
      long long cost = 0;
      bool ok = true;
      for (auto s : c.slots) {
        if (s == SlotKind::Value) {
          cost += inner_min;
        } else if (ml == INF) {
          ok = false;
          break;
        } else {
          cost += ml;
        }
      }
      if (ok) next = std::min<long long>(next, cost);
    }
    if (next == ml) break;
    ml = next;
  }
  return ml;
}

void check_enumerable(const AdtSchema& schema) {
  for (const auto& c : schema.constructors)
    if (c.arity() == 1 && c.slots[0] == SlotKind::Recursive)
      throw BudgetError("schema " + schema.name + ": constructor " + c.name +
                        " is unary recursive, so there are infinitely many skeletons per "
                        "leaf count; enumeration is not possible");
  if (schema.nested()) check_enumerable(*schema.inner);
}

using ShapePtr = std::shared_ptr<const Shape>;

class ShapeGen {
 public:
  explicit ShapeGen(const AdtSchema& schema) : schema_(schema) {
    check_enumerable(schema);
    min_ = min_leaf_count_impl(schema);
    if (schema.nested()) {
      inner_ = std::make_unique<ShapeGen>(*schema.inner);
      inner_min_ = inner_->min_;
    }
  }

  int min_leaves() const { return min_; }

  const std::vector<ShapePtr>& shapes(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::vector<ShapePtr> out;
    if (n >= min_) {
      for (std::uint32_t ci = 0; ci < schema_.constructors.size(); ++ci)
        emit_for_ctor(ci, n, out);
      std::stable_sort(out.begin(), out.end(),
                       [](const ShapePtr& a, const ShapePtr& b) { return a->depth < b->depth; });
    }
    return memo_.emplace(n, std::move(out)).first->second;
  }

 private:
  void emit_for_ctor(std::uint32_t ci, int n, std::vector<ShapePtr>& out) {
    const ConstructorSpec& c = schema_.constructors[ci];
    std::vector<ShapePtr> picked(c.arity());
    distribute(ci, c, 0, n, picked, out);
  }

  // Assigns leaf counts / sub-shapes to slots left to right.
  void distribute(std::uint32_t ci, const ConstructorSpec& c, int slot, int remaining,
                  std::vector<ShapePtr>& picked, std::vector<ShapePtr>& out) {
    if (slot == c.arity()) {
      if (remaining != 0) return;
      auto shape = std::make_shared<Shape>();
      shape->ctor = ci;
      shape->subs = picked;
      shape->leaf_count = 0;
      shape->depth = 1;
      const ConstructorSpec& spec = schema_.constructors[ci];
      for (int i = 0; i < spec.arity(); ++i) {
        if (picked[i]) {
          shape->leaf_count += picked[i]->leaf_count;
          shape->depth = std::max(shape->depth, 1 + picked[i]->depth);
        } else {
          shape->leaf_count += 1;
        }
      }
      out.push_back(std::move(shape));
      return;
    }
    // Cheapest completion of the remaining slots, to prune early.
    int rest_min = 0;
    for (int i = slot + 1; i < c.arity(); ++i)
      rest_min += c.slots[i] == SlotKind::Value ? (schema_.nested() ? inner_min_ : 1) : min_;
    if (c.slots[slot] == SlotKind::Value && !schema_.nested()) {
      if (remaining - 1 < rest_min) return;
      picked[slot] = nullptr;
      distribute(ci, c, slot + 1, remaining - 1, picked, out);
      return;
    }
    ShapeGen& source = c.slots[slot] == SlotKind::Value ? *inner_ : *this;
    int sub_min = c.slots[slot] == SlotKind::Value ? inner_min_ : min_;
    for (int k = sub_min; remaining - k >= rest_min; ++k) {
      for (const ShapePtr& sub : source.shapes(k)) {
        picked[slot] = sub;
        distribute(ci, c, slot + 1, remaining - k, picked, out);
      }
    }
    picked[slot] = nullptr;
  }

  const AdtSchema& schema_;
  std::unique_ptr<ShapeGen> inner_;
  int min_ = 1;
  int inner_min_ = 1;
  std::map<int, std::vector<ShapePtr>> memo_;
};

Term build_term(const Shape& shape, const AdtSchema& schema, const std::vector<AltId>& leaves,
                std::size_t& cursor) {
  const ConstructorSpec& spec = schema.constructors.at(shape.ctor);
  std::vector<TermChild> children;
  children.reserve(spec.arity());
  for (int i = 0; i < spec.arity(); ++i) {
    if (!shape.subs[i])
      children.emplace_back(leaves[cursor++]);
    else if (spec.slots[i] == SlotKind::Value)
      children.emplace_back(build_term(*shape.subs[i], *schema.inner, leaves, cursor));
    else
      children.emplace_back(build_term(*shape.subs[i], schema, leaves, cursor));
  }
  return Term::make(schema, shape.ctor, std::move(children));
}

// --- leaf assignment generators ------------------------------------------

class AssignGen {
 public:
  virtual ~AssignGen() = default;
  virtual bool next(std::vector<AltId>& out) = 0;
};

// Plain odometer over `domain`, optionally requiring the assignment to
// cover `target` exactly (leaves are drawn from the target's elements, so
// coverage means extension == target).
class OdometerGen : public AssignGen {
 public:
  OdometerGen(std::vector<AltId> domain, int k, std::optional<AltSet> cover)
      : domain_(std::move(domain)), k_(k), cover_(cover) {}

  bool next(std::vector<AltId>& out) override {
    while (advance()) {
      if (cover_) {
        AltSet got;
        for (int i = 0; i < k_; ++i) got.insert(domain_[idx_[i]]);
        if (got != *cover_) continue;
      }
      for (int i = 0; i < k_; ++i) out[i] = domain_[idx_[i]];
      return true;
    }
    return false;
  }

 private:
  bool advance() {
    if (domain_.empty() || k_ == 0) return false;
    if (idx_.empty()) {
      idx_.assign(k_, 0);
      return true;
    }
    for (int i = k_ - 1; i >= 0; --i) {
      if (++idx_[i] < domain_.size()) return true;
      idx_[i] = 0;
    }
    return false;
  }

  std::vector<AltId> domain_;
  int k_;
  std::optional<AltSet> cover_;
  std::vector<std::size_t> idx_;
};

// Strictly monotone attribute sequences: combinations of the domain sorted
// by the attribute, skipping picks with equal adjacent values.
class SortedStrictGen : public AssignGen {
 public:
  SortedStrictGen(const Universe& universe, const Guarantee& g, std::vector<AltId> domain, int k,
                  std::optional<AltSet> cover)
      : k_(k), cover_(cover) {
    std::stable_sort(domain.begin(), domain.end(), [&](AltId a, AltId b) {
      double va = universe.number(a, g.attr), vb = universe.number(b, g.attr);
      if (va != vb) return g.ascending ? va < vb : va > vb;
      return a.index < b.index;
    });
    domain_ = std::move(domain);
    for (AltId x : domain_) value_.push_back(universe.number(x, g.attr));
  }

  bool next(std::vector<AltId>& out) override {
    while (advance()) {
      bool strict = true;
      for (int i = 1; i < k_ && strict; ++i)
        if (value_[idx_[i - 1]] == value_[idx_[i]]) strict = false;
      if (!strict) continue;
      if (cover_) {
        AltSet got;
        for (int i = 0; i < k_; ++i) got.insert(domain_[idx_[i]]);
        if (got != *cover_) continue;
      }
      for (int i = 0; i < k_; ++i) out[i] = domain_[idx_[i]];
      return true;
    }
    return false;
  }

 private:
  bool advance() {
    int n = static_cast<int>(domain_.size());
    if (k_ == 0 || k_ > n) return false;
    if (idx_.empty()) {
      idx_.resize(k_);
      for (int i = 0; i < k_; ++i) idx_[i] = i;
      return true;
    }
    int i = k_ - 1;
    while (i >= 0 && idx_[i] == n - k_ + i) --i;
    if (i < 0) return false;
    ++idx_[i];
    for (int j = i + 1; j < k_; ++j) idx_[j] = idx_[j - 1] + 1;
    return true;
  }

  std::vector<AltId> domain_;
  std::vector<double> value_;
  int k_;
  std::optional<AltSet> cover_;
  std::vector<int> idx_;
};

// Duplicate-free sequences (k-permutations of the domain).
class InjectiveGen : public AssignGen {
 public:
  InjectiveGen(std::vector<AltId> domain, int k, std::optional<AltSet> cover)
      : inner_(std::move(domain), k, cover), k_(k) {}

  bool next(std::vector<AltId>& out) override {
    while (inner_.next(out)) {
      AltSet seen;
      bool ok = true;
      for (int i = 0; i < k_ && ok; ++i) {
        if (seen.contains(out[i])) ok = false;
        seen.insert(out[i]);
      }
      if (ok) return true;
    }
    return false;
  }

 private:
  OdometerGen inner_;
  int k_;
};

struct GenPlan {
  std::unique_ptr<AssignGen> gen;
  bool needs_post_filter = false;  // apply guarantee_filter on built terms
};

GenPlan make_assign_gen(const Universe& universe, int k, const std::optional<AltSet>& target,
                        const std::optional<Guarantee>& guarantee) {
  std::vector<AltId> domain =
      target ? target->elements() : universe.all().elements();
  GenPlan plan;
  if (!guarantee) {
    plan.gen = std::make_unique<OdometerGen>(std::move(domain), k, target);
    return plan;
  }
  if (guarantee->inner) {
    // Per-inner-term constraints do not flatten; generate and filter.
    plan.gen = std::make_unique<OdometerGen>(std::move(domain), k, target);
    plan.needs_post_filter = true;
    return plan;
  }
  if (guarantee->kind == Guarantee::Kind::SortedBy) {
    plan.gen = std::make_unique<SortedStrictGen>(universe, *guarantee, std::move(domain), k, target);
    return plan;
  }
  plan.gen = std::make_unique<InjectiveGen>(std::move(domain), k, target);
  return plan;
}

struct TermHasher {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

class ShapeAssignStream : public TermStream {
 public:
  ShapeAssignStream(const AdtSchema& schema, const Universe& universe,
                    std::optional<AltSet> target, EnumerationBudget budget,
                    std::optional<Guarantee> guarantee)
      : schema_(schema),
        universe_(universe),
        target_(target),
        budget_(budget),
        guarantee_(std::move(guarantee)),
        shapegen_(schema) {
    int lo = std::max(shapegen_.min_leaves(), target_ ? target_->size() : 1);
    if (target_ && budget_.max_leaves < target_->size())
      throw BudgetError("max_leaves " + std::to_string(budget_.max_leaves) +
                        " is below the target set size " + std::to_string(target_->size()));
    bool any = false;
    for (int n = lo; n <= budget_.max_leaves; ++n) {
      for (const ShapePtr& s : shapegen_.shapes(n)) {
        plan_.push_back(s);
        any = true;
      }
    }
    if (target_ && !any)
      throw BudgetError("no skeleton within max_leaves " + std::to_string(budget_.max_leaves) +
                        " can cover a set of size " + std::to_string(target_->size()));
  }

  std::optional<Term> next() override {
    while (true) {
      if (!gen_plan_.gen) {
        if (plan_idx_ >= plan_.size()) return std::nullopt;
        int k = plan_[plan_idx_]->leaf_count;
        gen_plan_ = make_assign_gen(universe_, k, target_, guarantee_);
        buf_.assign(k, AltId{0});
      }
      if (!gen_plan_.gen->next(buf_)) {
        gen_plan_.gen.reset();
        ++plan_idx_;
        continue;
      }
      std::size_t cursor = 0;
      Term t = build_term(*plan_[plan_idx_], schema_, buf_, cursor);
      if (gen_plan_.needs_post_filter && guarantee_ &&
          !guarantee_filter(*guarantee_, schema_, universe_, t))
        continue;
      if (budget_.dedup && !seen_.insert(t).second) continue;
      if (++emitted_ > budget_.max_terms)
        throw BudgetError("enumeration exceeded max_terms = " + std::to_string(budget_.max_terms));
      return t;
    }
  }

 private:
  const AdtSchema& schema_;
  const Universe& universe_;
  std::optional<AltSet> target_;
  EnumerationBudget budget_;
  std::optional<Guarantee> guarantee_;
  ShapeGen shapegen_;
  std::vector<ShapePtr> plan_;
  std::size_t plan_idx_ = 0;
  GenPlan gen_plan_;
  std::vector<AltId> buf_;
  long long emitted_ = 0;
  std::unordered_set<Term, TermHasher> seen_;
};

}  // namespace

int min_leaf_count(const AdtSchema& schema) { return min_leaf_count_impl(schema); }

std::vector<Shape> enumerate_shapes(const AdtSchema& schema, int leaf_count) {
  if (leaf_count < 1) throw Error("leaf_count must be >= 1");
  ShapeGen gen(schema);
  std::vector<Shape> out;
  for (const ShapePtr& s : gen.shapes(leaf_count)) out.push_back(*s);
  return out;
}

std::string print_shape(const Shape& shape, const AdtSchema& schema) {
  std::ostringstream out;
  auto walk = [&](const Shape& s, const AdtSchema& ctx, auto&& self) -> void {
    const ConstructorSpec& spec = ctx.constructors.at(s.ctor);
    out << '(' << spec.name;
    for (int i = 0; i < spec.arity(); ++i) {
      out << ' ';
      if (!s.subs[i])
        out << '_';
      else if (spec.slots[i] == SlotKind::Value)
        self(*s.subs[i], *ctx.inner, self);
      else
        self(*s.subs[i], ctx, self);
    }
    out << ')';
  };
  walk(shape, schema, walk);
  return out.str();
}

std::unique_ptr<TermStream> enumerate_representations(const AdtSchema& schema,
                                                      const Universe& universe, AltSet A,
                                                      const EnumerationBudget& budget,
                                                      const std::optional<Guarantee>& guarantee) {
  if (A.empty()) throw Error("target set must not be empty");
  return std::make_unique<ShapeAssignStream>(schema, universe, A, budget, guarantee);
}

namespace {

long long surjection_count(int n, int k) {
  // Inclusion-exclusion over the target set's elements.
  auto binom = [](int a, int b) {
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long long total = 0;
  for (int i = 0; i <= k; ++i) {
    long long pw = 1;
    for (int j = 0; j < n; ++j) pw *= (k - i);
    total += (i % 2 == 0 ? 1 : -1) * binom(k, i) * pw;
  }
  return total;
}

}  // namespace

std::map<int, long long> count_representations(const AdtSchema& schema, const Universe& universe,
                                               AltSet A, const EnumerationBudget& budget) {
  (void)universe;
  if (A.empty()) throw Error("target set must not be empty");
  if (budget.max_leaves < A.size())
    throw BudgetError("max_leaves " + std::to_string(budget.max_leaves) +
                      " is below the target set size " + std::to_string(A.size()));
  ShapeGen gen(schema);
  std::map<int, long long> counts;
  bool any = false;
  for (int n = std::max(gen.min_leaves(), A.size()); n <= budget.max_leaves; ++n) {
    long long nshapes = static_cast<long long>(gen.shapes(n).size());
    if (nshapes == 0) continue;
    any = true;
    counts[n] = nshapes * surjection_count(n, A.size());
  }
  if (!any)
    throw BudgetError("no skeleton within max_leaves " + std::to_string(budget.max_leaves) +
                      " can cover a set of size " + std::to_string(A.size()));
  return counts;
}

std::vector<Term> generate_all_terms(const AdtSchema& schema, const Universe& universe,
                                     const EnumerationBudget& budget,
                                     const std::optional<Guarantee>& guarantee) {
  ShapeAssignStream stream(schema, universe, std::nullopt, budget, guarantee);
  return stream.drain();
}

}  // namespace adtchoice
