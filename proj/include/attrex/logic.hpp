#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "attrex/attribute_set.hpp"
#include "attrex/schema.hpp"

namespace attrex {

/// Default attribute limit for brute-force enumerations over the power set.
inline constexpr std::size_t kDefaultEnumerationLimit = 20;

/// An implication R -> S, or R -> Bottom ("no admissible set contains R").
///
/// The conclusion always includes the premise.
class Implication {
 public:
  Implication() = default;
  Implication(AttributeSet premise, AttributeSet conclusion) : premise_(premise), conclusion_(premise | conclusion) {}

  static Implication to_bottom(AttributeSet premise) {
    Implication imp(premise, premise);
    imp.bottom_ = true;
    return imp;
  }

  AttributeSet premise() const { return premise_; }
  /// Meaningless when bottom() is true.
  AttributeSet conclusion() const { return conclusion_; }
  bool bottom() const { return bottom_; }

  friend bool operator==(const Implication&, const Implication&) = default;

 private:
  AttributeSet premise_;
  AttributeSet conclusion_;
  bool bottom_ = false;
};

using ImplicationList = std::vector<Implication>;

/// A closed set, or Bottom when no admissible set can contain the input.
/// Bottom is the absorbing top of the closure order.
struct Closure {
  AttributeSet set;
  bool bottom = false;

  static Closure of(AttributeSet s) { return {s, false}; }
  static Closure bottom_element() { return {AttributeSet(), true}; }

  /// a <= b in the order where Bottom sits above every set.
  friend bool operator<=(const Closure& a, const Closure& b) {
    if (b.bottom) return true;
    if (a.bottom) return false;
    return a.set.subset_of(b.set);
  }
  friend bool operator==(const Closure& a, const Closure& b) {
    return a.bottom == b.bottom && (a.bottom || a.set == b.set);
  }
};

enum class EntailmentMode { implications_only, with_background };

/// S is contained in x, or R is not. Bottom conclusions are respected iff R is not.
inline bool respects(AttributeSet x, const Implication& imp) {
  if (!imp.premise().subset_of(x)) return true;
  return !imp.bottom() && imp.conclusion().subset_of(x);
}

inline bool respects_all(AttributeSet x, const ImplicationList& l) {
  for (const auto& imp : l)
    if (!respects(x, imp)) return false;
  return true;
}

/// Fires implications until nothing changes. Bottom short-circuits.
Closure implication_closure(const ImplicationList& l, AttributeSet a);

/// Largest set B such that a -> B follows.
///
/// Without background this is the implicational fixpoint. With background it
/// is the meet of all models of l plus the schema's clauses that contain a, or
/// Bottom when there is none.
Closure close(const ImplicationList& l, AttributeSet a, const ExplorationSchema& schema, bool use_background);

/// The minimal models reachable from `start` by branching on violated
/// clauses, each one bounded above by `ceiling`. Every model of l and the
/// clauses that contains start and lies below ceiling is a superset of one of
/// them. The visitor returns false to stop the search early.
template <typename Visitor>
void for_each_branch_model(const ImplicationList& l, const std::vector<CumulatedClause>& clauses, AttributeSet start,
                           AttributeSet ceiling, Visitor&& visit);

bool entails(const ImplicationList& l, const std::vector<CumulatedClause>& background, const Implication& imp,
             EntailmentMode mode);

/// All subsets of the universe that respect l and satisfy every clause.
/// Throws SizeLimitError when the universe exceeds `limit` attributes.
std::vector<AttributeSet> models(const ImplicationList& l, const std::vector<CumulatedClause>& background,
                                 const ExplorationSchema& schema, std::size_t limit = kDefaultEnumerationLimit);

/// Left-biased redundancy removal: scans in order, dropping an item iff the
/// items still kept (minus itself) entail it without background.
ImplicationList remove_redundant(const ImplicationList& l);

}  // namespace attrex

#include "attrex/detail/branch_search.hpp"
