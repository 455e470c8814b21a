#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "attrex/logic.hpp"
#include "attrex/schema.hpp"

namespace attrex {

/// Interval (lower, upper): some admissible set lies between the two bounds.
class PartialExample {
 public:
  PartialExample() = default;
  /// Throws ContractError unless lower is a subset of upper.
  PartialExample(AttributeSet lower, AttributeSet upper);

  /// The fully described example (d, d).
  static PartialExample full(AttributeSet d) { return {d, d}; }

  AttributeSet lower() const { return lower_; }
  AttributeSet upper() const { return upper_; }

  bool contains(AttributeSet d) const { return lower_.subset_of(d) && d.subset_of(upper_); }
  /// This interval lies inside `other`.
  bool tighter_than(const PartialExample& other) const {
    return other.lower_.subset_of(lower_) && upper_.subset_of(other.upper_);
  }

  friend bool operator==(const PartialExample&, const PartialExample&) = default;

 private:
  AttributeSet lower_;
  AttributeSet upper_;
};

/// R within the lower bound and S escaping the upper bound.
inline bool refutes(const PartialExample& ex, const Implication& imp) {
  if (!imp.premise().subset_of(ex.lower())) return false;
  return imp.bottom() || !imp.conclusion().subset_of(ex.upper());
}

enum class Actor { init, expert, engine, normalizer };
enum class Action { add_implication, add_example, tighten_example, drop_example, drop_implication };

std::string_view to_string(Actor a);
std::string_view to_string(Action a);
Actor actor_from_string(std::string_view s);
Action action_from_string(std::string_view s);

using JournalItem = std::variant<Implication, PartialExample>;

struct JournalEntry {
  std::uint64_t seq = 0;
  Actor actor = Actor::init;
  Action action = Action::add_example;
  std::size_t index = 0;  // position in the affected list
  std::optional<JournalItem> before;
  std::optional<JournalItem> after;
  std::string note;

  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

/// Validated implications, partial examples, and the journal of every change.
///
/// Single writer. Every mutator appends exactly one journal entry, so the
/// lists are always reproducible by replaying the journal from empty.
class ExplorationBase {
 public:
  const ImplicationList& implications() const { return implications_; }
  const std::vector<PartialExample>& examples() const { return examples_; }
  const std::vector<JournalEntry>& journal() const { return journal_; }

  void add_implication(const Implication& imp, Actor actor, std::string note = {});
  void add_example(const PartialExample& ex, Actor actor, std::string note = {});
  /// Throws ContractError unless `tighter` lies inside the current interval.
  void tighten_example(std::size_t index, const PartialExample& tighter, Actor actor, std::string note = {});
  void drop_example(std::size_t index, Actor actor, std::string note = {});
  void drop_implication(std::size_t index, Actor actor, std::string note = {});

  /// Applies a recorded entry. Throws JournalError when its sequence number,
  /// index or recorded "before" value does not match the current state.
  void apply(const JournalEntry& entry);
  static ExplorationBase replay(const std::vector<JournalEntry>& entries);

  /// Same implication and example lists (journals may differ).
  bool same_content(const ExplorationBase& other) const {
    return implications_ == other.implications_ && examples_ == other.examples_;
  }

 private:
  void record(JournalEntry entry);

  ImplicationList implications_;
  std::vector<PartialExample> examples_;
  std::vector<JournalEntry> journal_;
};

/// One step of the normalization engine.
struct Rewrite {
  enum class Rule { absorb_conclusion = 1, exclude_attribute = 2, drop_looser = 3 };
  Rule rule;
  std::size_t example;
  std::size_t implication = 0;  // rules 1 and 2
  std::size_t attribute = 0;    // rule 2
  std::size_t dominating = 0;   // rule 3
  PartialExample result;        // rules 1 and 2
};

/// The first applicable rewrite under the fixed schedule: rule 1 over
/// examples in order, then rule 2 (ascending attribute index), then rule 3.
/// Throws InconsistencyError when rule 1 would leave the upper bound.
std::optional<Rewrite> next_rewrite(const ImplicationList& l, const std::vector<PartialExample>& c,
                                    const ExplorationSchema& schema);

/// Applies a rewrite to the base and journals it under the normalizer actor.
void apply_rewrite(ExplorationBase& base, const Rewrite& rw, const ExplorationSchema& schema);

/// Applies rewrites until none fires. Returns the number applied.
std::size_t normalize_in_place(ExplorationBase& base, const ExplorationSchema& schema);
ExplorationBase normalize(ExplorationBase base, const ExplorationSchema& schema);

/// A set D inside the interval that respects l and the background, if any.
/// The search is complete.
std::optional<AttributeSet> find_completion(const PartialExample& ex, const ImplicationList& l,
                                            const std::vector<CumulatedClause>& background,
                                            const ExplorationSchema& schema);

/// Every example has a compatible completion.
bool is_consistent(const ExplorationBase& base, const ExplorationSchema& schema);
/// Index of the first example without a completion.
std::optional<std::size_t> first_incomplete_example(const ImplicationList& l, const std::vector<PartialExample>& c,
                                                    const ExplorationSchema& schema);

/// All compatible completions of an example, by enumeration.
std::vector<AttributeSet> completions(const PartialExample& ex, const ImplicationList& l,
                                      const ExplorationSchema& schema, std::size_t limit = kDefaultEnumerationLimit);

/// b1 is at least as well focused as b2.
bool better_focused(const ExplorationBase& b1, const ExplorationBase& b2);

/// Every realizer of b1 is a realizer of b2.
///
/// A realizer is a family of models of (implications, background) that holds a
/// completion of every example. The largest one is the family of all models,
/// and every realizer contains a choice of one completion per example; the
/// check reduces to those two facts and enumerates the power set.
bool more_expressive(const ExplorationBase& b1, const ExplorationBase& b2, const ExplorationSchema& schema,
                     std::size_t limit = kDefaultEnumerationLimit);

/// Drops implications entailed by the others (left-biased), journaled as
/// engine actions. Returns the number dropped.
std::size_t streamline(ExplorationBase& base, const ExplorationSchema& schema);

}  // namespace attrex
