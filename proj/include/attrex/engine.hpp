#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "attrex/base.hpp"
#include "attrex/expert.hpp"
#include "attrex/logic.hpp"
#include "attrex/schema.hpp"

namespace attrex {

/// A question A -> A+? for an implicationally closed A.
struct Question {
  Implication implication;
  AttributeSet witness;  // the closed premise A

  friend bool operator==(const Question&, const Question&) = default;
};

/// Meet of the upper bounds of all examples whose lower bound contains a;
/// the universe when no example qualifies.
AttributeSet plus_query(const std::vector<PartialExample>& c, AttributeSet a, const ExplorationSchema& schema);

/// Lectically next l-closed set strictly after a (a need not be closed), or
/// the first closed set when a is empty-optional. Sets closing to Bottom are
/// skipped. Lectic order compares at the largest differing index.
std::optional<AttributeSet> lectic_next_closed(const ImplicationList& l, std::optional<AttributeSet> a,
                                               const ExplorationSchema& schema);

/// The lectically smallest l-closed A with A != A+?, scanning from `from`
/// (inclusive) when given. Background clauses do not take part in the closure.
std::optional<Question> next_question(const ExplorationBase& base, const ExplorationSchema& schema,
                                      std::optional<AttributeSet> from = std::nullopt);

/// Why an answer was refused.
enum class Rejection {
  none,
  condition_i,    // counter-example does not refute the question
  condition_iii,  // counter-example has no compatible completion
  consistency,    // "valid" would leave some example without a completion
  no_question,    // nothing is pending
};

std::string_view to_string(Rejection r);

struct SubmitOutcome {
  Rejection rejection = Rejection::none;
  std::string diagnostic;

  bool accepted() const { return rejection == Rejection::none; }
};

/// Step-wise exploration: one pending question at a time, answers gated on the
/// expert conditions, base normalized after each accepted answer.
class Exploration {
 public:
  /// Throws InconsistencyError naming the first initial example without a
  /// compatible completion.
  Exploration(ExplorationSchema schema, const std::vector<PartialExample>& initial_examples);
  /// Continues from an existing base (e.g. a replayed journal), normalizing it first.
  Exploration(ExplorationSchema schema, ExplorationBase base);

  const ExplorationSchema& schema() const { return schema_; }
  const ExplorationBase& base() const { return base_; }
  const std::optional<Question>& pending() const { return pending_; }
  bool complete() const { return !pending_.has_value(); }

  SubmitOutcome submit(const ExpertAnswer& answer);

  std::size_t accepted_answers() const { return accepted_; }
  /// Consecutive questions whose premise went lectically backwards.
  std::size_t order_violations() const { return order_violations_; }

 private:
  void advance();

  ExplorationSchema schema_;
  ExplorationBase base_;
  std::optional<Question> pending_;
  std::optional<AttributeSet> cursor_;
  std::optional<AttributeSet> last_premise_;
  std::unordered_set<std::uint64_t> answered_;
  std::size_t accepted_ = 0;
  std::size_t order_violations_ = 0;
};

enum class Termination { complete, budget_exhausted };

struct ExplorationResult {
  ExplorationBase final_base;
  ImplicationList validated;
  std::size_t question_count = 0;
  Termination terminated = Termination::complete;
  std::size_t rejected_answers = 0;
  std::size_t order_violations = 0;
};

/// Runs the question/answer loop until no question remains or `budget`
/// questions were answered. A rejected answer is re-asked; a source that is
/// rejected `max_rejections` times in a row on one question raises ExpertError.
ExplorationResult explore(const ExplorationSchema& schema, const AnswerSource& expert,
                          const std::vector<PartialExample>& initial_examples,
                          std::optional<std::size_t> budget = std::nullopt, std::size_t max_rejections = 3);

/// Models of l and the background that are not the meet of the models
/// strictly above them. A model with nothing strictly above it (in particular
/// the universe, when it is a model) is reported.
std::vector<AttributeSet> minimal_realizer_report(const ImplicationList& l,
                                                  const std::vector<CumulatedClause>& background,
                                                  const ExplorationSchema& schema,
                                                  std::size_t limit = kDefaultEnumerationLimit);

struct ReplayReport {
  bool clean = true;
  std::uint64_t divergent_seq = 0;
  std::string message;
  ExplorationBase base;  // state reached before the divergence
};

/// Replays a journal and re-derives every engine-side action: normalizer
/// rewrites must match the normalization schedule, expert entries must answer
/// the question the engine would pose at that point, and engine drops must
/// remove redundant implications.
ReplayReport verify_journal(const std::vector<JournalEntry>& entries, const ExplorationSchema& schema);

}  // namespace attrex
