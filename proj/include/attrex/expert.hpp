#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrex/base.hpp"
#include "attrex/logic.hpp"
#include "attrex/schema.hpp"

namespace attrex {

/// Either "valid" or a partial counter-example.
class ExpertAnswer {
 public:
  static ExpertAnswer valid() { return ExpertAnswer(); }
  static ExpertAnswer counterexample(const PartialExample& ex) {
    ExpertAnswer a;
    a.example_ = ex;
    return a;
  }

  bool is_valid() const { return !example_.has_value(); }
  /// Throws ContractError on a valid answer.
  const PartialExample& example() const;

  friend bool operator==(const ExpertAnswer&, const ExpertAnswer&) = default;

 private:
  std::optional<PartialExample> example_;
};

using AnswerSource = std::function<ExpertAnswer(const Implication&)>;

/// Which attributes of a refuting set the scripted expert keeps undisclosed.
struct MaskPolicy {
  enum class Kind {
    none,              // full disclosure: (D, D)
    fixed_hide_set,    // the same attributes are never disclosed
    per_query_random,  // hide set drawn from (seed, query)
    premise_only,      // only the premise is disclosed as present: (R, D)
  };

  Kind kind = Kind::none;
  AttributeSet hide;
  std::uint64_t seed = 0;

  static MaskPolicy none() { return {}; }
  static MaskPolicy fixed(AttributeSet hide) { return {Kind::fixed_hide_set, hide, 0}; }
  static MaskPolicy random(std::uint64_t seed) { return {Kind::per_query_random, {}, seed}; }
  static MaskPolicy premise() { return {Kind::premise_only, {}, 0}; }

  AttributeSet hide_set(const Implication& imp, AttributeSet refuting, AttributeSet universe) const;
};

std::string_view to_string(MaskPolicy::Kind k);
MaskPolicy::Kind mask_kind_from_string(std::string_view s);

/// Widens a refuting set d into a partial counter-example.
///
/// Returns (U, V) with R ⊆ U ⊆ d ⊆ V and S ⊄ V: the hidden attributes leave
/// the lower bound (except premise members) and join the upper bound (except
/// the smallest attribute of S missing from d). Throws ContractError if d
/// does not refute imp.
PartialExample mask(AttributeSet d, const Implication& imp, AttributeSet hide);
PartialExample mask(AttributeSet d, const Implication& imp, const MaskPolicy& policy, AttributeSet universe);

/// An expert backed by an explicit family of admissible sets.
///
/// Members must satisfy the background clauses: the family is read as a
/// subset of the background-compatible sets.
class ScriptedDomain {
 public:
  /// Throws SchemaError for members outside the universe or violating the background.
  ScriptedDomain(ExplorationSchema schema, std::vector<AttributeSet> members, MaskPolicy policy = {});

  const ExplorationSchema& schema() const { return schema_; }
  const std::vector<AttributeSet>& members() const { return members_; }
  const MaskPolicy& policy() const { return policy_; }

 private:
  ExplorationSchema schema_;
  std::vector<AttributeSet> members_;
  MaskPolicy policy_;
};

/// Valid iff every member respects imp; otherwise the masked form of the
/// first refuting member.
ExpertAnswer scripted_answer(const ScriptedDomain& dom, const Implication& imp);
AnswerSource answer_source(ScriptedDomain dom);

/// Meet of the members containing x; the whole universe when none does.
AttributeSet expert_closure(const ScriptedDomain& dom, AttributeSet x);

struct ExpertViolation {
  Implication query;
  int condition = 0;  // 1, 2 or 3
  std::string evidence;
};

struct ExpertReport {
  std::size_t checked_queries = 0;
  std::vector<ExpertViolation> violations;

  bool ok() const { return violations.empty(); }
  bool has(int condition) const;
};

/// Checks answers to `sample` against the three expert conditions:
/// counter-examples refute their query; no counter-example refutes a query the
/// source called valid; every counter-example has a compatible completion
/// with respect to `validated` and the background.
ExpertReport validate_expert(const AnswerSource& source, const ExplorationSchema& schema,
                             const ImplicationList& validated, const std::vector<Implication>& sample);
/// Same, with `validated` taken to be the sampled queries answered valid.
ExpertReport validate_expert(const AnswerSource& source, const ExplorationSchema& schema,
                             const std::vector<Implication>& sample);

/// Every implication X -> Y with X ⊆ Y ⊆ M. Throws SizeLimitError above `limit`.
std::vector<Implication> all_queries(const ExplorationSchema& schema, std::size_t limit = 8);

/// Raises the lower bound of a counter-example to its closure under `theory`.
/// Throws InconsistencyError when that closure leaves the upper bound.
ExpertAnswer normalize_expert_answer(const ExpertAnswer& ans, const ImplicationList& theory);

/// Domain file: {"sets": [[names]], "mask": {"policy": ..., "hide": [names], "seed": n}}
ScriptedDomain domain_from_json(const nlohmann::json& doc, const ExplorationSchema& schema);
nlohmann::json domain_to_json(const ScriptedDomain& dom);
nlohmann::json answer_to_json(const ExpertAnswer& ans, const ExplorationSchema& schema);
ExpertAnswer answer_from_json(const nlohmann::json& j, const ExplorationSchema& schema);

}  // namespace attrex
