#include "attrex/base.hpp"

#include <algorithm>
#include <stdexcept>

#include "attrex/errors.hpp"

namespace attrex {

PartialExample::PartialExample(AttributeSet lower, AttributeSet upper) : lower_(lower), upper_(upper) {
  if (!lower.subset_of(upper)) throw ContractError("partial example lower bound is not a subset of its upper bound");
}

namespace {

constexpr std::string_view kActors[] = {"init", "expert", "engine", "normalizer"};
constexpr std::string_view kActions[] = {"add_implication", "add_example", "tighten_example", "drop_example",
                                         "drop_implication"};

}  // namespace

std::string_view to_string(Actor a) { return kActors[static_cast<int>(a)]; }
std::string_view to_string(Action a) { return kActions[static_cast<int>(a)]; }

Actor actor_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (kActors[i] == s) return static_cast<Actor>(i);
  throw std::invalid_argument("unknown actor '" + std::string(s) + "'");
}

Action action_from_string(std::string_view s) {
  for (int i = 0; i < 5; ++i)
    if (kActions[i] == s) return static_cast<Action>(i);
  throw std::invalid_argument("unknown action '" + std::string(s) + "'");
}

void ExplorationBase::record(JournalEntry entry) {
  entry.seq = journal_.size() + 1;
  journal_.push_back(std::move(entry));
}

void ExplorationBase::add_implication(const Implication& imp, Actor actor, std::string note) {
  implications_.push_back(imp);
  record({0, actor, Action::add_implication, implications_.size() - 1, std::nullopt, imp, std::move(note)});
}

void ExplorationBase::add_example(const PartialExample& ex, Actor actor, std::string note) {
  examples_.push_back(ex);
  record({0, actor, Action::add_example, examples_.size() - 1, std::nullopt, ex, std::move(note)});
}

void ExplorationBase::tighten_example(std::size_t index, const PartialExample& tighter, Actor actor, std::string note) {
  const PartialExample before = examples_.at(index);
  if (!tighter.tighter_than(before)) throw ContractError("tighten_example: new interval is not inside the old one");
  examples_[index] = tighter;
  record({0, actor, Action::tighten_example, index, before, tighter, std::move(note)});
}

void ExplorationBase::drop_example(std::size_t index, Actor actor, std::string note) {
  const PartialExample before = examples_.at(index);
  examples_.erase(examples_.begin() + static_cast<std::ptrdiff_t>(index));
  record({0, actor, Action::drop_example, index, before, std::nullopt, std::move(note)});
}

void ExplorationBase::drop_implication(std::size_t index, Actor actor, std::string note) {
  const Implication before = implications_.at(index);
  implications_.erase(implications_.begin() + static_cast<std::ptrdiff_t>(index));
  record({0, actor, Action::drop_implication, index, before, std::nullopt, std::move(note)});
}

namespace {

template <typename T>
const T& payload(const std::optional<JournalItem>& item, std::uint64_t seq, const char* which) {
  if (!item || !std::holds_alternative<T>(*item)) throw JournalError(seq, std::string("missing or mistyped '") + which + "'");
  return std::get<T>(*item);
}

}  // namespace

void ExplorationBase::apply(const JournalEntry& e) {
  if (e.seq != journal_.size() + 1)
    throw JournalError(e.seq, "expected sequence number " + std::to_string(journal_.size() + 1));
  switch (e.action) {
    case Action::add_implication:
      if (e.index != implications_.size()) throw JournalError(e.seq, "implication index out of order");
      implications_.push_back(payload<Implication>(e.after, e.seq, "after"));
      break;
    case Action::add_example:
      if (e.index != examples_.size()) throw JournalError(e.seq, "example index out of order");
      examples_.push_back(payload<PartialExample>(e.after, e.seq, "after"));
      break;
    case Action::tighten_example: {
      if (e.index >= examples_.size()) throw JournalError(e.seq, "example index out of range");
      const auto& before = payload<PartialExample>(e.before, e.seq, "before");
      const auto& after = payload<PartialExample>(e.after, e.seq, "after");
      if (!(examples_[e.index] == before)) throw JournalError(e.seq, "recorded example does not match the base");
      if (!after.tighter_than(before)) throw JournalError(e.seq, "tightened example is not inside the old interval");
      examples_[e.index] = after;
      break;
    }
    case Action::drop_example: {
      if (e.index >= examples_.size()) throw JournalError(e.seq, "example index out of range");
      if (!(examples_[e.index] == payload<PartialExample>(e.before, e.seq, "before")))
        throw JournalError(e.seq, "recorded example does not match the base");
      examples_.erase(examples_.begin() + static_cast<std::ptrdiff_t>(e.index));
      break;
    }
    case Action::drop_implication: {
      if (e.index >= implications_.size()) throw JournalError(e.seq, "implication index out of range");
      if (!(implications_[e.index] == payload<Implication>(e.before, e.seq, "before")))
        throw JournalError(e.seq, "recorded implication does not match the base");
      implications_.erase(implications_.begin() + static_cast<std::ptrdiff_t>(e.index));
      break;
    }
  }
  journal_.push_back(e);
}

ExplorationBase ExplorationBase::replay(const std::vector<JournalEntry>& entries) {
  ExplorationBase base;
  for (const auto& e : entries) base.apply(e);
  return base;
}

std::optional<Rewrite> next_rewrite(const ImplicationList& l, const std::vector<PartialExample>& c,
                                    const ExplorationSchema& schema) {
  for (std::size_t e = 0; e < c.size(); ++e) {
    const auto& ex = c[e];
    for (std::size_t i = 0; i < l.size(); ++i) {
      const auto& imp = l[i];
      if (!imp.premise().subset_of(ex.lower())) continue;
      if (imp.bottom() || !imp.conclusion().subset_of(ex.upper()))
        throw InconsistencyError("example #" + std::to_string(e) + " (" + schema.format(ex.lower()) + ", " +
                                 schema.format(ex.upper()) + ") has no completion respecting implication #" +
                                 std::to_string(i) + " " + schema.format(imp.premise()) + " -> " +
                                 (imp.bottom() ? std::string("bottom") : schema.format(imp.conclusion())));
      if (!imp.conclusion().subset_of(ex.lower()))
        return Rewrite{Rewrite::Rule::absorb_conclusion, e, i, 0, 0, PartialExample(ex.lower() | imp.conclusion(), ex.upper())};
    }
  }
  for (std::size_t e = 0; e < c.size(); ++e) {
    const auto& ex = c[e];
    for (auto v : (ex.upper() - ex.lower()).members()) {
      const AttributeSet with_v = ex.lower() | AttributeSet::singleton(v);
      for (std::size_t i = 0; i < l.size(); ++i) {
        const auto& imp = l[i];
        if (!imp.premise().subset_of(with_v)) continue;
        if (imp.bottom() || !imp.conclusion().subset_of(ex.upper())) {
          AttributeSet upper = ex.upper();
          upper.erase(v);
          return Rewrite{Rewrite::Rule::exclude_attribute, e, i, v, 0, PartialExample(ex.lower(), upper)};
        }
      }
    }
  }
  for (std::size_t e = 0; e < c.size(); ++e)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != e && c[j].tighter_than(c[e])) return Rewrite{Rewrite::Rule::drop_looser, e, 0, 0, j, {}};
  return std::nullopt;
}

void apply_rewrite(ExplorationBase& base, const Rewrite& rw, const ExplorationSchema& schema) {
  switch (rw.rule) {
    case Rewrite::Rule::absorb_conclusion:
      base.tighten_example(rw.example, rw.result, Actor::normalizer,
                           "rule 1: implication #" + std::to_string(rw.implication));
      break;
    case Rewrite::Rule::exclude_attribute:
      base.tighten_example(rw.example, rw.result, Actor::normalizer,
                           "rule 2: " + schema.name(rw.attribute) + " excluded by implication #" +
                               std::to_string(rw.implication));
      break;
    case Rewrite::Rule::drop_looser:
      base.drop_example(rw.example, Actor::normalizer, "rule 3: contains example #" + std::to_string(rw.dominating));
      break;
  }
}

std::size_t normalize_in_place(ExplorationBase& base, const ExplorationSchema& schema) {
  std::size_t applied = 0;
  while (auto rw = next_rewrite(base.implications(), base.examples(), schema)) {
    apply_rewrite(base, *rw, schema);
    ++applied;
  }
  return applied;
}

ExplorationBase normalize(ExplorationBase base, const ExplorationSchema& schema) {
  normalize_in_place(base, schema);
  return base;
}

std::optional<AttributeSet> find_completion(const PartialExample& ex, const ImplicationList& l,
                                            const std::vector<CumulatedClause>& background,
                                            const ExplorationSchema& schema) {
  schema.check(ex.upper());
  std::optional<AttributeSet> witness;
  for_each_branch_model(l, background, ex.lower(), ex.upper(), [&](AttributeSet m) {
    witness = m;
    return false;
  });
  return witness;
}

std::optional<std::size_t> first_incomplete_example(const ImplicationList& l, const std::vector<PartialExample>& c,
                                                    const ExplorationSchema& schema) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!find_completion(c[i], l, schema.background(), schema)) return i;
  return std::nullopt;
}

bool is_consistent(const ExplorationBase& base, const ExplorationSchema& schema) {
  return !first_incomplete_example(base.implications(), base.examples(), schema);
}

std::vector<AttributeSet> completions(const PartialExample& ex, const ImplicationList& l,
                                      const ExplorationSchema& schema, std::size_t limit) {
  std::vector<AttributeSet> out;
  for (auto m : models(l, schema.background(), schema, limit))
    if (ex.contains(m)) out.push_back(m);
  return out;
}

bool better_focused(const ExplorationBase& b1, const ExplorationBase& b2) {
  for (const auto& imp2 : b2.implications()) {
    const bool witnessed = std::any_of(b1.implications().begin(), b1.implications().end(), [&](const Implication& imp1) {
      if (!imp1.premise().subset_of(imp2.premise())) return false;
      if (imp1.bottom()) return true;
      return !imp2.bottom() && imp2.conclusion().subset_of(imp1.conclusion());
    });
    if (!witnessed) return false;
  }
  for (const auto& ex2 : b2.examples()) {
    const bool witnessed = std::any_of(b1.examples().begin(), b1.examples().end(),
                                       [&](const PartialExample& ex1) { return ex1.tighter_than(ex2); });
    if (!witnessed) return false;
  }
  return true;
}

bool more_expressive(const ExplorationBase& b1, const ExplorationBase& b2, const ExplorationSchema& schema,
                     std::size_t limit) {
  const auto mods1 = models(b1.implications(), schema.background(), schema, limit);
  std::vector<std::vector<AttributeSet>> comp1;
  for (const auto& ex : b1.examples()) {
    std::vector<AttributeSet> c;
    for (auto m : mods1)
      if (ex.contains(m)) c.push_back(m);
    if (c.empty()) return true;  // b1 has no realizer at all
    comp1.push_back(std::move(c));
  }
  for (auto m : mods1)
    if (!respects_all(m, b2.implications())) return false;
  for (const auto& ex2 : b2.examples()) {
    const bool forced = std::any_of(comp1.begin(), comp1.end(), [&](const std::vector<AttributeSet>& c) {
      return std::all_of(c.begin(), c.end(), [&](AttributeSet d) { return ex2.contains(d); });
    });
    if (!forced) return false;
  }
  return true;
}

std::size_t streamline(ExplorationBase& base, const ExplorationSchema& schema) {
  std::size_t dropped = 0;
  std::size_t i = 0;
  while (i < base.implications().size()) {
    ImplicationList others = base.implications();
    const Implication candidate = others[i];
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    if (entails(others, {}, candidate, EntailmentMode::implications_only)) {
      base.drop_implication(i, Actor::engine,
                            "redundant: " + schema.format(candidate.premise()) + " follows from the others");
      ++dropped;
    } else {
      ++i;
    }
  }
  return dropped;
}

}  // namespace attrex
