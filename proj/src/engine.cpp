#include "attrex/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "attrex/errors.hpp"

namespace attrex {

AttributeSet plus_query(const std::vector<PartialExample>& c, AttributeSet a, const ExplorationSchema& schema) {
  AttributeSet meet = schema.universe();
  for (const auto& ex : c)
    if (a.subset_of(ex.lower())) meet &= ex.upper();
  return meet;
}

std::optional<AttributeSet> lectic_next_closed(const ImplicationList& l, std::optional<AttributeSet> a,
                                               const ExplorationSchema& schema) {
  if (!a) {
    const Closure c = implication_closure(l, AttributeSet());
    if (!c.bottom) return c.set;
    // The empty set closes to Bottom, so does everything.
    return std::nullopt;
  }
  const std::size_t n = schema.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a->contains(i)) continue;
    const AttributeSet above = AttributeSet(i + 1 >= 64 ? 0 : ~((std::uint64_t{2} << i) - 1));
    const AttributeSet high = *a & above;
    const Closure b = implication_closure(l, high | AttributeSet::singleton(i));
    if (b.bottom) continue;
    if ((b.set & above) == high) return b.set;
  }
  return std::nullopt;
}

std::optional<Question> next_question(const ExplorationBase& base, const ExplorationSchema& schema,
                                      std::optional<AttributeSet> from) {
  const auto& l = base.implications();
  std::optional<AttributeSet> a;
  if (from) {
    const Closure c = implication_closure(l, *from);
    a = (!c.bottom && c.set == *from) ? from : lectic_next_closed(l, from, schema);
  } else {
    a = lectic_next_closed(l, std::nullopt, schema);
  }
  for (; a; a = lectic_next_closed(l, a, schema)) {
    const AttributeSet plus = plus_query(base.examples(), *a, schema);
    if (plus != *a) return Question{Implication(*a, plus), *a};
  }
  return std::nullopt;
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::condition_i: return "condition_i";
    case Rejection::condition_iii: return "condition_iii";
    case Rejection::consistency: return "consistency";
    case Rejection::no_question: return "no_question";
  }
  return "unknown";
}

namespace {

std::uint64_t question_key(const Implication& imp) {
  return imp.premise().bits() * 0x9e3779b97f4a7c15ULL ^ imp.conclusion().bits();
}

std::string describe(const Implication& imp, const ExplorationSchema& schema) {
  return schema.format(imp.premise()) + " -> " + schema.format(imp.conclusion());
}

}  // namespace

Exploration::Exploration(ExplorationSchema schema, const std::vector<PartialExample>& initial_examples)
    : schema_(std::move(schema)) {
  for (std::size_t i = 0; i < initial_examples.size(); ++i) {
    const auto& ex = initial_examples[i];
    schema_.check(ex.upper());
    if (!find_completion(ex, {}, schema_.background(), schema_))
      throw InconsistencyError("initial example #" + std::to_string(i) + " (" + schema_.format(ex.lower()) + ", " +
                               schema_.format(ex.upper()) + ") has no completion compatible with the background");
  }
  for (const auto& ex : initial_examples) base_.add_example(ex, Actor::init);
  normalize_in_place(base_, schema_);
  advance();
}

Exploration::Exploration(ExplorationSchema schema, ExplorationBase base)
    : schema_(std::move(schema)), base_(std::move(base)) {
  if (auto bad = first_incomplete_example(base_.implications(), base_.examples(), schema_))
    throw InconsistencyError("example #" + std::to_string(*bad) + " has no compatible completion");
  normalize_in_place(base_, schema_);
  advance();
}

void Exploration::advance() {
  pending_ = next_question(base_, schema_, cursor_);
  if (!pending_) return;
  const Implication& imp = pending_->implication;
  if (answered_.count(question_key(imp)) != 0)
    throw std::logic_error("question " + describe(imp, schema_) + " was already answered");
  if (last_premise_ && pending_->witness < *last_premise_) ++order_violations_;
  last_premise_ = pending_->witness;
  cursor_ = pending_->witness;
}

SubmitOutcome Exploration::submit(const ExpertAnswer& answer) {
  if (!pending_) return {Rejection::no_question, "the exploration is complete"};
  const Implication question = pending_->implication;
  const std::string note = "answer to " + describe(question, schema_);
  if (answer.is_valid()) {
    ImplicationList extended = base_.implications();
    extended.push_back(question);
    if (auto bad = first_incomplete_example(extended, base_.examples(), schema_))
      return {Rejection::consistency, "counter-example required: validating " + describe(question, schema_) +
                                          " leaves example #" + std::to_string(*bad) + " without a completion"};
    base_.add_implication(question, Actor::expert, note);
  } else {
    const PartialExample& ex = answer.example();
    schema_.check(ex.upper());
    if (!refutes(ex, question))
      return {Rejection::condition_i, "(" + schema_.format(ex.lower()) + ", " + schema_.format(ex.upper()) +
                                          ") does not refute " + describe(question, schema_)};
    if (!find_completion(ex, base_.implications(), schema_.background(), schema_))
      return {Rejection::condition_iii, "(" + schema_.format(ex.lower()) + ", " + schema_.format(ex.upper()) +
                                            ") has no completion respecting the validated implications and background"};
    base_.add_example(ex, Actor::expert, note);
  }
  answered_.insert(question_key(question));
  ++accepted_;
  normalize_in_place(base_, schema_);
  advance();
  return {};
}

ExplorationResult explore(const ExplorationSchema& schema, const AnswerSource& expert,
                          const std::vector<PartialExample>& initial_examples, std::optional<std::size_t> budget,
                          std::size_t max_rejections) {
  Exploration run(schema, initial_examples);
  ExplorationResult result;
  while (!run.complete()) {
    if (budget && run.accepted_answers() >= *budget) {
      result.terminated = Termination::budget_exhausted;
      break;
    }
    std::size_t rejected_here = 0;
    while (true) {
      const SubmitOutcome outcome = run.submit(expert(run.pending()->implication));
      if (outcome.accepted()) break;
      ++result.rejected_answers;
      if (++rejected_here >= max_rejections)
        throw ExpertError("expert answer rejected " + std::to_string(rejected_here) + " times (" +
                          std::string(to_string(outcome.rejection)) + "): " + outcome.diagnostic);
    }
  }
  result.question_count = run.accepted_answers();
  result.order_violations = run.order_violations();
  result.final_base = run.base();
  result.validated = run.base().implications();
  return result;
}

std::vector<AttributeSet> minimal_realizer_report(const ImplicationList& l,
                                                  const std::vector<CumulatedClause>& background,
                                                  const ExplorationSchema& schema, std::size_t limit) {
  const auto mods = models(l, background, schema, limit);
  std::vector<AttributeSet> out;
  for (auto x : mods) {
    bool any_above = false;
    AttributeSet meet = schema.universe();
    for (auto y : mods) {
      if (!x.proper_subset_of(y)) continue;
      any_above = true;
      meet &= y;
    }
    if (!any_above || meet != x) out.push_back(x);
  }
  return out;
}

ReplayReport verify_journal(const std::vector<JournalEntry>& entries, const ExplorationSchema& schema) {
  ReplayReport report;
  ExplorationBase& base = report.base;
  auto diverge = [&](std::uint64_t seq, std::string why) {
    report.clean = false;
    report.divergent_seq = seq;
    report.message = std::move(why);
    return report;
  };
  for (const auto& e : entries) {
    try {
      switch (e.actor) {
        case Actor::init:
          if (e.action != Action::add_example) return diverge(e.seq, "init entries may only add examples");
          break;
        case Actor::normalizer: {
          const auto rw = next_rewrite(base.implications(), base.examples(), schema);
          if (!rw) return diverge(e.seq, "no normalization rule applies here");
          ExplorationBase probe = base;
          apply_rewrite(probe, *rw, schema);
          JournalEntry expected = probe.journal().back();
          if (!(expected == e)) return diverge(e.seq, "normalizer entry differs from the re-derived rewrite");
          break;
        }
        case Actor::expert: {
          if (next_rewrite(base.implications(), base.examples(), schema))
            return diverge(e.seq, "expert entry recorded before normalization finished");
          const auto q = next_question(base, schema);
          if (!q) return diverge(e.seq, "expert entry recorded after the exploration was complete");
          if (e.action == Action::add_implication) {
            if (!e.after || !std::holds_alternative<Implication>(*e.after) ||
                !(std::get<Implication>(*e.after) == q->implication))
              return diverge(e.seq, "validated implication is not the question posed at this point");
          } else if (e.action == Action::add_example) {
            if (!e.after || !std::holds_alternative<PartialExample>(*e.after))
              return diverge(e.seq, "expert example entry has no example");
            const auto& ex = std::get<PartialExample>(*e.after);
            if (!refutes(ex, q->implication)) return diverge(e.seq, "counter-example does not refute the posed question");
            if (!find_completion(ex, base.implications(), schema.background(), schema))
              return diverge(e.seq, "counter-example has no compatible completion");
          } else {
            return diverge(e.seq, "expert entries may only add implications or examples");
          }
          break;
        }
        case Actor::engine: {
          if (e.action != Action::drop_implication || e.index >= base.implications().size())
            return diverge(e.seq, "unexpected engine action");
          ImplicationList others = base.implications();
          const Implication dropped = others[e.index];
          others.erase(others.begin() + static_cast<std::ptrdiff_t>(e.index));
          if (!entails(others, {}, dropped, EntailmentMode::implications_only))
            return diverge(e.seq, "dropped implication is not redundant");
          break;
        }
      }
      base.apply(e);
    } catch (const JournalError& err) {
      return diverge(e.seq, err.what());
    } catch (const InconsistencyError& err) {
      return diverge(e.seq, err.what());
    }
  }
  return report;
}

}  // namespace attrex
