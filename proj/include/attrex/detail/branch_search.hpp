#pragma once

#include <unordered_set>

namespace attrex {

namespace detail {

template <typename Visitor>
bool branch(const ImplicationList& l, const std::vector<CumulatedClause>& clauses, AttributeSet start,
            AttributeSet ceiling, std::unordered_set<AttributeSet>& seen, Visitor& visit) {
  const Closure c = implication_closure(l, start);
  if (c.bottom || !c.set.subset_of(ceiling)) return true;
  if (!seen.insert(c.set).second) return true;
  for (const auto& clause : clauses) {
    if (holds(c.set, clause)) continue;
    for (auto b : clause.disjuncts) {
      const AttributeSet next = c.set | b;
      if (!next.subset_of(ceiling)) continue;
      if (!branch(l, clauses, next, ceiling, seen, visit)) return false;
    }
    return true;
  }
  return visit(c.set);
}

}  // namespace detail

template <typename Visitor>
void for_each_branch_model(const ImplicationList& l, const std::vector<CumulatedClause>& clauses, AttributeSet start,
                           AttributeSet ceiling, Visitor&& visit) {
  std::unordered_set<AttributeSet> seen;
  detail::branch(l, clauses, start, ceiling, seen, visit);
}

}  // namespace attrex
