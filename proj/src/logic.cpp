#include "attrex/logic.hpp"

#include "attrex/errors.hpp"

namespace attrex {

Closure implication_closure(const ImplicationList& l, AttributeSet a) {
  // Unfired implications; a pass that grows the set can only happen |M| times.
  std::vector<const Implication*> pending;
  pending.reserve(l.size());
  for (const auto& imp : l) pending.push_back(&imp);

  AttributeSet x = a;
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t keep = 0;
    for (const Implication* imp : pending) {
      if (!imp->premise().subset_of(x)) {
        pending[keep++] = imp;
        continue;
      }
      if (imp->bottom()) return Closure::bottom_element();
      if (!imp->conclusion().subset_of(x)) {
        x |= imp->conclusion();
        changed = true;
      }
    }
    pending.resize(keep);
  }
  return Closure::of(x);
}

Closure close(const ImplicationList& l, AttributeSet a, const ExplorationSchema& schema, bool use_background) {
  schema.check(a);
  if (!use_background || schema.background().empty()) return implication_closure(l, a);
  bool any = false;
  AttributeSet meet = schema.universe();
  for_each_branch_model(l, schema.background(), a, schema.universe(), [&](AttributeSet m) {
    any = true;
    meet &= m;
    return true;
  });
  return any ? Closure::of(meet) : Closure::bottom_element();
}

bool entails(const ImplicationList& l, const std::vector<CumulatedClause>& background, const Implication& imp,
             EntailmentMode mode) {
  if (mode == EntailmentMode::implications_only || background.empty()) {
    const Closure c = implication_closure(l, imp.premise());
    if (c.bottom) return true;
    return !imp.bottom() && imp.conclusion().subset_of(c.set);
  }
  // Every model above the premise contains one of the branch models, so it is
  // enough that each of those respects the implication.
  bool holds_everywhere = true;
  for_each_branch_model(l, background, imp.premise(), AttributeSet::full(64), [&](AttributeSet m) {
    if (imp.bottom() || !imp.conclusion().subset_of(m)) holds_everywhere = false;
    return holds_everywhere;
  });
  return holds_everywhere;
}

std::vector<AttributeSet> models(const ImplicationList& l, const std::vector<CumulatedClause>& background,
                                 const ExplorationSchema& schema, std::size_t limit) {
  if (schema.size() > limit)
    throw SizeLimitError("model enumeration over " + std::to_string(schema.size()) +
                         " attributes exceeds the limit of " + std::to_string(limit));
  std::vector<AttributeSet> out;
  for_each_subset(schema.universe(), [&](AttributeSet x) {
    if (respects_all(x, l) && compatible_with_background(x, background)) out.push_back(x);
  });
  return out;
}

ImplicationList remove_redundant(const ImplicationList& l) {
  std::vector<bool> kept(l.size(), true);
  ImplicationList others;
  for (std::size_t i = 0; i < l.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < l.size(); ++j)
      if (j != i && kept[j]) others.push_back(l[j]);
    if (entails(others, {}, l[i], EntailmentMode::implications_only)) kept[i] = false;
  }
  ImplicationList out;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (kept[i]) out.push_back(l[i]);
  return out;
}

}  // namespace attrex
